#include "rai/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rai/errors.hpp"

namespace rai {

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    CsvTable table;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool field_was_quoted = false;
    int lineno = 1;
    int record_line = 1;
    bool record_open = false;

    auto finish_field = [&] {
        fields.push_back(cur);
        cur.clear();
        field_was_quoted = false;
    };
    auto finish_record = [&] {
        finish_field();
        if (record_line == 1) {
            table.header = std::move(fields);
        } else {
            if (fields.size() != table.header.size()) {
                throw IoError(path + ":" + std::to_string(record_line) + ": expected " +
                              std::to_string(table.header.size()) + " fields, got " +
                              std::to_string(fields.size()));
            }
            table.rows.push_back(std::move(fields));
            table.line_numbers.push_back(record_line);
        }
        fields.clear();
        record_open = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++lineno;
                cur.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!cur.empty() || field_was_quoted) {
                    throw IoError(path + ":" + std::to_string(lineno) + ": stray quote in field");
                }
                quoted = true;
                field_was_quoted = true;
                record_open = true;
                break;
            case ',':
                finish_field();
                record_open = true;
                break;
            case '\r':
                break;
            case '\n':
                if (record_open) finish_record();
                ++lineno;
                record_line = lineno;
                break;
            default:
                cur.push_back(c);
                record_open = true;
                break;
        }
    }
    if (quoted) throw IoError(path + ":" + std::to_string(record_line) + ": unterminated quote");
    if (record_open) finish_record();

    if (table.header.empty()) throw IoError(path + ": missing header row");
    return table;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    auto emit = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(fields[i]);
        }
        out << '\n';
    };
    emit(table.header);
    for (const auto& row : table.rows) emit(row);
    if (!out) throw IoError("write failed: " + path);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double round_half_away(double v, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::copysign(std::floor(std::abs(v) * scale + 0.5) / scale, v);
}

}  // namespace rai
