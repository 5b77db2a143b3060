#include "rai/io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "rai/csv.hpp"
#include "rai/errors.hpp"

namespace fs = std::filesystem;

namespace rai {

DatasetFiles DatasetFiles::in_dir(const std::string& dir) {
    DatasetFiles files;
    files.students = (fs::path(dir) / "students.csv").string();
    files.classes = (fs::path(dir) / "classes.csv").string();
    files.registrations = (fs::path(dir) / "registrations.csv").string();
    files.attendance = (fs::path(dir) / "attendance.csv").string();
    files.grades = (fs::path(dir) / "grades.csv").string();
    files.catalog = (fs::path(dir) / "catalog.csv").string();
    return files;
}

namespace {

void require_header(const CsvTable& table, const std::vector<std::string>& expected,
                    const std::string& path) {
    if (table.header != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) want += ",";
            want += expected[i];
        }
        throw IoError(path + ": expected header '" + want + "'");
    }
}

std::string at(const std::string& path, int line) {
    return path + ":" + std::to_string(line) + ": ";
}

}  // namespace

Dataset load_dataset(const DatasetFiles& files, const GradeScale& scale,
                     IngestWarnings* warnings) {
    const CsvTable students = read_csv(files.students);
    const CsvTable classes = read_csv(files.classes);
    const CsvTable registrations = read_csv(files.registrations);
    const CsvTable attendance = read_csv(files.attendance);
    const CsvTable grades = read_csv(files.grades);
    const CsvTable catalog = read_csv(files.catalog);

    require_header(students, {"student_id", "major", "cohort"}, files.students);
    require_header(classes, {"class_id", "course_id", "category", "semester"}, files.classes);
    require_header(registrations, {"student_id", "class_id"}, files.registrations);
    require_header(attendance, {"student_id", "class_id", "attended"}, files.attendance);
    require_header(grades, {"student_id", "course_id", "letter"}, files.grades);
    require_header(catalog, {"category", "description"}, files.catalog);

    // Row-level checks first, so errors carry file and line; the builder
    // re-validates structurally.
    std::set<std::string> category_codes;
    for (std::size_t i = 0; i < catalog.rows.size(); ++i) {
        if (!category_codes.insert(catalog.rows[i][0]).second) {
            throw IntegrityError(at(files.catalog, catalog.line_numbers[i]) +
                                 "duplicate category code '" + catalog.rows[i][0] + "'");
        }
    }
    std::set<std::string> student_ids;
    for (std::size_t i = 0; i < students.rows.size(); ++i) {
        if (students.rows[i][0].empty()) {
            throw IntegrityError(at(files.students, students.line_numbers[i]) +
                                 "empty student_id");
        }
        if (!student_ids.insert(students.rows[i][0]).second) {
            throw IntegrityError(at(files.students, students.line_numbers[i]) +
                                 "duplicate student_id '" + students.rows[i][0] + "'");
        }
    }
    std::set<std::string> class_ids;
    std::set<std::string> course_ids;
    for (std::size_t i = 0; i < classes.rows.size(); ++i) {
        const auto& row = classes.rows[i];
        if (!class_ids.insert(row[0]).second) {
            throw IntegrityError(at(files.classes, classes.line_numbers[i]) +
                                 "duplicate class_id '" + row[0] + "'");
        }
        if (!category_codes.count(row[2])) {
            throw IntegrityError(at(files.classes, classes.line_numbers[i]) +
                                 "unknown category '" + row[2] + "'");
        }
        if (row[3].empty()) {
            throw IntegrityError(at(files.classes, classes.line_numbers[i]) +
                                 "semester is required ('all' for single-semester data)");
        }
        course_ids.insert(row[1]);
    }
    std::set<std::pair<std::string, std::string>> reg_pairs;
    for (std::size_t i = 0; i < registrations.rows.size(); ++i) {
        const auto& row = registrations.rows[i];
        if (!student_ids.count(row[0])) {
            throw IntegrityError(at(files.registrations, registrations.line_numbers[i]) +
                                 "unknown student_id '" + row[0] + "'");
        }
        if (!class_ids.count(row[1])) {
            throw IntegrityError(at(files.registrations, registrations.line_numbers[i]) +
                                 "unknown class_id '" + row[1] + "'");
        }
        if (!reg_pairs.insert({row[0], row[1]}).second) {
            throw IntegrityError(at(files.registrations, registrations.line_numbers[i]) +
                                 "duplicate registration (" + row[0] + ", " + row[1] + ")");
        }
    }
    std::set<std::pair<std::string, std::string>> att_pairs;
    for (std::size_t i = 0; i < attendance.rows.size(); ++i) {
        const auto& row = attendance.rows[i];
        if (!reg_pairs.count({row[0], row[1]})) {
            throw IntegrityError(at(files.attendance, attendance.line_numbers[i]) +
                                 "attendance flag without registration (" + row[0] + ", " +
                                 row[1] + ")");
        }
        if (row[2] != "0" && row[2] != "1") {
            throw IntegrityError(at(files.attendance, attendance.line_numbers[i]) +
                                 "attended must be 0 or 1, got '" + row[2] + "'");
        }
        if (!att_pairs.insert({row[0], row[1]}).second) {
            throw IntegrityError(at(files.attendance, attendance.line_numbers[i]) +
                                 "duplicate attendance flag (" + row[0] + ", " + row[1] + ")");
        }
    }
    if (att_pairs.size() != reg_pairs.size()) {
        for (const auto& pair : reg_pairs) {
            if (!att_pairs.count(pair)) {
                throw IntegrityError(files.attendance + ": registration (" + pair.first + ", " +
                                     pair.second + ") has no attendance flag");
            }
        }
    }
    std::set<std::pair<std::string, std::string>> grade_keys;
    for (std::size_t i = 0; i < grades.rows.size(); ++i) {
        const auto& row = grades.rows[i];
        if (!student_ids.count(row[0])) {
            throw IntegrityError(at(files.grades, grades.line_numbers[i]) +
                                 "unknown student_id '" + row[0] + "'");
        }
        if (!course_ids.count(row[1])) {
            throw IntegrityError(at(files.grades, grades.line_numbers[i]) +
                                 "unknown course_id '" + row[1] + "'");
        }
        if (!grade_keys.insert({row[0], row[1]}).second) {
            throw IntegrityError(at(files.grades, grades.line_numbers[i]) +
                                 "duplicate grade (" + row[0] + ", " + row[1] + ")");
        }
    }

    DatasetBuilder builder;
    builder.set_scale(scale);
    for (const auto& row : catalog.rows) builder.add_category(row[0], row[1]);
    for (const auto& row : students.rows) builder.add_student(row[0], row[1], row[2]);
    for (const auto& row : classes.rows) builder.add_class(row[0], row[1], row[2], row[3]);
    for (const auto& row : registrations.rows) builder.add_registration(row[0], row[1]);
    for (const auto& row : attendance.rows) builder.add_attendance(row[0], row[1], row[2] == "1");
    for (const auto& row : grades.rows) builder.add_grade(row[0], row[1], row[2]);
    return builder.build(warnings);
}

Dataset load_dataset(const std::string& dir, const GradeScale& scale, IngestWarnings* warnings) {
    return load_dataset(DatasetFiles::in_dir(dir), scale, warnings);
}

void write_generated(const std::string& dir, const GenResult& result, const GenConfig& config) {
    fs::create_directories(dir);
    const RawTables& raw = result.raw;

    auto table = [](std::vector<std::string> header) {
        CsvTable t;
        t.header = std::move(header);
        return t;
    };

    CsvTable students = table({"student_id", "major", "cohort"});
    for (const auto& row : raw.students) students.rows.push_back({row[0], row[1], row[2]});
    write_csv((fs::path(dir) / "students.csv").string(), students);

    CsvTable classes = table({"class_id", "course_id", "category", "semester"});
    for (const auto& row : raw.classes) classes.rows.push_back({row[0], row[1], row[2], row[3]});
    write_csv((fs::path(dir) / "classes.csv").string(), classes);

    CsvTable registrations = table({"student_id", "class_id"});
    for (const auto& row : raw.registrations) registrations.rows.push_back({row[0], row[1]});
    write_csv((fs::path(dir) / "registrations.csv").string(), registrations);

    CsvTable attendance = table({"student_id", "class_id", "attended"});
    for (const auto& row : raw.attendance) attendance.rows.push_back({row[0], row[1], row[2]});
    write_csv((fs::path(dir) / "attendance.csv").string(), attendance);

    CsvTable grades = table({"student_id", "course_id", "letter"});
    for (const auto& row : raw.grades) grades.rows.push_back({row[0], row[1], row[2]});
    write_csv((fs::path(dir) / "grades.csv").string(), grades);

    CsvTable catalog = table({"category", "description"});
    for (const auto& row : raw.catalog) catalog.rows.push_back({row[0], row[1]});
    write_csv((fs::path(dir) / "catalog.csv").string(), catalog);

    CsvTable truth_students = table({"student_id", "motivation", "group"});
    for (std::size_t s = 0; s < result.truth.student_ids.size(); ++s) {
        const int g = result.truth.group[s];
        truth_students.rows.push_back(
            {result.truth.student_ids[s], format_double(result.truth.motivation[s]),
             g >= 0 ? config.groups[g].name : ""});
    }
    write_csv((fs::path(dir) / "ground_truth_students.csv").string(), truth_students);

    CsvTable truth_courses = table({"course_id", "mandatory"});
    for (std::size_t c = 0; c < result.truth.course_ids.size(); ++c) {
        truth_courses.rows.push_back(
            {result.truth.course_ids[c], result.truth.mandatory[c] ? "1" : "0"});
    }
    write_csv((fs::path(dir) / "ground_truth_courses.csv").string(), truth_courses);

    std::ofstream cfg((fs::path(dir) / "gen_config.txt").string(), std::ios::binary);
    if (!cfg) throw IoError("cannot write gen_config.txt");
    cfg << serialize_config(config);
}

void print_report(const RunReport& report) {
    std::cerr << "[" << report.command << "] done in " << report.wall_seconds << " s\n";
    if (!report.config_echo.empty()) std::cerr << "  config: " << report.config_echo << "\n";
    for (const auto& w : report.warnings) std::cerr << "  warning: " << w << "\n";
    for (const auto& o : report.outputs) std::cerr << "  wrote: " << o << "\n";
}

}  // namespace rai
