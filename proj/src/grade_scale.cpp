#include "rai/grade_scale.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rai/errors.hpp"

namespace rai {

GradeScale::GradeScale(std::vector<std::pair<std::string, double>> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty()) throw ConfigError("grade scale must not be empty");
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [letter, pts] : entries_) {
        if (pts < 0.0) throw ConfigError("grade points must be nonnegative: " + letter);
    }
    max_points_ = entries_.front().second;
}

GradeScale GradeScale::default_scale() {
    return GradeScale({{"A", 4.0},
                       {"A-", 3.7},
                       {"B+", 3.3},
                       {"B", 3.0},
                       {"B-", 2.7},
                       {"C+", 2.3},
                       {"C", 2.0},
                       {"C-", 1.7},
                       {"D+", 1.3},
                       {"D", 1.0},
                       {"F", 0.0}});
}

GradeScale GradeScale::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open grade scale file: " + path);
    std::vector<std::pair<std::string, double>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ConfigError("grade scale line " + std::to_string(lineno) + ": expected LETTER=points");
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string letter = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (letter.empty() || value.empty()) {
            throw ConfigError("grade scale line " + std::to_string(lineno) + ": empty letter or value");
        }
        try {
            entries.emplace_back(letter, std::stod(value));
        } catch (const std::exception&) {
            throw ConfigError("grade scale line " + std::to_string(lineno) + ": bad number '" + value + "'");
        }
    }
    return GradeScale(std::move(entries));
}

std::optional<double> GradeScale::points(const std::string& letter) const {
    for (const auto& [l, p] : entries_) {
        if (l == letter) return p;
    }
    return std::nullopt;
}

const std::string& GradeScale::nearest_letter(double raw_points) const {
    // entries_ sorted by points descending; ties toward higher points.
    std::size_t best = 0;
    double best_dist = std::abs(entries_[0].second - raw_points);
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        double d = std::abs(entries_[i].second - raw_points);
        if (d < best_dist) {
            best = i;
            best_dist = d;
        }
    }
    return entries_[best].first;
}

}  // namespace rai
