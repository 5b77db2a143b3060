#include "rai/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rai/errors.hpp"
#include "rai/rng.hpp"

namespace rai {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::string zero_pad(int value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*d", std::min(width, 9), value);
    return buf;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void GenConfig::validate() const {
    if (student_count < 1) throw ConfigError("student_count must be >= 1");
    if (category_count < 1) throw ConfigError("category_count must be >= 1");
    if (courses_per_category < 1) throw ConfigError("courses_per_category must be >= 1");
    if (registrations_per_student < 1) throw ConfigError("registrations_per_student must be >= 1");
    const int total_courses = category_count * courses_per_category;
    if (registrations_per_student > total_courses) {
        throw ConfigError("more registrations per student than courses exist (" +
                          std::to_string(registrations_per_student) + " > " +
                          std::to_string(total_courses) + ")");
    }
    for (double p : {mandatory_fraction, policy_floor, pf_fraction}) {
        if (p < 0.0 || p > 1.0) throw ConfigError("probabilities must lie in [0, 1]");
    }
    if (motivation_sd < 0.0 || grade_noise < 0.0) {
        throw ConfigError("noise levels must be nonnegative");
    }
    if (majors.empty()) throw ConfigError("at least one major is required");
    int major_sum = 0;
    for (const auto& m : majors) {
        if (m.size < 1) throw ConfigError("major sizes must be >= 1");
        major_sum += m.size;
    }
    if (major_sum != student_count) {
        throw ConfigError("major sizes must sum to student_count");
    }
    if (!groups.empty()) {
        int group_sum = 0;
        for (const auto& g : groups) {
            if (g.size < 1) throw ConfigError("group sizes must be >= 1");
            if (static_cast<int>(g.category_affinity.size()) != category_count) {
                throw ConfigError("group affinity vector must have one entry per category");
            }
            for (double a : g.category_affinity) {
                if (a < 0.0 || a > 1.0) throw ConfigError("affinities must lie in [0, 1]");
            }
            group_sum += g.size;
        }
        if (group_sum != student_count) {
            throw ConfigError("planted group sizes must partition the student population");
        }
    }
    if (unregistered_students < 0 || unregistered_students >= student_count) {
        throw ConfigError("unregistered_students must lie in [0, student_count)");
    }
}

GenResult generate(const GenConfig& config) {
    config.validate();
    const GradeScale scale = GradeScale::default_scale();

    GenResult result;
    RawTables& raw = result.raw;
    GroundTruth& truth = result.truth;

    // Catalog.
    const int cat_width = std::max(2, static_cast<int>(std::to_string(config.category_count).size()));
    std::vector<std::string> cat_codes(config.category_count);
    for (int k = 0; k < config.category_count; ++k) {
        cat_codes[k] = "CAT" + zero_pad(k + 1, cat_width);
        raw.catalog.push_back({cat_codes[k], "Synthetic category " + std::to_string(k + 1)});
    }

    // Courses: one class unit each, single semester.
    const int total_courses = config.category_count * config.courses_per_category;
    std::vector<std::string> course_ids(total_courses);
    std::vector<int> course_category(total_courses);
    truth.mandatory.resize(total_courses);
    for (int k = 0; k < config.category_count; ++k) {
        for (int j = 0; j < config.courses_per_category; ++j) {
            const int idx = k * config.courses_per_category + j;
            course_ids[idx] = cat_codes[k] + "-C" + zero_pad(j + 1, 2);
            course_category[idx] = k;
            Rng course_rng = make_stream(config.seed, "course:" + course_ids[idx]);
            truth.mandatory[idx] = course_rng.next_double() < config.mandatory_fraction;
            raw.classes.push_back(
                {course_ids[idx] + "-U1", course_ids[idx], cat_codes[k], "all"});
        }
    }
    truth.course_ids = course_ids;

    // Students with majors (block assignment) and planted groups (partition).
    std::vector<std::string> student_ids(config.student_count);
    std::vector<int> student_group(config.student_count, -1);
    truth.motivation.resize(config.student_count);
    {
        int cursor = 0;
        std::vector<std::string> major_of(config.student_count);
        for (const auto& m : config.majors) {
            for (int i = 0; i < m.size; ++i) major_of[cursor++] = m.code;
        }
        cursor = 0;
        for (std::size_t g = 0; g < config.groups.size(); ++g) {
            for (int i = 0; i < config.groups[g].size; ++i) student_group[cursor++] = static_cast<int>(g);
        }
        for (int s = 0; s < config.student_count; ++s) {
            student_ids[s] = "S" + zero_pad(s + 1, 6);
            const std::string cohort = "C" + std::to_string(14 + s % 6);
            raw.students.push_back({student_ids[s], major_of[s], cohort});
            Rng rng = make_stream(config.seed, "student:" + student_ids[s]);
            truth.motivation[s] = clamp01(config.motivation_mean +
                                          config.motivation_sd * rng.next_normal());
        }
    }
    truth.student_ids = student_ids;
    truth.group = student_group;

    // Registrations, attendance and grades, one substream per student.
    const int registered_count = config.student_count - config.unregistered_students;
    for (int s = 0; s < registered_count; ++s) {
        Rng rng = make_stream(config.seed, "enroll:" + student_ids[s]);
        const int g = student_group[s];

        // Weighted sampling without replacement (largest u^(1/w) keys win);
        // the tilt nudges registrations toward the group's affine categories.
        std::vector<std::pair<double, int>> keys(total_courses);
        for (int c = 0; c < total_courses; ++c) {
            double w = 1.0;
            if (g >= 0) {
                w += (config.registration_tilt - 1.0) *
                     config.groups[g].category_affinity[course_category[c]];
            }
            const double u = rng.next_double();
            keys[c] = {std::pow(u, 1.0 / w), c};
        }
        std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        std::vector<int> chosen(config.registrations_per_student);
        for (int i = 0; i < config.registrations_per_student; ++i) chosen[i] = keys[i].second;
        std::sort(chosen.begin(), chosen.end());

        const double motivation = truth.motivation[s];
        for (int c : chosen) {
            const std::string class_id = course_ids[c] + "-U1";
            raw.registrations.push_back({student_ids[s], class_id});

            const double floor_term = truth.mandatory[c] ? config.policy_floor : 0.0;
            double p = floor_term + motivation * (1.0 - floor_term);
            if (g >= 0) {
                p += config.affinity_weight *
                     (config.groups[g].category_affinity[course_category[c]] - 0.5);
            }
            const bool attended = rng.next_double() < clamp01(p);
            raw.attendance.push_back({student_ids[s], class_id, attended ? "1" : "0"});
        }
        for (int c : chosen) {
            const double score = clamp01(motivation + config.grade_noise * rng.next_normal());
            std::string letter;
            if (config.pf_fraction > 0.0 && rng.next_double() < config.pf_fraction) {
                letter = "P";
            } else {
                letter = scale.nearest_letter(score * scale.max_points());
            }
            raw.grades.push_back({student_ids[s], course_ids[c], letter});
        }
    }

    // Validated dataset view of the raw tables.
    DatasetBuilder builder;
    builder.set_scale(scale);
    for (const auto& row : raw.catalog) builder.add_category(row[0], row[1]);
    for (const auto& row : raw.students) builder.add_student(row[0], row[1], row[2]);
    for (const auto& row : raw.classes) builder.add_class(row[0], row[1], row[2], row[3]);
    for (const auto& row : raw.registrations) builder.add_registration(row[0], row[1]);
    for (const auto& row : raw.attendance) builder.add_attendance(row[0], row[1], row[2] == "1");
    for (const auto& row : raw.grades) builder.add_grade(row[0], row[1], row[2]);
    result.dataset = builder.build(&result.warnings);
    return result;
}

std::map<std::string, GenConfig> preset_configs() {
    std::map<std::string, GenConfig> presets;

    // G1: correlation demo. Half the courses carry a mandatory-attendance
    // policy, which compresses the plain rate's motivation signal.
    GenConfig g1;
    g1.student_count = 600;
    g1.majors = {{"CSE", 120}, {"FIN", 110}, {"MAT", 100}, {"PSY", 95}, {"MED", 90}, {"TRN", 85}};
    g1.category_count = 12;
    g1.courses_per_category = 6;
    g1.registrations_per_student = 10;
    g1.mandatory_fraction = 0.5;
    g1.motivation_mean = 0.6;
    g1.motivation_sd = 0.25;
    g1.policy_floor = 0.9;
    g1.grade_noise = 0.15;
    g1.seed = 1;
    presets.emplace("G1", g1);

    // G2: planted-cluster demo. Four groups with disjoint category
    // affinities; attendance is dominated by the affinity so the planted
    // structure shows up in the per-category contribution vectors.
    GenConfig g2;
    g2.student_count = 400;
    g2.majors = {{"CSE", 100}, {"FIN", 100}, {"PSY", 100}, {"TRN", 100}};
    g2.category_count = 16;
    g2.courses_per_category = 6;
    g2.registrations_per_student = 32;
    g2.mandatory_fraction = 0.0;
    g2.motivation_mean = 0.5;
    g2.motivation_sd = 0.05;
    g2.policy_floor = 0.9;
    g2.grade_noise = 0.15;
    g2.affinity_weight = 0.9;
    g2.registration_tilt = 2.0;
    for (int g = 0; g < 4; ++g) {
        PlantedGroup group;
        group.name = std::string("G") + static_cast<char>('A' + g);
        group.size = 100;
        group.category_affinity.assign(16, 0.05);
        for (int k = 4 * g; k < 4 * g + 4; ++k) group.category_affinity[k] = 0.95;
        g2.groups.push_back(std::move(group));
    }
    g2.seed = 1;
    presets.emplace("G2", g2);

    // G3: degenerate shapes. Single registrations, an unregistered student,
    // empty classes, P grades.
    GenConfig g3;
    g3.student_count = 8;
    g3.majors = {{"M1", 5}, {"M2", 3}};
    g3.category_count = 2;
    g3.courses_per_category = 12;
    g3.registrations_per_student = 1;
    g3.mandatory_fraction = 0.3;
    g3.motivation_mean = 0.5;
    g3.motivation_sd = 0.3;
    g3.policy_floor = 0.9;
    g3.grade_noise = 0.2;
    g3.pf_fraction = 0.25;
    g3.unregistered_students = 1;
    g3.seed = 1;
    presets.emplace("G3", g3);

    return presets;
}

std::string serialize_config(const GenConfig& config) {
    std::ostringstream out;
    out << "student_count = " << config.student_count << "\n";
    out << "majors = ";
    for (std::size_t i = 0; i < config.majors.size(); ++i) {
        if (i) out << ",";
        out << config.majors[i].code << ":" << config.majors[i].size;
    }
    out << "\n";
    out << "category_count = " << config.category_count << "\n";
    out << "courses_per_category = " << config.courses_per_category << "\n";
    out << "registrations_per_student = " << config.registrations_per_student << "\n";
    auto num = [&out](const char* key, double v) {
        std::ostringstream tmp;
        tmp.precision(17);
        tmp << v;
        out << key << " = " << tmp.str() << "\n";
    };
    num("mandatory_fraction", config.mandatory_fraction);
    num("motivation_mean", config.motivation_mean);
    num("motivation_sd", config.motivation_sd);
    num("policy_floor", config.policy_floor);
    num("grade_noise", config.grade_noise);
    num("affinity_weight", config.affinity_weight);
    num("registration_tilt", config.registration_tilt);
    out << "unregistered_students = " << config.unregistered_students << "\n";
    num("pf_fraction", config.pf_fraction);
    out << "seed = " << config.seed << "\n";
    for (const auto& g : config.groups) {
        out << "group = " << g.name << ":" << g.size << ":";
        for (std::size_t i = 0; i < g.category_affinity.size(); ++i) {
            if (i) out << ",";
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << g.category_affinity[i];
            out << tmp.str();
        }
        out << "\n";
    }
    return out.str();
}

GenConfig parse_config(const std::string& text) {
    GenConfig config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "student_count") config.student_count = std::stoi(value);
            else if (key == "majors") {
                config.majors.clear();
                for (const auto& item : split(value, ',')) {
                    auto parts = split(trim(item), ':');
                    if (parts.size() != 2) throw ConfigError("bad major spec: " + item);
                    config.majors.push_back({trim(parts[0]), std::stoi(parts[1])});
                }
            } else if (key == "category_count") config.category_count = std::stoi(value);
            else if (key == "courses_per_category") config.courses_per_category = std::stoi(value);
            else if (key == "registrations_per_student")
                config.registrations_per_student = std::stoi(value);
            else if (key == "mandatory_fraction") config.mandatory_fraction = std::stod(value);
            else if (key == "motivation_mean") config.motivation_mean = std::stod(value);
            else if (key == "motivation_sd") config.motivation_sd = std::stod(value);
            else if (key == "policy_floor") config.policy_floor = std::stod(value);
            else if (key == "grade_noise") config.grade_noise = std::stod(value);
            else if (key == "affinity_weight") config.affinity_weight = std::stod(value);
            else if (key == "registration_tilt") config.registration_tilt = std::stod(value);
            else if (key == "unregistered_students")
                config.unregistered_students = std::stoi(value);
            else if (key == "pf_fraction") config.pf_fraction = std::stod(value);
            else if (key == "seed") config.seed = std::stoull(value);
            else if (key == "group") {
                auto parts = split(value, ':');
                if (parts.size() != 3) throw ConfigError("bad group spec: " + value);
                PlantedGroup group;
                group.name = trim(parts[0]);
                group.size = std::stoi(parts[1]);
                for (const auto& a : split(parts[2], ',')) {
                    group.category_affinity.push_back(std::stod(trim(a)));
                }
                config.groups.push_back(std::move(group));
            } else {
                throw ConfigError("unknown config key: " + key);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config line " + std::to_string(lineno) + ": bad value '" + value +
                              "'");
        }
    }
    return config;
}

GenConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace rai
