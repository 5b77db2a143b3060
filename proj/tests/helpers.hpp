#pragma once

// Shared fixtures for unit and acceptance tests: tiny hand-built datasets,
// a random roster/attendance instance generator for property checks, and a
// scratch-directory guard.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "rai/model.hpp"
#include "rai/rng.hpp"

namespace testutil {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& prefix = "rai_test") {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               (prefix + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// `spec` describes classes as lists of (student ordinal, attended) pairs;
// student ids are s1..sN, class ids c1..cM, all in category CAT of course
// crs<M>. A dedicated course per class keeps course-level tests simple.
struct ClassSpec {
    std::vector<std::pair<int, bool>> members;  // 1-based student ordinal
    std::string category = "CAT";
    std::string course;  // defaults to a course per class
    std::string semester = "all";
};

inline rai::Dataset toy_dataset(int n_students, std::vector<ClassSpec> classes,
                                const std::vector<std::string>& categories = {"CAT"}) {
    rai::DatasetBuilder builder;
    for (const auto& cat : categories) builder.add_category(cat, "category " + cat);
    for (int s = 1; s <= n_students; ++s) {
        builder.add_student("s" + std::to_string(s), "MAJ", "C14");
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const std::string class_id = "c" + std::to_string(c + 1);
        const std::string course =
            classes[c].course.empty() ? "crs" + std::to_string(c + 1) : classes[c].course;
        builder.add_class(class_id, course, classes[c].category, classes[c].semester);
        for (const auto& [ordinal, attended] : classes[c].members) {
            const std::string sid = "s" + std::to_string(ordinal);
            builder.add_registration(sid, class_id);
            builder.add_attendance(sid, class_id, attended);
        }
    }
    return builder.build();
}

// Random instance for the property suites: every student keeps >= 1
// registration and every class >= 1 registrant (degenerates are an
// ingestion concern, not a math concern).
inline rai::Dataset random_instance(rai::Rng& rng, int max_students = 12, int max_classes = 15) {
    const int n_students = 1 + static_cast<int>(rng.next_below(max_students));
    const int n_classes = 1 + static_cast<int>(rng.next_below(max_classes));
    rai::DatasetBuilder builder;
    builder.add_category("CAT", "category");
    for (int s = 1; s <= n_students; ++s) {
        builder.add_student("s" + std::to_string(s), "MAJ", "C14");
    }
    for (int c = 1; c <= n_classes; ++c) {
        builder.add_class("c" + std::to_string(c), "crs" + std::to_string(c), "CAT", "all");
    }
    std::vector<std::vector<bool>> reg(n_students, std::vector<bool>(n_classes, false));
    for (int s = 0; s < n_students; ++s) {
        reg[s][rng.next_below(n_classes)] = true;  // at least one class each
    }
    for (int c = 0; c < n_classes; ++c) {
        bool any = false;
        for (int s = 0; s < n_students; ++s) any = any || reg[s][c];
        if (!any) reg[rng.next_below(n_students)][c] = true;  // at least one student each
    }
    const double density = 0.1 + 0.8 * rng.next_double();
    for (int s = 0; s < n_students; ++s) {
        for (int c = 0; c < n_classes; ++c) {
            if (!reg[s][c] && rng.next_double() < density) reg[s][c] = true;
        }
    }
    const double attend_bias = rng.next_double();
    for (int s = 0; s < n_students; ++s) {
        for (int c = 0; c < n_classes; ++c) {
            if (!reg[s][c]) continue;
            const std::string sid = "s" + std::to_string(s + 1);
            const std::string cid = "c" + std::to_string(c + 1);
            builder.add_registration(sid, cid);
            builder.add_attendance(sid, cid, rng.next_double() < attend_bias);
        }
    }
    return builder.build();
}

}  // namespace testutil
