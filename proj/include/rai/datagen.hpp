#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rai/model.hpp"

namespace rai {

struct MajorSpec {
    std::string code;
    int size = 0;
};

struct PlantedGroup {
    std::string name;
    int size = 0;
    std::vector<double> category_affinity;  // one weight in [0,1] per category
};

// Synthetic cohort: a latent motivation drives both attendance and grades;
// per-course mandatory policies inflate attendance independently of
// motivation, which is exactly the confounder the relative index discounts.
struct GenConfig {
    int student_count = 0;
    std::vector<MajorSpec> majors;  // sizes must sum to student_count
    int category_count = 0;
    int courses_per_category = 0;
    int registrations_per_student = 0;
    double mandatory_fraction = 0.0;
    double motivation_mean = 0.5;
    double motivation_sd = 0.2;
    double policy_floor = 0.9;  // attendance probability granted by a mandatory policy
    double grade_noise = 0.1;   // sd of the grade perturbation, on the motivation scale
    double affinity_weight = 0.9;    // attendance coupling to the planted affinity
    double registration_tilt = 2.0;  // registration weight multiplier toward affine categories
    std::vector<PlantedGroup> groups;  // optional; sizes must partition student_count
    int unregistered_students = 0;     // trailing students emitted with no registrations
    double pf_fraction = 0.0;          // share of grades emitted as the non-letter "P"
    std::uint64_t seed = 1;

    void validate() const;  // throws ConfigError
};

struct GroundTruth {
    std::vector<double> motivation;   // aligned with raw student order
    std::vector<int> group;           // -1 when no planted groups
    std::vector<std::string> student_ids;
    std::vector<bool> mandatory;      // aligned with raw course order
    std::vector<std::string> course_ids;
};

// Raw generated tables, in the exact shape of the CSV interchange files
// (degenerate entities included; ingestion drops them with warnings).
struct RawTables {
    std::vector<std::array<std::string, 3>> students;       // id, major, cohort
    std::vector<std::array<std::string, 4>> classes;        // class, course, category, semester
    std::vector<std::array<std::string, 2>> registrations;  // student, class
    std::vector<std::array<std::string, 3>> attendance;     // student, class, 0/1
    std::vector<std::array<std::string, 3>> grades;         // student, course, letter
    std::vector<std::array<std::string, 2>> catalog;        // category, description
};

struct GenResult {
    RawTables raw;
    Dataset dataset;  // validated view of the raw tables
    GroundTruth truth;
    IngestWarnings warnings;
};

GenResult generate(const GenConfig& config);

// Fixed, versioned demo configurations: G1 correlation demo, G2 planted
// clusters, G3 degenerate edge cases.
std::map<std::string, GenConfig> preset_configs();

// Human-readable key = value serialization (one `group = ...` line per group).
std::string serialize_config(const GenConfig& config);
GenConfig parse_config(const std::string& text);
GenConfig load_config(const std::string& path);

}  // namespace rai
