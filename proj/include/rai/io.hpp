#pragma once

#include <string>
#include <vector>

#include "rai/datagen.hpp"
#include "rai/model.hpp"

namespace rai {

// The six-file normalized CSV layout joined by opaque ids.
struct DatasetFiles {
    std::string students;
    std::string classes;
    std::string registrations;
    std::string attendance;
    std::string grades;
    std::string catalog;

    static DatasetFiles in_dir(const std::string& dir);
};

// Parses and validates the six files. Dangling foreign keys, duplicate
// primary keys and attendance outside the registration domain raise
// IntegrityError naming the file and row; degenerate students/classes are
// dropped with warnings.
Dataset load_dataset(const DatasetFiles& files, const GradeScale& scale,
                     IngestWarnings* warnings = nullptr);
Dataset load_dataset(const std::string& dir, const GradeScale& scale,
                     IngestWarnings* warnings = nullptr);

// Writes generator output as the interchange CSVs plus the ground-truth
// tables and the effective config echo.
void write_generated(const std::string& dir, const GenResult& result, const GenConfig& config);

struct RunReport {
    std::string command;
    std::string config_echo;
    std::vector<std::string> warnings;
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;
};

// Human-readable report on stderr; wall time stays out of the data outputs
// so reruns are byte-identical.
void print_report(const RunReport& report);

}  // namespace rai
