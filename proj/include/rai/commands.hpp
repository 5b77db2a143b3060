#pragma once

#include <optional>
#include <string>

#include "rai/grid_search.hpp"

namespace rai {

// Process exit codes, one per user-distinguishable failure class.
enum ExitCode {
    kExitOk = 0,
    kExitFailure = 1,  // usage, config and other errors
    kExitIoError = 2,
    kExitIntegrityError = 3,
    kExitInsufficientSamples = 4,
    kExitNoValidClustering = 5,
};

enum class OutputFormat { Csv, Json };

struct CommonOptions {
    std::string data_dir;
    std::string out_dir;
    OutputFormat format = OutputFormat::Csv;
    std::string grade_scale_path;  // empty = built-in default scale
};

struct GenOptions {
    std::string preset;       // G1 / G2 / G3, or empty when config_path is set
    std::string config_path;
    std::optional<std::uint64_t> seed;  // overrides the config's seed
};

struct ComputeOptions {
    std::string measure = "both";  // ar | rai | both
    std::string per = "student";   // student | course | category
};

struct CorrelateOptions {
    std::string by = "overall";  // overall | category
};

struct HistOptions {
    std::string high_cut = "B+";
    std::string low_cut = "C";
    int bins = 20;
};

struct ClusterOptions {
    std::string measure = "rai";  // ar | rai
    std::string grid;             // "LO:HI,LO:HI:STEP,LO:HI" or empty for defaults
    bool standardize = true;
    double noise_cap = 0.25;
    int threads = 0;
    bool seedless = true;  // accepted for interface parity; the pipeline uses no RNG
};

int cmd_gen(const CommonOptions& common, const GenOptions& options);
int cmd_compute(const CommonOptions& common, const ComputeOptions& options);
int cmd_correlate(const CommonOptions& common, const CorrelateOptions& options);
int cmd_hist(const CommonOptions& common, const HistOptions& options);
int cmd_cluster(const CommonOptions& common, const ClusterOptions& options);

GridRanges parse_grid_spec(const std::string& spec);

}  // namespace rai
