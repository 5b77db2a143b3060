#pragma once

#include <map>
#include <string>
#include <vector>

#include "rai/dbscan.hpp"
#include "rai/measures.hpp"
#include "rai/model.hpp"

namespace rai {

// Per-student decile flags within the student's major. The cutoffs use the
// nearest-rank order statistic from either end: with N graded students in a
// major and k = ceil(N/10), the top flag marks GPA >= the k-th largest value
// and the last flag marks GPA <= the k-th smallest; ties share the flag.
// Students without a GPA are never flagged.
struct DecileFlags {
    std::vector<bool> top;
    std::vector<bool> last;
    std::map<std::string, bool> low_confidence;  // majors with < 10 graded students
};

DecileFlags gpa_decile_flags(const Dataset& ds);

struct ClusterProfile {
    int cluster = 0;
    int size = 0;
    std::map<std::string, int> major_count;
    std::map<std::string, double> major_fraction;  // of the major's whole population
    std::map<std::string, double> major_mean_rai;
    std::map<std::string, double> major_top_decile_ratio;
    std::map<std::string, double> major_last_decile_ratio;
    std::vector<std::string> top5_majors;  // by count, ties by code
};

// Profiles every cluster (noise excluded): sizes, major composition, the
// share of each major's population captured, mean student RAI, and the
// within-major top/last decile ratios.
std::vector<ClusterProfile> profile_clusters(const ClusterLabels& labels, const Dataset& ds,
                                             const MeasureTable& measures);

}  // namespace rai
