#pragma once

#include <vector>

#include "rai/dbscan.hpp"
#include "rai/matrix.hpp"

namespace rai {

// Parameter grid for the PCA + DBSCAN sweep. Defaults reproduce the tuned
// ranges: components 5-15, eps 0.1-1.0 in steps of 0.1, min_points 5-20.
struct GridRanges {
    std::vector<int> components;
    std::vector<double> eps;
    std::vector<int> min_points;
    double noise_cap = 0.25;  // cells with a higher noise fraction are rejected
    bool standardize = true;
    int threads = 0;  // 0 = hardware concurrency

    static GridRanges defaults();
};

struct GridChoice {
    int n_components = 0;
    double eps = 0.0;
    int min_points = 0;
    double silhouette = 0.0;
    int cluster_count = 0;
    int noise_count = 0;
};

struct GridSearchResult {
    GridChoice choice;
    ClusterLabels labels;
};

// Evaluates every (components, eps, min_points) triple, rejecting cells with
// fewer than 2 clusters or too much noise, and returns the cell with the
// highest silhouette. Ties break toward fewer components, then smaller eps,
// then smaller min_points; the parallel evaluation reduces in canonical cell
// order so the result matches sequential evaluation exactly.
GridSearchResult grid_search(const Matrix& features, const GridRanges& ranges = GridRanges::defaults());

}  // namespace rai
