#pragma once

#include <vector>

#include "rai/matrix.hpp"

namespace rai {

inline constexpr int kNoise = -1;

using ClusterLabels = std::vector<int>;

// Density-based clustering with Euclidean distance. A point is core iff it
// has >= min_points neighbors within eps, counting itself. Clusters are the
// density-connected components of the core points; non-core points join the
// cluster of the lowest-indexed core point within eps, or become noise.
// Cluster ids are contiguous, numbered by first appearance in point order.
ClusterLabels dbscan(const Matrix& points, double eps, int min_points);

// Same, also reporting which points were core.
ClusterLabels dbscan(const Matrix& points, double eps, int min_points,
                     std::vector<bool>& core_out);

// Variant reusing precomputed eps-neighbor lists (ascending index order,
// self included). Lets a parameter sweep share the neighbor computation.
ClusterLabels dbscan_with_neighbors(const std::vector<std::vector<int>>& neighbors, int min_points,
                                    std::vector<bool>* core_out = nullptr);

std::vector<std::vector<int>> eps_neighbors(const Matrix& points, double eps);

int cluster_count(const ClusterLabels& labels);
int noise_count(const ClusterLabels& labels);

// Renumber cluster ids to 0..k-1 in order of first appearance.
void relabel_first_appearance(ClusterLabels& labels);

}  // namespace rai
