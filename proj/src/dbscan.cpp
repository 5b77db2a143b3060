#include "rai/dbscan.hpp"

#include <algorithm>
#include <deque>

#include "rai/errors.hpp"

namespace rai {

std::vector<std::vector<int>> eps_neighbors(const Matrix& points, double eps) {
    const int n = static_cast<int>(points.rows);
    const std::size_t d = points.cols;
    const double eps2 = eps * eps;
    std::vector<std::vector<int>> neighbors(n);
    for (int i = 0; i < n; ++i) {
        const double* pi = points.row(i);
        for (int j = 0; j < n; ++j) {
            const double* pj = points.row(j);
            double dist2 = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = pi[k] - pj[k];
                dist2 += diff * diff;
            }
            if (dist2 <= eps2) neighbors[i].push_back(j);
        }
    }
    return neighbors;
}

ClusterLabels dbscan_with_neighbors(const std::vector<std::vector<int>>& neighbors, int min_points,
                                    std::vector<bool>* core_out) {
    const int n = static_cast<int>(neighbors.size());
    if (n == 0) throw EmptyInput("dbscan: no points");
    if (min_points < 1) throw RangeError("dbscan: min_points must be >= 1");

    std::vector<bool> core(n, false);
    for (int i = 0; i < n; ++i) core[i] = static_cast<int>(neighbors[i].size()) >= min_points;

    ClusterLabels labels(n, kNoise);

    // Density-connected components over core points, seeds in ascending order.
    int next_cluster = 0;
    for (int i = 0; i < n; ++i) {
        if (!core[i] || labels[i] != kNoise) continue;
        const int cid = next_cluster++;
        std::deque<int> frontier{i};
        labels[i] = cid;
        while (!frontier.empty()) {
            const int p = frontier.front();
            frontier.pop_front();
            for (int q : neighbors[p]) {
                if (core[q] && labels[q] == kNoise) {
                    labels[q] = cid;
                    frontier.push_back(q);
                }
            }
        }
    }

    // Border points: claimed by the lowest-indexed core point in reach.
    for (int i = 0; i < n; ++i) {
        if (core[i]) continue;
        for (int q : neighbors[i]) {
            if (core[q]) {
                labels[i] = labels[q];
                break;
            }
        }
    }

    relabel_first_appearance(labels);
    if (core_out) *core_out = std::move(core);
    return labels;
}

ClusterLabels dbscan(const Matrix& points, double eps, int min_points,
                     std::vector<bool>& core_out) {
    if (points.rows == 0) throw EmptyInput("dbscan: no points");
    if (!(eps > 0.0)) throw RangeError("dbscan: eps must be > 0");
    return dbscan_with_neighbors(eps_neighbors(points, eps), min_points, &core_out);
}

ClusterLabels dbscan(const Matrix& points, double eps, int min_points) {
    std::vector<bool> core;
    return dbscan(points, eps, min_points, core);
}

int cluster_count(const ClusterLabels& labels) {
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    return max_label + 1;
}

int noise_count(const ClusterLabels& labels) {
    return static_cast<int>(std::count(labels.begin(), labels.end(), kNoise));
}

void relabel_first_appearance(ClusterLabels& labels) {
    std::vector<int> remap(cluster_count(labels), -1);
    int next = 0;
    for (int& l : labels) {
        if (l == kNoise) continue;
        if (remap[l] == -1) remap[l] = next++;
        l = remap[l];
    }
}

}  // namespace rai
