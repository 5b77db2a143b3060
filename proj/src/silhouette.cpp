#include "rai/silhouette.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "rai/errors.hpp"

namespace rai {

Matrix pairwise_distances(const Matrix& points) {
    const std::size_t n = points.rows;
    const std::size_t d = points.cols;
    Matrix dist(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = points.at(i, k) - points.at(j, k);
                s += diff * diff;
            }
            const double v = std::sqrt(s);
            dist.at(i, j) = v;
            dist.at(j, i) = v;
        }
    }
    return dist;
}

double silhouette_from_distances(const Matrix& distances, const ClusterLabels& labels) {
    const std::size_t n = labels.size();
    if (distances.rows != n || distances.cols != n) {
        throw ShapeError("silhouette: distance matrix does not match labels");
    }
    const int k = cluster_count(labels);
    std::vector<int> sizes(k, 0);
    for (int l : labels) {
        if (l != kNoise) ++sizes[l];
    }
    int nonempty = 0;
    for (int s : sizes) {
        if (s > 0) ++nonempty;
    }
    if (nonempty < 2) throw UndefinedScore("silhouette needs at least 2 clusters");

    double total = 0.0;
    std::size_t counted = 0;
    std::vector<double> cluster_sum(k);
    for (std::size_t i = 0; i < n; ++i) {
        const int li = labels[i];
        if (li == kNoise) continue;
        ++counted;
        if (sizes[li] == 1) continue;  // singleton scores 0

        std::fill(cluster_sum.begin(), cluster_sum.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const int lj = labels[j];
            if (lj == kNoise || j == i) continue;
            cluster_sum[lj] += distances.at(i, j);
        }
        const double a = cluster_sum[li] / (sizes[li] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            if (c == li || sizes[c] == 0) continue;
            b = std::min(b, cluster_sum[c] / sizes[c]);
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(counted);
}

double silhouette(const Matrix& points, const ClusterLabels& labels) {
    if (points.rows != labels.size()) throw ShapeError("silhouette: labels do not match points");
    return silhouette_from_distances(pairwise_distances(points), labels);
}

}  // namespace rai
