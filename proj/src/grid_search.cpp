#include "rai/grid_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "rai/errors.hpp"
#include "rai/pca.hpp"
#include "rai/silhouette.hpp"

namespace rai {

GridRanges GridRanges::defaults() {
    GridRanges r;
    for (int c = 5; c <= 15; ++c) r.components.push_back(c);
    for (int e = 1; e <= 10; ++e) r.eps.push_back(static_cast<double>(e) / 10.0);
    for (int m = 5; m <= 20; ++m) r.min_points.push_back(m);
    return r;
}

namespace {

struct Cell {
    bool accepted = false;
    double score = 0.0;
    int clusters = 0;
    int noise = 0;
    ClusterLabels labels;
};

// Squared-distance matrix, so the eps test matches dbscan() bit-exactly.
Matrix pairwise_sq_distances(const Matrix& points) {
    const std::size_t n = points.rows;
    const std::size_t d = points.cols;
    Matrix dist2(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = points.at(i, k) - points.at(j, k);
                s += diff * diff;
            }
            dist2.at(i, j) = s;
            dist2.at(j, i) = s;
        }
    }
    return dist2;
}

std::vector<std::vector<int>> neighbors_from_sq_distances(const Matrix& dist2, double eps) {
    const int n = static_cast<int>(dist2.rows);
    const double eps2 = eps * eps;
    std::vector<std::vector<int>> neighbors(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (dist2.at(i, j) <= eps2) neighbors[i].push_back(j);
        }
    }
    return neighbors;
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

GridSearchResult grid_search(const Matrix& features, const GridRanges& ranges_in) {
    if (ranges_in.components.empty() || ranges_in.eps.empty() || ranges_in.min_points.empty()) {
        throw ConfigError("grid_search: empty parameter range");
    }
    // Ascending deduplicated ranges make canonical cell order agree with the
    // value-based tie-break.
    GridRanges ranges = ranges_in;
    ranges.components = sorted_unique(std::move(ranges.components));
    ranges.eps = sorted_unique(std::move(ranges.eps));
    ranges.min_points = sorted_unique(std::move(ranges.min_points));

    const std::size_t n = features.rows;
    const std::size_t n_eps = ranges.eps.size();
    const std::size_t n_mp = ranges.min_points.size();
    const std::size_t cells_per_comp = n_eps * n_mp;

    // One full decomposition; the top-k slice equals fit_pca(features, k).
    const int max_comp = static_cast<int>(features.cols);
    PcaResult full = fit_pca(features, max_comp, ranges.standardize);
    const Matrix& proj = full.projected;

    std::vector<Cell> cells(ranges.components.size() * cells_per_comp);

    auto eval_component = [&](std::size_t ci) {
        const int k = ranges.components[ci];
        if (k < 1 || k > max_comp) return;  // unevaluable cell, stays rejected

        Matrix pts(n, k);
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) pts.at(i, j) = proj.at(i, j);
        }
        const Matrix dist2 = pairwise_sq_distances(pts);
        Matrix dist = dist2;
        for (double& v : dist.data) v = std::sqrt(v);

        for (std::size_t ei = 0; ei < n_eps; ++ei) {
            const auto neighbors = neighbors_from_sq_distances(dist2, ranges.eps[ei]);
            for (std::size_t mi = 0; mi < n_mp; ++mi) {
                Cell& cell = cells[ci * cells_per_comp + ei * n_mp + mi];
                ClusterLabels labels = dbscan_with_neighbors(neighbors, ranges.min_points[mi]);
                cell.clusters = cluster_count(labels);
                cell.noise = noise_count(labels);
                if (cell.clusters < 2) continue;
                if (static_cast<double>(cell.noise) > ranges.noise_cap * static_cast<double>(n)) {
                    continue;
                }
                cell.score = silhouette_from_distances(dist, labels);
                cell.labels = std::move(labels);
                cell.accepted = true;
            }
        }
    };

    int threads = ranges.threads > 0 ? ranges.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(ranges.components.size())));
    if (threads == 1) {
        for (std::size_t ci = 0; ci < ranges.components.size(); ++ci) eval_component(ci);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t ci = next.fetch_add(1);
                    if (ci >= ranges.components.size()) return;
                    eval_component(ci);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Canonical-order scan: strict improvement implements the tie-break
    // (fewer components, then smaller eps, then smaller min_points).
    std::optional<std::size_t> best;
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        if (!cells[idx].accepted) continue;
        if (!best || cells[idx].score > cells[*best].score) best = idx;
    }
    if (!best) throw NoValidClustering("every grid cell was rejected");

    const std::size_t ci = *best / cells_per_comp;
    const std::size_t ei = (*best % cells_per_comp) / n_mp;
    const std::size_t mi = *best % n_mp;

    GridSearchResult result;
    result.choice.n_components = ranges.components[ci];
    result.choice.eps = ranges.eps[ei];
    result.choice.min_points = ranges.min_points[mi];
    result.choice.silhouette = cells[*best].score;
    result.choice.cluster_count = cells[*best].clusters;
    result.choice.noise_count = cells[*best].noise;
    result.labels = std::move(cells[*best].labels);
    return result;
}

}  // namespace rai
