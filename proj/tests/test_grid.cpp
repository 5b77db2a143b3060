#include <doctest.h>

#include <cmath>

#include "rai/dbscan.hpp"
#include "rai/errors.hpp"
#include "rai/grid_search.hpp"
#include "rai/pca.hpp"
#include "rai/rng.hpp"
#include "rai/silhouette.hpp"

using namespace rai;

namespace {

// well-separated gaussian blobs in `dims` dimensions
Matrix blob_features(Rng& rng, int n, int dims, int blobs, double spread) {
    Matrix m(n, dims);
    for (int i = 0; i < n; ++i) {
        const int b = i % blobs;
        for (int j = 0; j < dims; ++j) {
            const double center = (j % blobs == b) ? 4.0 : 0.0;
            m.at(i, j) = center + spread * rng.next_normal();
        }
    }
    return m;
}

}  // namespace

TEST_CASE("default ranges are the tuned grid") {
    GridRanges ranges = GridRanges::defaults();
    REQUIRE(ranges.components.size() == 11);
    CHECK(ranges.components.front() == 5);
    CHECK(ranges.components.back() == 15);
    REQUIRE(ranges.eps.size() == 10);
    CHECK(ranges.eps.front() == 0.1);
    CHECK(ranges.eps.back() == 1.0);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(ranges.eps[i] == (i + 1) / 10.0);
    }
    REQUIRE(ranges.min_points.size() == 16);
    CHECK(ranges.min_points.front() == 5);
    CHECK(ranges.min_points.back() == 20);
    CHECK(ranges.noise_cap == 0.25);
}

TEST_CASE("recovers planted blobs and never returns fewer than two clusters") {
    Rng rng(60);
    Matrix features = blob_features(rng, 120, 8, 3, 0.05);
    GridRanges ranges;
    ranges.components = {2, 3, 4};
    ranges.eps = {0.2, 0.4, 0.6, 0.8};
    ranges.min_points = {4, 6, 8};
    GridSearchResult result = grid_search(features, ranges);
    CHECK(result.choice.cluster_count >= 2);
    CHECK(result.choice.silhouette > 0.8);
    CHECK(result.choice.silhouette <= 1.0);
    CHECK(cluster_count(result.labels) == result.choice.cluster_count);
    CHECK(noise_count(result.labels) == result.choice.noise_count);
    // blob identity is a label permutation of i % 3
    for (int i = 0; i < 120; ++i) {
        for (int j = 0; j < 120; ++j) {
            if (result.labels[i] == kNoise || result.labels[j] == kNoise) continue;
            if (i % 3 == j % 3) CHECK(result.labels[i] == result.labels[j]);
        }
    }
}

TEST_CASE("single-cell grid either answers or reports no valid clustering") {
    Rng rng(61);
    Matrix blobs = blob_features(rng, 60, 6, 2, 0.05);
    GridRanges one;
    one.components = {2};
    one.eps = {0.5};
    one.min_points = {4};
    GridSearchResult result = grid_search(blobs, one);
    CHECK(result.choice.n_components == 2);
    CHECK(result.choice.eps == 0.5);
    CHECK(result.choice.min_points == 4);

    // pure noise: the only cell is rejected
    Matrix scatter(40, 6);
    for (double& v : scatter.data) v = 100.0 * rng.next_normal();
    CHECK_THROWS_AS(grid_search(scatter, one), NoValidClustering);
}

TEST_CASE("ties break toward smaller parameter values") {
    // two tight far blobs: every working cell produces the same partition,
    // and for a fixed component count the same score; the smallest eps and
    // min_points must win. Components stay fixed so scores tie exactly.
    Rng rng(62);
    Matrix features = blob_features(rng, 40, 5, 2, 1e-4);
    GridRanges ranges;
    ranges.components = {3};
    ranges.eps = {0.3, 0.4, 0.5};
    ranges.min_points = {3, 4, 5};
    GridSearchResult result = grid_search(features, ranges);
    CHECK(result.choice.eps == 0.3);
    CHECK(result.choice.min_points == 3);
}

TEST_CASE("parallel evaluation matches sequential exactly") {
    Rng rng(63);
    Matrix features = blob_features(rng, 90, 10, 3, 0.3);
    GridRanges seq;
    seq.components = {2, 3, 4, 5, 6};
    seq.eps = {0.2, 0.4, 0.6, 0.8, 1.0};
    seq.min_points = {3, 5, 7};
    seq.threads = 1;
    GridRanges par = seq;
    par.threads = 8;
    GridSearchResult a = grid_search(features, seq);
    GridSearchResult b = grid_search(features, par);
    CHECK(a.choice.n_components == b.choice.n_components);
    CHECK(a.choice.eps == b.choice.eps);
    CHECK(a.choice.min_points == b.choice.min_points);
    CHECK(a.choice.silhouette == b.choice.silhouette);
    CHECK(a.labels == b.labels);
}

TEST_CASE("components beyond the column count are rejected, not fatal") {
    Rng rng(64);
    Matrix features = blob_features(rng, 60, 3, 2, 0.05);
    GridRanges ranges;
    ranges.components = {2, 7};  // 7 > 3 columns
    ranges.eps = {0.5};
    ranges.min_points = {4};
    GridSearchResult result = grid_search(features, ranges);
    CHECK(result.choice.n_components == 2);
}

TEST_CASE("grid cells reproduce the standalone pipeline") {
    Rng rng(65);
    Matrix features = blob_features(rng, 50, 6, 2, 0.2);
    GridRanges one;
    one.components = {3};
    one.eps = {0.6};
    one.min_points = {4};
    GridSearchResult grid = grid_search(features, one);

    PcaResult pca = fit_pca(features, 3, one.standardize);
    ClusterLabels direct = dbscan(pca.projected, 0.6, 4);
    CHECK(grid.labels == direct);
    CHECK(grid.choice.silhouette ==
          doctest::Approx(silhouette(pca.projected, direct)).epsilon(1e-15));
}

TEST_CASE("empty ranges are a config error") {
    Matrix features(10, 3, 0.0);
    GridRanges bad;
    bad.eps = {0.5};
    bad.min_points = {3};
    CHECK_THROWS_AS(grid_search(features, bad), ConfigError);
}
