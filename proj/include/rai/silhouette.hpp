#pragma once

#include "rai/dbscan.hpp"
#include "rai/matrix.hpp"

namespace rai {

// Mean of (b - a) / max(a, b) over clustered points; noise points are
// excluded entirely. Points in singleton clusters score 0 (Rousseeuw's
// convention). Throws UndefinedScore with fewer than 2 clusters.
double silhouette(const Matrix& points, const ClusterLabels& labels);

// Same from a precomputed condensed distance matrix (row-major n x n).
double silhouette_from_distances(const Matrix& distances, const ClusterLabels& labels);

Matrix pairwise_distances(const Matrix& points);

}  // namespace rai
