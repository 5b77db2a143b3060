#pragma once

#include <vector>

#include "rai/matrix.hpp"

namespace rai {

struct PcaModel {
    std::vector<double> means;   // per input column
    std::vector<double> scales;  // per input column; all 1 when standardize = false
    bool standardized = false;
    Matrix axes;                             // [n_components x columns], orthonormal rows
    std::vector<double> explained_fraction;  // per kept axis, nonincreasing
};

struct PcaResult {
    PcaModel model;
    Matrix projected;  // [rows x n_components]
};

// Centers (and by default z-scores) the columns, eigendecomposes the sample
// covariance with cyclic Jacobi rotations, and keeps the top n_components
// axes sorted by eigenvalue. Each axis's sign is fixed so its
// largest-magnitude coordinate is positive.
PcaResult fit_pca(const Matrix& data, int n_components, bool standardize = true);

// Project new rows with an existing model.
Matrix pca_project(const PcaModel& model, const Matrix& data);

// Full eigendecomposition helper shared with the grid search: eigenvalues
// descending plus the matching sign-fixed orthonormal axes.
void symmetric_eigen_sorted(const Matrix& symmetric, std::vector<double>& eigenvalues,
                            Matrix& axes_rows);

}  // namespace rai
