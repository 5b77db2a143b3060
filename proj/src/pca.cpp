#include "rai/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rai/errors.hpp"

namespace rai {

namespace {

constexpr double kOffDiagTol = 1e-10;
constexpr int kMaxSweeps = 100;

// Cyclic Jacobi eigendecomposition of a symmetric matrix. `a` is destroyed;
// `v` accumulates the rotations (columns become eigenvectors).
void jacobi_eigen(Matrix& a, Matrix& v) {
    const std::size_t n = a.rows;
    v = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a.at(p, q)));
        }
        if (off < kOffDiagTol) return;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < kOffDiagTol * 1e-3) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                a.at(p, p) = app - t * apq;
                a.at(q, q) = aqq + t * apq;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a.at(i, p);
                    const double aiq = a.at(i, q);
                    a.at(i, p) = aip - s * (aiq + tau * aip);
                    a.at(p, i) = a.at(i, p);
                    a.at(i, q) = aiq + s * (aip - tau * aiq);
                    a.at(q, i) = a.at(i, q);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v.at(i, p);
                    const double viq = v.at(i, q);
                    v.at(i, p) = vip - s * (viq + tau * vip);
                    v.at(i, q) = viq + s * (vip - tau * viq);
                }
            }
        }
    }
    throw NumericalError("Jacobi eigensolve did not converge");
}

}  // namespace

void symmetric_eigen_sorted(const Matrix& symmetric, std::vector<double>& eigenvalues,
                            Matrix& axes_rows) {
    const std::size_t d = symmetric.rows;
    Matrix a = symmetric;
    Matrix v;
    jacobi_eigen(a, v);

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a.at(i, i) > a.at(j, j); });

    eigenvalues.resize(d);
    axes_rows = Matrix(d, d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        eigenvalues[k] = a.at(order[k], order[k]);
        // sign convention: largest-magnitude coordinate positive
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double mag = std::abs(v.at(i, order[k]));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        const double sign = v.at(arg, order[k]) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i) axes_rows.at(k, i) = sign * v.at(i, order[k]);
    }
}

PcaResult fit_pca(const Matrix& data, int n_components, bool standardize) {
    if (data.rows < 2) throw ShapeError("fit_pca: need at least 2 rows");
    if (n_components < 1 || n_components > static_cast<int>(data.cols)) {
        throw ShapeError("fit_pca: n_components out of range");
    }
    const std::size_t n = data.rows;
    const std::size_t d = data.cols;

    PcaModel model;
    model.standardized = standardize;
    model.means.assign(d, 0.0);
    model.scales.assign(d, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += data.at(i, j);
        model.means[j] = m / static_cast<double>(n);
    }
    if (standardize) {
        for (std::size_t j = 0; j < d; ++j) {
            double ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double dv = data.at(i, j) - model.means[j];
                ss += dv * dv;
            }
            const double sd = std::sqrt(ss / static_cast<double>(n - 1));
            model.scales[j] = sd > 0.0 ? sd : 1.0;
        }
    }

    Matrix centered(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            centered.at(i, j) = (data.at(i, j) - model.means[j]) / model.scales[j];
        }
    }

    Matrix cov(d, d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double cij = centered.at(i, j);
            for (std::size_t k = j; k < d; ++k) cov.at(j, k) += cij * centered.at(i, k);
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = j; k < d; ++k) {
            cov.at(j, k) /= static_cast<double>(n - 1);
            cov.at(k, j) = cov.at(j, k);
        }
    }

    std::vector<double> eigenvalues;
    Matrix axes;
    symmetric_eigen_sorted(cov, eigenvalues, axes);

    double total = 0.0;
    for (double ev : eigenvalues) total += std::max(ev, 0.0);

    model.axes = Matrix(n_components, d);
    model.explained_fraction.resize(n_components);
    for (int k = 0; k < n_components; ++k) {
        for (std::size_t j = 0; j < d; ++j) model.axes.at(k, j) = axes.at(k, j);
        model.explained_fraction[k] = total > 0.0 ? std::max(eigenvalues[k], 0.0) / total : 0.0;
    }

    PcaResult result;
    result.projected = pca_project(model, data);
    result.model = std::move(model);
    return result;
}

Matrix pca_project(const PcaModel& model, const Matrix& data) {
    if (data.cols != model.means.size()) throw ShapeError("pca_project: column mismatch");
    const std::size_t n = data.rows;
    const std::size_t d = data.cols;
    const std::size_t k = model.axes.rows;
    Matrix out(n, k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double z = (data.at(i, j) - model.means[j]) / model.scales[j];
            for (std::size_t c = 0; c < k; ++c) out.at(i, c) += z * model.axes.at(c, j);
        }
    }
    return out;
}

}  // namespace rai
