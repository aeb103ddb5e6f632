#pragma once

#include "rseri/risk.hpp"

#include <array>
#include <vector>

namespace rseri {

/// Eigen-decomposition of a small symmetric matrix via cyclic Jacobi
/// rotations. Pairs are sorted by descending eigenvalue; equal eigenvalues
/// keep their original column order, which pins down the degenerate case.
struct JacobiResult {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors; // eigenvectors[i] pairs with eigenvalues[i]
};

JacobiResult jacobi_eigen_symmetric(std::vector<std::vector<double>> a, double tolerance = 1e-10,
                                    int max_sweeps = 100);

/// Intermediate PCA quantities, exposed so the eigen residual can be checked
/// against the covariance matrix before the weight cleanup steps.
struct PcaDetail {
    std::array<std::array<double, 5>, 5> covariance{};
    std::array<double, 5> leading_vector{}; // oriented: largest-|component| positive
    double leading_value = 0.0;
    std::array<double, 5> weights{}; // clamped to >= 0 and renormalized to sum 1
};

/// PCA-derived weights over the five composite indicators: center columns,
/// sample covariance, leading eigenvector, orient, clamp negatives to zero,
/// renormalize. Requires n >= 5 rows and at least one non-constant column.
PcaDetail pca_detail(const std::vector<std::array<double, 5>>& rows);

WeightScheme pca_weights(const std::vector<std::array<double, 5>>& rows);

} // namespace rseri
