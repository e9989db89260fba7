#pragma once

#include <span>
#include <vector>

#include "cricpred/errors.hpp"

namespace cricpred {

using Rows = std::vector<std::vector<double>>;

struct PcaConfig {
    int k = 0;                        // fixed component count; 0 = use the fraction
    double variance_fraction = 0.95;  // smallest k reaching this share
};

// Standardize-then-rotate transform. Components are eigenvectors of the
// sample correlation matrix, eigenvalue-descending.
struct PcaModel {
    std::vector<double> mean;
    std::vector<double> scale;                     // unit stddev; 1 for constant columns
    std::vector<std::vector<double>> components;   // k x d, orthonormal rows
    std::vector<double> explained_variance_fraction;
    bool rank_deficient = false;

    std::size_t n_components() const { return components.size(); }
    std::size_t n_inputs() const { return mean.size(); }

    std::vector<double> transform(std::span<const double> row) const;
    std::vector<double> inverse_transform(std::span<const double> proj) const;
    Rows transform_rows(const Rows& X) const;
};

PcaModel fit_pca(const Rows& X, const PcaConfig& config = {});

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Returns (eigenvalues, eigenvectors as rows), sorted descending.
std::pair<std::vector<double>, std::vector<std::vector<double>>> jacobi_eigen_symmetric(
    const std::vector<std::vector<double>>& A);

}  // namespace cricpred
