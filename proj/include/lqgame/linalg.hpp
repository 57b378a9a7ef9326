#pragma once

// Small dense helpers shared by the solver, the moment recursion and the
// compensator. Everything here is exact-decomposition based (SVD /
// self-adjoint eigensolver); matrices are desk-sized.

#include <Eigen/Dense>

namespace lqgame {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Largest eigenvalue modulus of a square matrix.
double spectral_radius(const Matrix& m);

/// sigma_min / sigma_max, or 0 for an all-zero matrix.
double reciprocal_condition(const Matrix& m);

/// Smallest singular value.
double min_singular_value(const Matrix& m);

/// Smallest eigenvalue of the symmetric part of a square matrix.
double min_symmetric_eigenvalue(const Matrix& m);

/// (M + M^T) / 2
Matrix symmetrize(const Matrix& m);

/// Moore-Penrose pseudoinverse. Singular values at or below
/// `relative_cutoff * sigma_max` are treated as zero.
Matrix pseudo_inverse(const Matrix& m, double relative_cutoff = 1e-12);

/// Orthogonal projector onto the column space (support) of a symmetric PSD
/// matrix, using the same cutoff rule as pseudo_inverse.
Matrix support_projector(const Matrix& m, double relative_cutoff = 1e-12);

/// Numerical rank with the usual max(rows, cols) * eps * sigma_max cutoff.
Eigen::Index numerical_rank(const Matrix& m);

/// Symmetric within 1e-9 * ||M||_2 and min eigenvalue >= -1e-9 * ||M||_2.
bool is_symmetric_psd(const Matrix& m);

/// Symmetric within 1e-9 * ||M||_2 and min eigenvalue > 1e-12.
bool is_symmetric_pd(const Matrix& m);

bool is_symmetric(const Matrix& m);

}  // namespace lqgame
