#include "lqgame/linalg.hpp"

#include <algorithm>
#include <limits>

namespace lqgame {

namespace {

constexpr double kPsdRelTol = 1e-9;
constexpr double kPdAbsTol = 1e-12;

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector();
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

}  // namespace

double spectral_norm(const Matrix& m) {
  const Vector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

double spectral_radius(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::EigenSolver<Matrix>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

double reciprocal_condition(const Matrix& m) {
  const Vector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

double min_singular_value(const Matrix& m) {
  const Vector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

double min_symmetric_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix pseudo_inverse(const Matrix& m, double relative_cutoff) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  Matrix out = Matrix::Zero(m.cols(), m.rows());
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double cutoff = relative_cutoff * s(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) {
      out += svd.matrixV().col(i) * (1.0 / s(i)) *
             svd.matrixU().col(i).transpose();
    }
  }
  return out;
}

Matrix support_projector(const Matrix& m, double relative_cutoff) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  Matrix out = Matrix::Zero(m.rows(), m.rows());
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double cutoff = relative_cutoff * s(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) {
      out += svd.matrixU().col(i) * svd.matrixU().col(i).transpose();
    }
  }
  return out;
}

Eigen::Index numerical_rank(const Matrix& m) {
  const Vector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                     std::numeric_limits<double>::epsilon() * s(0);
  return (s.array() > tol).count();
}

bool is_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = spectral_norm(m);
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kPsdRelTol * scale;
}

bool is_symmetric_psd(const Matrix& m) {
  if (!is_symmetric(m)) return false;
  return min_symmetric_eigenvalue(m) >= -kPsdRelTol * spectral_norm(m);
}

bool is_symmetric_pd(const Matrix& m) {
  if (!is_symmetric(m)) return false;
  return min_symmetric_eigenvalue(m) > kPdAbsTol;
}

}  // namespace lqgame
