#include "locreg/linalg.hpp"

#include <cmath>
#include <string>

#include "locreg/error.hpp"

extern "C" {
void dsytrf_(const char* uplo, const int* n, double* a, const int* lda, int* ipiv, double* work,
             const int* lwork, int* info);
void dsytrs_(const char* uplo, const int* n, const int* nrhs, const double* a, const int* lda,
             const int* ipiv, double* b, const int* ldb, int* info);
}

namespace locreg {

SymmetricIndefiniteFactorization::SymmetricIndefiniteFactorization(const Eigen::MatrixXd& a)
    : factors_(a), pivots_(static_cast<std::size_t>(a.rows())) {
  if (a.rows() != a.cols()) throw DomainError("factorization needs a square matrix");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return;
  const char uplo = 'L';
  int info = 0;
  int lwork = -1;
  double query = 0.0;
  dsytrf_(&uplo, &n, factors_.data(), &n, pivots_.data(), &query, &lwork, &info);
  lwork = std::max(1, static_cast<int>(query));
  std::vector<double> work(static_cast<std::size_t>(lwork));
  dsytrf_(&uplo, &n, factors_.data(), &n, pivots_.data(), work.data(), &lwork, &info);
  if (info > 0)
    throw SolvabilityError("interpolation matrix is singular (zero pivot at row " + std::to_string(info) + ")");
  if (info < 0) throw Error("dsytrf rejected argument " + std::to_string(-info));
}

Eigen::MatrixXd SymmetricIndefiniteFactorization::solve(const Eigen::MatrixXd& rhs) const {
  if (rhs.rows() != factors_.rows()) throw DomainError("right-hand side has the wrong row count");
  Eigen::MatrixXd x = rhs;
  const int n = static_cast<int>(factors_.rows());
  const int nrhs = static_cast<int>(rhs.cols());
  if (n == 0 || nrhs == 0) return x;
  const char uplo = 'L';
  int info = 0;
  dsytrs_(&uplo, &n, &nrhs, factors_.data(), &n, pivots_.data(), x.data(), &n, &info);
  if (info != 0) throw Error("dsytrs rejected argument " + std::to_string(-info));
  return x;
}

double one_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

double inverse_one_norm_estimate(const SymmetricIndefiniteFactorization& factors) {
  const Eigen::Index n = factors.size();
  if (n == 0) return 0.0;
  if (n == 1) return std::abs(factors.solve(Eigen::MatrixXd::Ones(1, 1))(0, 0));

  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  Eigen::Index last = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const Eigen::VectorXd y = factors.solve(x);
    const double norm_y = y.lpNorm<1>();
    if (iter > 0 && norm_y <= estimate) break;
    estimate = norm_y;
    const Eigen::VectorXd sign = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
    // A is symmetric, so A⁻ᵀ = A⁻¹.
    const Eigen::VectorXd z = factors.solve(sign);
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (iter > 0 && (zmax <= z.dot(x) || j == last)) break;
    x.setZero();
    x(j) = 1.0;
    last = j;
  }

  // Higham's alternating test vector guards against unlucky starts.
  Eigen::VectorXd alt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = 1.0 + static_cast<double>(i) / static_cast<double>(n - 1);
    alt(i) = (i % 2 == 0) ? mag : -mag;
  }
  const double alt_est = 2.0 * factors.solve(alt).lpNorm<1>() / (3.0 * static_cast<double>(n));
  return std::max(estimate, alt_est);
}

double condition_estimate_1norm(const Eigen::MatrixXd& a, const SymmetricIndefiniteFactorization& factors) {
  return one_norm(a) * inverse_one_norm_estimate(factors);
}

}  // namespace locreg
