#pragma once

#include <vector>

#include <Eigen/Dense>

namespace locreg {

/// Bunch-Kaufman LDLᵀ factorization of a dense symmetric (possibly
/// indefinite) matrix, backed by LAPACK dsytrf/dsytrs.
class SymmetricIndefiniteFactorization {
 public:
  /// Throws SolvabilityError when a pivot block is exactly singular.
  explicit SymmetricIndefiniteFactorization(const Eigen::MatrixXd& a);

  Eigen::Index size() const noexcept { return factors_.rows(); }

  /// Solves A X = B for every column of B.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

 private:
  Eigen::MatrixXd factors_;
  std::vector<int> pivots_;
};

double one_norm(const Eigen::MatrixXd& a);

/// Hager-Higham lower bound on ||A⁻¹||₁ for symmetric A, using only solves.
double inverse_one_norm_estimate(const SymmetricIndefiniteFactorization& factors);

/// ||A||₁ · est(||A⁻¹||₁).
double condition_estimate_1norm(const Eigen::MatrixXd& a, const SymmetricIndefiniteFactorization& factors);

}  // namespace locreg
