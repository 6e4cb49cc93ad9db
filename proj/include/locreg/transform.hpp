#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "locreg/kernels.hpp"
#include "locreg/landmarks.hpp"
#include "locreg/lobachevsky.hpp"

namespace locreg {

enum class TransformKind { GlobalRadial, TensorProduct, Shepard };

/// Evaluation backend of a Transformation. Implementations are immutable.
class TransformModel {
 public:
  virtual ~TransformModel() = default;
  virtual int dimension() const = 0;
  /// Writes F(x) into out; both spans have dimension() entries.
  virtual void evaluate(std::span<const double> x, std::span<double> out) const = 0;
};

/// Solve-time diagnostics carried by every Transformation.
struct SolveDiagnostics {
  double residual = 0.0;           // max_j ||F(x_j) - t_j||_inf
  double tolerance = 0.0;          // residual bound the solve is expected to meet
  double condition = 1.0;          // 1-norm condition estimate of the system matrix
  bool ill_conditioned = false;    // condition > kIllConditioned
};

inline constexpr double kIllConditioned = 1e16;

/// An immutable map R^m -> R^m fitted to a landmark set. Copies share the
/// underlying model.
class Transformation {
 public:
  Transformation(TransformKind kind, std::shared_ptr<const TransformModel> model, Eigen::MatrixXd coefficients,
                 Eigen::MatrixXd tail_coefficients, SolveDiagnostics diagnostics, std::string description);

  TransformKind kind() const noexcept { return kind_; }
  int dimension() const { return model_->dimension(); }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;
  /// Evaluates every row of points.
  Eigen::MatrixXd evaluate_rows(const Eigen::MatrixXd& points) const;

  /// Kernel coefficients, one column per output coordinate (N x m). Empty
  /// for Shepard transformations, whose coefficients live in nodal functions.
  const Eigen::MatrixXd& coefficients() const noexcept { return coefficients_; }
  /// Polynomial tail coefficients (U x m); zero rows when no tail is used.
  const Eigen::MatrixXd& tail_coefficients() const noexcept { return tail_; }

  const SolveDiagnostics& diagnostics() const noexcept { return diagnostics_; }
  double residual() const noexcept { return diagnostics_.residual; }
  double condition_estimate() const noexcept { return diagnostics_.condition; }
  bool ill_conditioned() const noexcept { return diagnostics_.ill_conditioned; }
  const std::string& description() const noexcept { return description_; }

  const TransformModel& model() const noexcept { return *model_; }

 private:
  TransformKind kind_;
  std::shared_ptr<const TransformModel> model_;
  Eigen::MatrixXd coefficients_;
  Eigen::MatrixXd tail_;
  SolveDiagnostics diagnostics_;
  std::string description_;
};

Transformation identity_transformation(int dimension);

/// Exponent tuples of the monomials of total degree <= degree in m
/// variables, ordered by total degree, then lexicographically with the
/// first coordinate's exponent descending: 1, x1, x2, x1², x1x2, x2², ...
std::vector<std::array<int, 3>> monomial_exponents(int m, int degree);

/// The symmetric saddle-point system [[M, Q], [Qᵀ, 0]] [a; b] = [t; 0].
struct SaddleSystem {
  Eigen::MatrixXd kernel_matrix;     // M, N x N
  Eigen::MatrixXd polynomial_matrix; // Q, N x U (U = 0 without tail)
  Eigen::MatrixXd rhs;               // targets, N x m
  std::optional<int> tail_degree;

  Eigen::Index tail_size() const noexcept { return polynomial_matrix.cols(); }
  Eigen::MatrixXd full_matrix() const;
  Eigen::MatrixXd full_rhs() const;
};

SaddleSystem assemble_system(const RadialKernelSpec& kernel, const LandmarkSet& landmarks);

/// Fits a global radial transformation (with polynomial tail when the
/// kernel needs one). Throws SolvabilityError for singular systems or
/// sources that are not unisolvent for the tail polynomials.
Transformation solve_transform(const RadialKernelSpec& kernel, const LandmarkSet& landmarks);

using TensorKernel = std::variant<UnivariateKernelSpec, LobachevskySpec>;

double eval_tensor_factor(const TensorKernel& kernel, double x);
/// Half-width of the factor's support (+infinity never occurs).
double tensor_support_radius(const TensorKernel& kernel);

/// Kernel matrix M_ij = Π_d ψ(x_id - x_jd).
Eigen::MatrixXd assemble_tensor_matrix(const TensorKernel& kernel, const LandmarkSet& landmarks);

/// Fits F_k(x) = Σ_j c_jk Π_d ψ(x_d - x_jd). Lobachevsky kernels must have
/// even order.
Transformation build_tensor_transform(const TensorKernel& kernel, const LandmarkSet& landmarks);

/// 1-norm condition estimate of the full saddle matrix.
double condition_estimate(const SaddleSystem& system);

}  // namespace locreg
