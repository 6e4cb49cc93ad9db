#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "locreg/kernels.hpp"
#include "locreg/landmarks.hpp"
#include "locreg/transform.hpp"

namespace locreg {

/// Modified Shepard transformation parameters.
///
/// Each landmark j gets a nodal interpolant fitted on its n_local nearest
/// sources. At evaluation, landmark j contributes with weight
/// τ_j / ||x - x_j||² where τ_j = 1 iff j is one of the n_weight landmarks
/// nearest to x and x lies in the axis-aligned hypercube of side ρ_j
/// centred at x_j. When no landmark satisfies both, the nearest-n_weight
/// rule alone is used.
struct ShepardConfig {
  int n_local = 25;
  int n_weight = 25;
  RadialKernelSpec nodal_kernel = RadialKernelSpec::thin_plate_spline();
  /// Fixed hypercube side; nullopt selects ρ_j = 2 × distance from x_j to
  /// its n_weight-th nearest landmark (x_j itself counts as the first).
  std::optional<double> rho;
  double snap_tolerance = 1e-12;

  /// Throws ConfigError when the sizes do not fit n landmarks in R^dim.
  void validate(Eigen::Index n, int dim) const;
};

/// Indices of the k nearest sources to x, nearest first, ties broken by
/// ascending index. Throws DomainError unless 1 <= k <= N.
std::vector<Eigen::Index> nearest_landmarks(const LandmarkSet& landmarks, const Eigen::VectorXd& x, int k);

struct NodalFunction {
  Eigen::Index center;
  std::vector<Eigen::Index> neighbors;  // nearest first; neighbors[0] == center
  Transformation local;
};

/// Fits the N local interpolants L_j. A rank-deficient neighbourhood throws
/// SolvabilityError naming the node.
std::vector<NodalFunction> build_nodal_interpolants(const LandmarkSet& landmarks, const ShepardConfig& cfg);

/// Per-landmark hypercube sides ρ_j under cfg.
std::vector<double> hypercube_sides(const LandmarkSet& landmarks, const ShepardConfig& cfg);

/// Normalized weights W̄(x), length N, summing to one. Returns the cardinal
/// vector e_j when x is within snap_tolerance of x_j.
Eigen::VectorXd shepard_weights(const LandmarkSet& landmarks, const ShepardConfig& cfg, const Eigen::VectorXd& x);

/// F(x) = Σ_j W̄_j(x) L_j(x) over the landmarks with nonzero weight.
Eigen::VectorXd evaluate_shepard(const LandmarkSet& landmarks, const ShepardConfig& cfg,
                                 std::span<const NodalFunction> nodal, const Eigen::VectorXd& x);

/// Builds the nodal functions and wraps them as a Transformation whose
/// condition estimate is the worst nodal one.
Transformation build_shepard_transform(const LandmarkSet& landmarks, const ShepardConfig& cfg);

}  // namespace locreg
