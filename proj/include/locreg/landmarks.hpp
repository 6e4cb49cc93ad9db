#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace locreg {

/// Paired source/target points in R^m (m = 1..3), one row per landmark.
///
/// Quasi-landmarks are pairs whose source and target coincide; they pin the
/// transformation down away from the moving structures.
class LandmarkSet {
 public:
  /// Throws DegenerateInputError on shape mismatch, non-finite coordinates
  /// or sources closer than 1e-12, ValidationError when a quasi pair moves.
  LandmarkSet(Eigen::MatrixXd sources, Eigen::MatrixXd targets, std::vector<bool> quasi);
  LandmarkSet(Eigen::MatrixXd sources, Eigen::MatrixXd targets);

  int dimension() const noexcept { return static_cast<int>(sources_.cols()); }
  Eigen::Index size() const noexcept { return sources_.rows(); }

  const Eigen::MatrixXd& sources() const noexcept { return sources_; }
  const Eigen::MatrixXd& targets() const noexcept { return targets_; }
  bool is_quasi(Eigen::Index j) const { return quasi_.at(static_cast<std::size_t>(j)); }
  const std::vector<bool>& quasi_flags() const noexcept { return quasi_; }

  /// Landmarks at the given indices, renumbered in the given order.
  LandmarkSet subset(std::span<const Eigen::Index> indices) const;
  LandmarkSet with_targets(Eigen::MatrixXd targets) const;

 private:
  Eigen::MatrixXd sources_;
  Eigen::MatrixXd targets_;
  std::vector<bool> quasi_;
};

inline constexpr double kMinSourceSeparation = 1e-12;
inline constexpr double kQuasiTolerance = 1e-12;

}  // namespace locreg
