#include "locreg/landmarks.hpp"

#include <string>

#include "locreg/error.hpp"

namespace locreg {

LandmarkSet::LandmarkSet(Eigen::MatrixXd sources, Eigen::MatrixXd targets)
    : LandmarkSet(sources, std::move(targets), std::vector<bool>(static_cast<std::size_t>(sources.rows()), false)) {}

LandmarkSet::LandmarkSet(Eigen::MatrixXd sources, Eigen::MatrixXd targets, std::vector<bool> quasi)
    : sources_(std::move(sources)), targets_(std::move(targets)), quasi_(std::move(quasi)) {
  const Eigen::Index n = sources_.rows();
  if (n < 1) throw DegenerateInputError("a landmark set needs at least one pair");
  if (sources_.cols() < 1 || sources_.cols() > 3)
    throw DegenerateInputError("landmark dimension must be 1, 2 or 3");
  if (targets_.rows() != n || targets_.cols() != sources_.cols())
    throw DegenerateInputError("source and target landmark arrays differ in shape");
  if (quasi_.size() != static_cast<std::size_t>(n))
    throw DegenerateInputError("quasi flag count differs from landmark count");
  if (!sources_.allFinite() || !targets_.allFinite())
    throw DegenerateInputError("landmark coordinates must be finite");

  for (Eigen::Index j = 0; j < n; ++j) {
    if (quasi_[static_cast<std::size_t>(j)] &&
        (sources_.row(j) - targets_.row(j)).cwiseAbs().maxCoeff() > kQuasiTolerance)
      throw ValidationError("quasi-landmark " + std::to_string(j) + " has source != target");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if ((sources_.row(i) - sources_.row(j)).norm() <= kMinSourceSeparation)
        throw DegenerateInputError("duplicate source landmarks " + std::to_string(i) + " and " +
                                   std::to_string(j));
    }
  }
}

LandmarkSet LandmarkSet::subset(std::span<const Eigen::Index> indices) const {
  const auto k = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd s(k, sources_.cols());
  Eigen::MatrixXd t(k, sources_.cols());
  std::vector<bool> q(indices.size());
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Index j = indices[static_cast<std::size_t>(i)];
    if (j < 0 || j >= size()) throw DomainError("landmark index out of range");
    s.row(i) = sources_.row(j);
    t.row(i) = targets_.row(j);
    q[static_cast<std::size_t>(i)] = quasi_[static_cast<std::size_t>(j)];
  }
  return LandmarkSet(std::move(s), std::move(t), std::move(q));
}

LandmarkSet LandmarkSet::with_targets(Eigen::MatrixXd targets) const {
  return LandmarkSet(sources_, std::move(targets), quasi_);
}

}  // namespace locreg
