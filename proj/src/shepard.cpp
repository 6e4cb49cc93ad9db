#include "locreg/shepard.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

#include "locreg/error.hpp"

namespace locreg {

void ShepardConfig::validate(Eigen::Index n, int dim) const {
  if (n_local < 1 || n_local > n)
    throw ConfigError("n_local must be in [1, " + std::to_string(n) + "], got " + std::to_string(n_local));
  if (n_weight < 1 || n_weight > n)
    throw ConfigError("n_weight must be in [1, " + std::to_string(n) + "], got " + std::to_string(n_weight));
  if (rho && !(*rho > 0.0)) throw ConfigError("rho must be positive");
  if (!(snap_tolerance > 0.0)) throw ConfigError("snap tolerance must be positive");
  if (const auto deg = polynomial_tail_degree(nodal_kernel)) {
    const auto u = static_cast<int>(monomial_exponents(dim, *deg).size());
    if (n_local <= u)
      throw ConfigError("n_local must exceed the nodal polynomial tail dimension " + std::to_string(u));
  }
}

namespace {

std::vector<double> squared_distances(const Eigen::MatrixXd& sources, std::span<const double> x) {
  std::vector<double> d2(static_cast<std::size_t>(sources.rows()));
  for (Eigen::Index j = 0; j < sources.rows(); ++j) {
    double s = 0.0;
    for (Eigen::Index d = 0; d < sources.cols(); ++d) {
      const double diff = x[static_cast<std::size_t>(d)] - sources(j, d);
      s += diff * diff;
    }
    d2[static_cast<std::size_t>(j)] = s;
  }
  return d2;
}

std::vector<Eigen::Index> k_smallest(const std::vector<double>& d2, int k) {
  std::vector<Eigen::Index> idx(d2.size());
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  const auto less = [&](Eigen::Index a, Eigen::Index b) {
    const double da = d2[static_cast<std::size_t>(a)];
    const double db = d2[static_cast<std::size_t>(b)];
    return da < db || (da == db && a < b);
  };
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), less);
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

// Weight rule with the hypercube sides precomputed.
class WeightRule {
 public:
  WeightRule(const LandmarkSet& landmarks, const ShepardConfig& cfg)
      : sources_(landmarks.sources()), cfg_(cfg), rho_(hypercube_sides(landmarks, cfg)) {}

  // Writes the normalized weights of the active landmarks into (index, weight)
  // pairs in ascending index order.
  void operator()(std::span<const double> x, std::vector<std::pair<Eigen::Index, double>>& out) const {
    out.clear();
    const std::vector<double> d2 = squared_distances(sources_, x);
    const double snap2 = cfg_.snap_tolerance * cfg_.snap_tolerance;
    const std::vector<Eigen::Index> near = k_smallest(d2, cfg_.n_weight);
    if (d2[static_cast<std::size_t>(near.front())] < snap2) {
      out.emplace_back(near.front(), 1.0);
      return;
    }

    std::vector<Eigen::Index> active;
    for (const Eigen::Index j : near) {
      bool inside = true;
      for (Eigen::Index d = 0; d < sources_.cols() && inside; ++d)
        inside = std::abs(x[static_cast<std::size_t>(d)] - sources_(j, d)) <= 0.5 * rho_[static_cast<std::size_t>(j)];
      if (inside) active.push_back(j);
    }
    if (active.empty()) active = near;
    std::sort(active.begin(), active.end());

    double total = 0.0;
    for (const Eigen::Index j : active) total += 1.0 / d2[static_cast<std::size_t>(j)];
    for (const Eigen::Index j : active) out.emplace_back(j, (1.0 / d2[static_cast<std::size_t>(j)]) / total);
  }

 private:
  const Eigen::MatrixXd& sources_;
  ShepardConfig cfg_;
  std::vector<double> rho_;
};

class ShepardModel final : public TransformModel {
 public:
  ShepardModel(const LandmarkSet& landmarks, const ShepardConfig& cfg, std::vector<NodalFunction> nodal)
      : landmarks_(landmarks), cfg_(cfg), nodal_(std::move(nodal)), rule_(landmarks_, cfg_) {}

  int dimension() const override { return landmarks_.dimension(); }

  void evaluate(std::span<const double> x, std::span<double> out) const override {
    std::vector<std::pair<Eigen::Index, double>> weights;
    rule_(x, weights);
    const std::size_t m = x.size();
    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> local(m);
    for (const auto& [j, w] : weights) {
      nodal_[static_cast<std::size_t>(j)].local.model().evaluate(x, local);
      for (std::size_t k = 0; k < m; ++k) out[k] += w * local[k];
    }
  }

 private:
  LandmarkSet landmarks_;
  ShepardConfig cfg_;
  std::vector<NodalFunction> nodal_;
  WeightRule rule_;
};

}  // namespace

std::vector<Eigen::Index> nearest_landmarks(const LandmarkSet& landmarks, const Eigen::VectorXd& x, int k) {
  if (k < 1 || k > landmarks.size())
    throw DomainError("k must be in [1, " + std::to_string(landmarks.size()) + "]");
  if (x.size() != landmarks.dimension()) throw DomainError("query point has the wrong dimension");
  return k_smallest(squared_distances(landmarks.sources(), {x.data(), static_cast<std::size_t>(x.size())}), k);
}

std::vector<double> hypercube_sides(const LandmarkSet& landmarks, const ShepardConfig& cfg) {
  cfg.validate(landmarks.size(), landmarks.dimension());
  const auto n = static_cast<std::size_t>(landmarks.size());
  if (cfg.rho) return std::vector<double>(n, *cfg.rho);
  std::vector<double> rho(n);
  for (Eigen::Index j = 0; j < landmarks.size(); ++j) {
    const Eigen::VectorXd xj = landmarks.sources().row(j).transpose();
    const auto near = nearest_landmarks(landmarks, xj, cfg.n_weight);
    rho[static_cast<std::size_t>(j)] = 2.0 * (landmarks.sources().row(near.back()) - xj.transpose()).norm();
  }
  return rho;
}

std::vector<NodalFunction> build_nodal_interpolants(const LandmarkSet& landmarks, const ShepardConfig& cfg) {
  cfg.validate(landmarks.size(), landmarks.dimension());
  std::vector<NodalFunction> out;
  out.reserve(static_cast<std::size_t>(landmarks.size()));
  for (Eigen::Index j = 0; j < landmarks.size(); ++j) {
    const Eigen::VectorXd xj = landmarks.sources().row(j).transpose();
    std::vector<Eigen::Index> near = nearest_landmarks(landmarks, xj, cfg.n_local);
    try {
      Transformation local = solve_transform(cfg.nodal_kernel, landmarks.subset(near));
      out.push_back(NodalFunction{j, std::move(near), std::move(local)});
    } catch (const SolvabilityError& e) {
      throw SolvabilityError("nodal function " + std::to_string(j) + ": " + e.what());
    }
  }
  return out;
}

Eigen::VectorXd shepard_weights(const LandmarkSet& landmarks, const ShepardConfig& cfg, const Eigen::VectorXd& x) {
  if (x.size() != landmarks.dimension()) throw DomainError("query point has the wrong dimension");
  const WeightRule rule(landmarks, cfg);
  std::vector<std::pair<Eigen::Index, double>> w;
  rule({x.data(), static_cast<std::size_t>(x.size())}, w);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(landmarks.size());
  for (const auto& [j, v] : w) out(j) = v;
  return out;
}

Eigen::VectorXd evaluate_shepard(const LandmarkSet& landmarks, const ShepardConfig& cfg,
                                 std::span<const NodalFunction> nodal, const Eigen::VectorXd& x) {
  if (static_cast<Eigen::Index>(nodal.size()) != landmarks.size())
    throw DomainError("one nodal function per landmark is required");
  if (x.size() != landmarks.dimension()) throw DomainError("query point has the wrong dimension");
  const WeightRule rule(landmarks, cfg);
  std::vector<std::pair<Eigen::Index, double>> w;
  rule({x.data(), static_cast<std::size_t>(x.size())}, w);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (const auto& [j, v] : w) out += v * nodal[static_cast<std::size_t>(j)].local.evaluate(x);
  return out;
}

Transformation build_shepard_transform(const LandmarkSet& landmarks, const ShepardConfig& cfg) {
  std::vector<NodalFunction> nodal = build_nodal_interpolants(landmarks, cfg);
  SolveDiagnostics diag;
  diag.condition = 1.0;
  for (const auto& f : nodal) {
    diag.condition = std::max(diag.condition, f.local.condition_estimate());
    diag.ill_conditioned = diag.ill_conditioned || f.local.ill_conditioned();
  }
  auto model = std::make_shared<ShepardModel>(landmarks, cfg, std::move(nodal));

  const int m = landmarks.dimension();
  Eigen::VectorXd y(m);
  for (Eigen::Index j = 0; j < landmarks.size(); ++j) {
    const Eigen::VectorXd x = landmarks.sources().row(j).transpose();
    model->evaluate({x.data(), static_cast<std::size_t>(m)}, {y.data(), static_cast<std::size_t>(m)});
    diag.residual = std::max(diag.residual, (y - landmarks.targets().row(j).transpose()).cwiseAbs().maxCoeff());
  }
  const double scale = std::max(1.0, landmarks.targets().cwiseAbs().maxCoeff());
  diag.tolerance = (diag.condition < 1e10 ? 1e-10 : 1e-6) * scale;

  std::ostringstream desc;
  desc << "shepard(" << cfg.nodal_kernel.describe() << ", n_local=" << cfg.n_local << ", n_weight=" << cfg.n_weight
       << ", rho=";
  if (cfg.rho)
    desc << *cfg.rho;
  else
    desc << "auto";
  desc << ")";
  return Transformation(TransformKind::Shepard, std::move(model), Eigen::MatrixXd(), Eigen::MatrixXd(), diag,
                        desc.str());
}

}  // namespace locreg
