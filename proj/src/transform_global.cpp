#include "locreg/transform.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "locreg/error.hpp"
#include "locreg/linalg.hpp"

namespace locreg {

Transformation::Transformation(TransformKind kind, std::shared_ptr<const TransformModel> model,
                               Eigen::MatrixXd coefficients, Eigen::MatrixXd tail_coefficients,
                               SolveDiagnostics diagnostics, std::string description)
    : kind_(kind),
      model_(std::move(model)),
      coefficients_(std::move(coefficients)),
      tail_(std::move(tail_coefficients)),
      diagnostics_(diagnostics),
      description_(std::move(description)) {}

Eigen::VectorXd Transformation::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != dimension()) throw DomainError("evaluation point has the wrong dimension");
  Eigen::VectorXd out(dimension());
  model_->evaluate({x.data(), static_cast<std::size_t>(x.size())}, {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

Eigen::MatrixXd Transformation::evaluate_rows(const Eigen::MatrixXd& points) const {
  if (points.cols() != dimension()) throw DomainError("evaluation points have the wrong dimension");
  const auto m = static_cast<std::size_t>(dimension());
  Eigen::MatrixXd out(points.rows(), points.cols());
  Eigen::VectorXd x(points.cols());
  Eigen::VectorXd y(points.cols());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    x = points.row(i).transpose();
    model_->evaluate({x.data(), m}, {y.data(), m});
    out.row(i) = y.transpose();
  }
  return out;
}

namespace {

class IdentityModel final : public TransformModel {
 public:
  explicit IdentityModel(int dim) : dim_(dim) {}
  int dimension() const override { return dim_; }
  void evaluate(std::span<const double> x, std::span<double> out) const override {
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k];
  }

 private:
  int dim_;
};

double monomial(const std::array<int, 3>& e, std::span<const double> x) {
  double v = 1.0;
  for (std::size_t d = 0; d < x.size(); ++d)
    for (int p = 0; p < e[d]; ++p) v *= x[d];
  return v;
}

// Euclidean distance from x to row j of points, summed in coordinate order
// so that assembly and evaluation produce bit-identical kernel values.
double distance(std::span<const double> x, const Eigen::MatrixXd& points, Eigen::Index j) {
  double r2 = 0.0;
  for (Eigen::Index d = 0; d < points.cols(); ++d) {
    const double diff = x[static_cast<std::size_t>(d)] - points(j, d);
    r2 += diff * diff;
  }
  return std::sqrt(r2);
}

class GlobalRadialModel final : public TransformModel {
 public:
  GlobalRadialModel(RadialKernelSpec kernel, Eigen::MatrixXd sources, Eigen::MatrixXd coeffs, Eigen::MatrixXd tail,
                    std::vector<std::array<int, 3>> exponents)
      : kernel_(kernel),
        sources_(std::move(sources)),
        coeffs_(std::move(coeffs)),
        tail_(std::move(tail)),
        exponents_(std::move(exponents)),
        support_(support_radius(kernel_)) {}

  int dimension() const override { return static_cast<int>(sources_.cols()); }

  void evaluate(std::span<const double> x, std::span<double> out) const override {
    const Eigen::Index m = sources_.cols();
    std::array<long double, 3> acc{};
    for (Eigen::Index j = 0; j < sources_.rows(); ++j) {
      const double r = distance(x, sources_, j);
      if (r >= support_) continue;
      const double phi = eval_radial(kernel_, r);
      if (phi == 0.0) continue;
      for (Eigen::Index k = 0; k < m; ++k) acc[k] += static_cast<long double>(coeffs_(j, k)) * phi;
    }
    for (std::size_t u = 0; u < exponents_.size(); ++u) {
      const double p = monomial(exponents_[u], x);
      for (Eigen::Index k = 0; k < m; ++k) acc[k] += static_cast<long double>(tail_(static_cast<Eigen::Index>(u), k)) * p;
    }
    for (Eigen::Index k = 0; k < m; ++k) out[k] = static_cast<double>(acc[k]);
  }

 private:
  RadialKernelSpec kernel_;
  Eigen::MatrixXd sources_;
  Eigen::MatrixXd coeffs_;
  Eigen::MatrixXd tail_;
  std::vector<std::array<int, 3>> exponents_;
  double support_;
};

class TensorModel final : public TransformModel {
 public:
  TensorModel(TensorKernel kernel, Eigen::MatrixXd sources, Eigen::MatrixXd coeffs)
      : kernel_(std::move(kernel)),
        sources_(std::move(sources)),
        coeffs_(std::move(coeffs)),
        support_(tensor_support_radius(kernel_)) {}

  int dimension() const override { return static_cast<int>(sources_.cols()); }

  void evaluate(std::span<const double> x, std::span<double> out) const override {
    const Eigen::Index m = sources_.cols();
    std::array<long double, 3> acc{};
    for (Eigen::Index j = 0; j < sources_.rows(); ++j) {
      double prod = 1.0;
      for (Eigen::Index d = 0; d < m && prod != 0.0; ++d) {
        const double diff = x[d] - sources_(j, d);
        prod = std::abs(diff) >= support_ ? 0.0 : prod * eval_tensor_factor(kernel_, diff);
      }
      if (prod == 0.0) continue;
      for (Eigen::Index k = 0; k < m; ++k) acc[k] += static_cast<long double>(coeffs_(j, k)) * prod;
    }
    for (Eigen::Index k = 0; k < m; ++k) out[k] = static_cast<double>(acc[k]);
  }

 private:
  TensorKernel kernel_;
  Eigen::MatrixXd sources_;
  Eigen::MatrixXd coeffs_;
  double support_;
};

struct SolvedSystem {
  Eigen::MatrixXd solution;
  double condition;
};

// Factor once, back-substitute all coordinates, then one refinement step.
constexpr int kRefinementSteps = 5;

SolvedSystem solve_symmetric(const Eigen::MatrixXd& a, const Eigen::MatrixXd& rhs) {
  const SymmetricIndefiniteFactorization factors(a);
  Eigen::MatrixXd x = factors.solve(rhs);
  // Refinement with the residual accumulated in extended precision; keep
  // the iterate with the smallest residual.
  const auto residual = [&](const Eigen::MatrixXd& v) {
    Eigen::MatrixXd r(rhs.rows(), rhs.cols());
    for (Eigen::Index k = 0; k < rhs.cols(); ++k)
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        long double acc = rhs(i, k);
        for (Eigen::Index j = 0; j < a.cols(); ++j)
          acc -= static_cast<long double>(a(i, j)) * static_cast<long double>(v(j, k));
        r(i, k) = static_cast<double>(acc);
      }
    return r;
  };
  Eigen::MatrixXd r = residual(x);
  double best = r.cwiseAbs().maxCoeff();
  for (int step = 0; step < kRefinementSteps && best > 0.0; ++step) {
    Eigen::MatrixXd next = x + factors.solve(r);
    Eigen::MatrixXd rn = residual(next);
    const double norm = rn.cwiseAbs().maxCoeff();
    if (!(norm < best)) break;
    x = std::move(next);
    r = std::move(rn);
    best = norm;
  }
  return {std::move(x), condition_estimate_1norm(a, factors)};
}

SolveDiagnostics diagnose(const TransformModel& model, const LandmarkSet& landmarks, double condition) {
  SolveDiagnostics diag;
  diag.condition = condition;
  diag.ill_conditioned = !(condition <= kIllConditioned);
  const int m = landmarks.dimension();
  Eigen::VectorXd x(m);
  Eigen::VectorXd y(m);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < landmarks.size(); ++j) {
    x = landmarks.sources().row(j).transpose();
    model.evaluate({x.data(), static_cast<std::size_t>(m)}, {y.data(), static_cast<std::size_t>(m)});
    worst = std::max(worst, (y - landmarks.targets().row(j).transpose()).cwiseAbs().maxCoeff());
  }
  diag.residual = worst;
  const double scale = std::max(1.0, landmarks.targets().cwiseAbs().maxCoeff());
  diag.tolerance = (condition < 1e10 ? 1e-10 : 1e-6) * scale;
  return diag;
}

}  // namespace

Transformation identity_transformation(int dimension) {
  if (dimension < 1 || dimension > 3) throw DomainError("dimension must be 1, 2 or 3");
  return Transformation(TransformKind::GlobalRadial, std::make_shared<IdentityModel>(dimension), Eigen::MatrixXd(),
                        Eigen::MatrixXd(), SolveDiagnostics{}, "identity");
}

std::vector<std::array<int, 3>> monomial_exponents(int m, int degree) {
  if (m < 1 || m > 3) throw DomainError("monomial dimension must be 1, 2 or 3");
  std::vector<std::array<int, 3>> out;
  for (int total = 0; total <= degree; ++total) {
    if (m == 1) {
      out.push_back({total, 0, 0});
    } else if (m == 2) {
      for (int e1 = total; e1 >= 0; --e1) out.push_back({e1, total - e1, 0});
    } else {
      for (int e1 = total; e1 >= 0; --e1)
        for (int e2 = total - e1; e2 >= 0; --e2) out.push_back({e1, e2, total - e1 - e2});
    }
  }
  return out;
}

Eigen::MatrixXd SaddleSystem::full_matrix() const {
  const Eigen::Index n = kernel_matrix.rows();
  const Eigen::Index u = polynomial_matrix.cols();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + u, n + u);
  a.topLeftCorner(n, n) = kernel_matrix;
  if (u > 0) {
    a.topRightCorner(n, u) = polynomial_matrix;
    a.bottomLeftCorner(u, n) = polynomial_matrix.transpose();
  }
  return a;
}

Eigen::MatrixXd SaddleSystem::full_rhs() const {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(rhs.rows() + polynomial_matrix.cols(), rhs.cols());
  b.topRows(rhs.rows()) = rhs;
  return b;
}

SaddleSystem assemble_system(const RadialKernelSpec& kernel, const LandmarkSet& landmarks) {
  const Eigen::MatrixXd& x = landmarks.sources();
  const Eigen::Index n = landmarks.size();
  SaddleSystem sys;
  sys.kernel_matrix.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sys.kernel_matrix(i, i) = eval_radial(kernel, 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::VectorXd xi = x.row(i).transpose();
      const double v = eval_radial(kernel, distance({xi.data(), static_cast<std::size_t>(xi.size())}, x, j));
      sys.kernel_matrix(i, j) = v;
      sys.kernel_matrix(j, i) = v;
    }
  }
  sys.tail_degree = polynomial_tail_degree(kernel);
  const auto exps = sys.tail_degree ? monomial_exponents(landmarks.dimension(), *sys.tail_degree)
                                    : std::vector<std::array<int, 3>>{};
  sys.polynomial_matrix.resize(n, static_cast<Eigen::Index>(exps.size()));
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd p = x.row(j).transpose();
    for (std::size_t k = 0; k < exps.size(); ++k)
      sys.polynomial_matrix(j, static_cast<Eigen::Index>(k)) =
          monomial(exps[k], {p.data(), static_cast<std::size_t>(p.size())});
  }
  sys.rhs = landmarks.targets();
  return sys;
}

Transformation solve_transform(const RadialKernelSpec& kernel, const LandmarkSet& landmarks) {
  const SaddleSystem sys = assemble_system(kernel, landmarks);
  const Eigen::Index n = landmarks.size();
  const Eigen::Index u = sys.tail_size();
  if (u > 0) {
    if (u >= n)
      throw SolvabilityError("polynomial tail of dimension " + std::to_string(u) + " needs more than " +
                             std::to_string(n) + " landmarks");
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.polynomial_matrix);
    const auto& s = svd.singularValues();
    if (!(s(u - 1) > 1e-12 * s(0)))
      throw SolvabilityError("source landmarks are not unisolvent for degree-" + std::to_string(*sys.tail_degree) +
                             " polynomials (e.g. all collinear)");
  }

  const SolvedSystem solved = solve_symmetric(sys.full_matrix(), sys.full_rhs());
  Eigen::MatrixXd coeffs = solved.solution.topRows(n);
  Eigen::MatrixXd tail = solved.solution.bottomRows(u);
  const auto exps = sys.tail_degree ? monomial_exponents(landmarks.dimension(), *sys.tail_degree)
                                    : std::vector<std::array<int, 3>>{};
  auto model = std::make_shared<GlobalRadialModel>(kernel, landmarks.sources(), coeffs, tail, exps);
  const SolveDiagnostics diag = diagnose(*model, landmarks, solved.condition);
  return Transformation(TransformKind::GlobalRadial, std::move(model), std::move(coeffs), std::move(tail), diag,
                        kernel.describe());
}

double eval_tensor_factor(const TensorKernel& kernel, double x) {
  return std::visit(
      [x](const auto& k) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, UnivariateKernelSpec>)
          return eval_univariate(k, x);
        else
          return k(x);
      },
      kernel);
}

double tensor_support_radius(const TensorKernel& kernel) {
  return std::visit(
      [](const auto& k) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, UnivariateKernelSpec>)
          return support_radius(k);
        else
          return support(k).hi;
      },
      kernel);
}

Eigen::MatrixXd assemble_tensor_matrix(const TensorKernel& kernel, const LandmarkSet& landmarks) {
  const Eigen::MatrixXd& x = landmarks.sources();
  const Eigen::Index n = landmarks.size();
  Eigen::MatrixXd mat(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      double prod = 1.0;
      for (Eigen::Index d = 0; d < x.cols(); ++d) prod *= eval_tensor_factor(kernel, x(i, d) - x(j, d));
      mat(i, j) = prod;
      mat(j, i) = prod;
    }
  }
  return mat;
}

Transformation build_tensor_transform(const TensorKernel& kernel, const LandmarkSet& landmarks) {
  std::string description;
  if (const auto* lob = std::get_if<LobachevskySpec>(&kernel)) {
    if (lob->order() % 2 != 0) throw ConfigError("Lobachevsky transformations need an even order n");
    description = "tensor " + lob->describe();
  } else {
    description = "tensor " + std::get<UnivariateKernelSpec>(kernel).describe();
  }
  const Eigen::MatrixXd mat = assemble_tensor_matrix(kernel, landmarks);
  const SolvedSystem solved = solve_symmetric(mat, landmarks.targets());
  auto model = std::make_shared<TensorModel>(kernel, landmarks.sources(), solved.solution);
  const SolveDiagnostics diag = diagnose(*model, landmarks, solved.condition);
  return Transformation(TransformKind::TensorProduct, std::move(model), solved.solution,
                        Eigen::MatrixXd(0, landmarks.dimension()), diag, description);
}

double condition_estimate(const SaddleSystem& system) {
  const Eigen::MatrixXd a = system.full_matrix();
  try {
    const SymmetricIndefiniteFactorization factors(a);
    return condition_estimate_1norm(a, factors);
  } catch (const SolvabilityError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace locreg
