#include <doctest.h>

#include <cmath>

#include "locreg/bench.hpp"
#include "locreg/error.hpp"

using namespace locreg;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct Shift final : TransformModel {
  double dx, dy;
  Shift(double x, double y) : dx(x), dy(y) {}
  int dimension() const override { return 2; }
  void evaluate(std::span<const double> x, std::span<double> out) const override {
    out[0] = x[0] + dx;
    out[1] = x[1] + dy;
  }
};

Transformation shifted(double dx, double dy) {
  return Transformation(TransformKind::GlobalRadial, std::make_shared<Shift>(dx, dy), MatrixXd(), MatrixXd(), {},
                        "shift");
}

}  // namespace

TEST_CASE("RMSE examples") {
  const auto grid = EvaluationGrid::regular();
  REQUIRE(grid.size() == 1600);
  CHECK(rmse(identity_transformation(2), grid) == 0.0);
  CHECK(rmse(shifted(0.3, 0.4), grid) == doctest::Approx(0.5).epsilon(1e-14));
  const double d = 0.125;
  const PointMap ref = [d](const VectorXd& x) {
    VectorXd y = x;
    y(0) += d;
    return y;
  };
  CHECK(rmse(identity_transformation(2), grid, ref) == doctest::Approx(d).epsilon(1e-14));
  CHECK_THROWS_AS(rmse(MatrixXd::Zero(2, 2), MatrixXd::Zero(3, 2)), DomainError);
}

TEST_CASE("regular grid layout") {
  const auto g = EvaluationGrid::regular(3, 4);
  CHECK(g.rows == 3);
  CHECK(g.cols == 4);
  CHECK(g.points.row(0) == Eigen::RowVector2d(0, 0));
  CHECK(g.points.row(3) == Eigen::RowVector2d(1, 0));
  CHECK(g.points.row(4) == Eigen::RowVector2d(0, 0.5));
  CHECK(g.points.row(11) == Eigen::RowVector2d(1, 1));
}

TEST_CASE("generated cases") {
  const auto rl = gen_case(CaseSpec::defaults(CaseKind::RealLife));
  CHECK(rl.landmarks.size() == 18);
  CHECK(rl.landmarks.sources().row(0) == Eigen::RowVector2d(0.3135, 0.8232));
  CHECK(rl.landmarks.targets().row(0) == Eigen::RowVector2d(0.3467, 0.8525));
  CHECK_FALSE(rl.ground_truth.has_value());
  CHECK(rl.grid.restricted(rl.object_region).size() == 17);

  for (auto kind : kSquareCases) {
    const auto c = gen_case(CaseSpec::defaults(kind));
    const int expected = (kind == CaseKind::SquareShift32 || kind == CaseKind::SquareScale32) ? 36 : 68;
    CHECK(c.landmarks.size() == expected);
    int quasi = 0;
    for (Eigen::Index j = 0; j < c.landmarks.size(); ++j)
      if (c.landmarks.is_quasi(j)) {
        ++quasi;
        CHECK(c.landmarks.sources().row(j) == c.landmarks.targets().row(j));
      }
    CHECK(quasi == 4);
    REQUIRE(c.ground_truth.has_value());
    for (Eigen::Index j = 0; j < c.landmarks.size(); ++j) {
      const VectorXd s = c.landmarks.sources().row(j).transpose();
      CHECK(((*c.ground_truth)(s).transpose() - c.landmarks.targets().row(j)).cwiseAbs().maxCoeff() < 1e-15);
    }
  }

  for (auto kind : {CaseKind::CircleExpand, CaseKind::CircleContract}) {
    const auto c = gen_case(CaseSpec::defaults(kind));
    CHECK(c.landmarks.size() == 60);
    int quasi = 0;
    for (Eigen::Index j = 0; j < 60; ++j)
      if (c.landmarks.is_quasi(j)) {
        ++quasi;
        CHECK(c.landmarks.sources().row(j) == c.landmarks.targets().row(j));
      }
    CHECK(quasi == 40);
    for (Eigen::Index j = 0; j < 60; ++j) {
      const VectorXd s = c.landmarks.sources().row(j).transpose();
      CHECK(((*c.ground_truth)(s).transpose() - c.landmarks.targets().row(j)).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
}

TEST_CASE("case generation is deterministic") {
  for (auto kind : kAllCases) {
    const auto a = gen_case(CaseSpec::defaults(kind));
    const auto b = gen_case(CaseSpec::defaults(kind));
    CHECK(a.landmarks.sources() == b.landmarks.sources());
    CHECK(a.landmarks.targets() == b.landmarks.targets());
    CHECK(a.landmarks.quasi_flags() == b.landmarks.quasi_flags());
  }
}

TEST_CASE("geometry outside the unit square is rejected") {
  auto spec = CaseSpec::defaults(CaseKind::SquareShift32);
  spec.shift = Eigen::Vector2d(0.0, 0.6);
  CHECK_THROWS_AS(gen_case(spec), DomainError);
  auto circle = CaseSpec::defaults(CaseKind::CircleExpand);
  circle.outer_radius = 0.6;
  CHECK_THROWS_AS(gen_case(circle), DomainError);
}

TEST_CASE("names round-trip") {
  for (auto kind : kAllCases) CHECK(parse_case(case_name(kind)) == kind);
  for (auto m : kAllMethods) CHECK(parse_method(method_label(m)) == m);
  CHECK(parse_method("shep-tps") == Method::ShepTPS);
  CHECK_FALSE(parse_method("spline").has_value());
  CHECK_FALSE(parse_case("square").has_value());
}

TEST_CASE("parameter ranges") {
  for (auto kind : {ParamKind::Alpha, ParamKind::C}) {
    const auto v = ParamRange::defaults(kind).values();
    REQUIRE(v.size() == 10);
    const double step = (v.back() - v.front()) / 9.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      CHECK(v[i] > v[i - 1]);
      CHECK(std::abs(v[i] - v[i - 1] - step) <= 1e-15);
    }
  }
  CHECK(ParamRange::defaults(ParamKind::Alpha).values().front() == 0.2);
  CHECK(ParamRange::defaults(ParamKind::Alpha).values().back() == 2.0);
  CHECK(ParamRange::defaults(ParamKind::C).values().front() == 0.1);
  CHECK(ParamRange::defaults(ParamKind::C).values().back() == 1.0);
  CHECK_THROWS_AS((ParamRange{1.0, 0.5, 3}.values()), DomainError);
}

TEST_CASE("sweeps") {
  const auto tps = sweep(Method::TPS, CaseSpec::defaults(CaseKind::SquareShift32), Reference::Identity);
  CHECK(tps.rows.size() == 1);
  CHECK(tps.param_name == "-");
  REQUIRE(tps.published.has_value());
  CHECK(tps.published->rmse == 4.3460e-2);

  const auto l4 = sweep(Method::L4, CaseSpec::defaults(CaseKind::CircleExpand), Reference::Truth);
  REQUIRE(l4.rows.size() == 10);
  for (const auto& r : l4.rows) {
    REQUIRE(r.rmse.has_value());
    CHECK(std::isfinite(*r.rmse));
  }
  CHECK(l4.optimal_rmse == *l4.rows[l4.optimal_index].rmse);
  for (const auto& r : l4.rows) CHECK(*r.rmse >= l4.optimal_rmse);

  const auto g = sweep(Method::G, CaseSpec::defaults(CaseKind::SquareScale32), Reference::Identity);
  REQUIRE(g.published.has_value());
  CHECK(g.published->param == 2.0);
  CHECK(g.published->rmse == 1.8654e-1);

  CHECK_THROWS_AS(sweep(Method::TPS, CaseSpec::defaults(CaseKind::RealLife), Reference::Truth), ConfigError);

  SweepOptions impossible;
  impossible.shepard = ShepardSizes{100, 100};
  CHECK_THROWS_AS(sweep(Method::ShepG, CaseSpec::defaults(CaseKind::SquareShift32), Reference::Identity, impossible),
                  SweepError);
}

TEST_CASE("failed parameter values are kept as rows") {
  SweepOptions opts;
  // At alpha = 1e-9 every kernel entry rounds to one and the matrix is singular.
  opts.range = ParamRange{1e-9, 1.0, 2};
  const auto r = sweep(Method::G, CaseSpec::defaults(CaseKind::SquareShift32), Reference::Identity, opts);
  REQUIRE(r.rows.size() == 2);
  CHECK_FALSE(r.rows[0].rmse.has_value());
  CHECK_FALSE(r.rows[0].failure.empty());
  CHECK(r.rows[1].rmse.has_value());
  CHECK(r.optimal_index == 1);
}

TEST_CASE("fitted maps beat doing nothing inside the moving square") {
  for (auto kind : {CaseKind::SquareShift32, CaseKind::SquareShift64}) {
    const auto c = gen_case(CaseSpec::defaults(kind));
    const auto inside = c.grid.restricted(c.object_region);
    const auto f = build_transform(method_recipe(Method::TPS, std::nan(""), default_shepard_sizes(kind)), c.landmarks);
    CHECK(rmse(f, inside, c.ground_truth) < rmse(identity_transformation(2), inside, c.ground_truth));
  }
}

TEST_CASE("quasi-landmarks stay fixed for every method") {
  for (auto kind : kAllCases)
    for (auto m : kAllMethods) {
      const auto c = gen_case(CaseSpec::defaults(kind));
      const auto f = build_transform(method_recipe(m, reference_parameter(m, kind), default_shepard_sizes(kind)),
                                     c.landmarks);
      const double bound = f.ill_conditioned() ? f.residual() : f.diagnostics().tolerance;
      for (Eigen::Index j = 0; j < c.landmarks.size(); ++j) {
        if (!c.landmarks.is_quasi(j)) continue;
        const VectorXd q = c.landmarks.sources().row(j).transpose();
        INFO(method_label(m) << " on " << case_name(kind));
        CHECK((f.evaluate(q) - q).cwiseAbs().maxCoeff() <= bound);
      }
    }
}

TEST_CASE("real-life comparison") {
  const auto rows = real_life_run();
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].method == "G");
  CHECK(rows[0].param == 1.6);
  CHECK(rows[0].published_rmse == 1.0314e-1);
  CHECK(rows[1].method == "TPS");
  CHECK(rows[1].published_rmse == 1.9685e-2);
  for (const auto& r : rows) CHECK(std::isfinite(r.rmse));
}
