#include "locreg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "locreg/error.hpp"

namespace locreg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(i) for i in [0, count) on up to hardware_concurrency threads.
// Results must be written to per-index slots by fn.
template <typename Fn>
void parallel_for(std::size_t count, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

bool in_unit_square(const Eigen::Vector2d& p) {
  return p.x() >= 0.0 && p.x() <= 1.0 && p.y() >= 0.0 && p.y() <= 1.0;
}

std::vector<Eigen::Vector2d> square_perimeter(const Eigen::Vector2d& center, double side, int count) {
  const int per_side = count / 4;
  const double h = 0.5 * side;
  const std::array<Eigen::Vector2d, 4> corners = {center + Eigen::Vector2d(-h, -h), center + Eigen::Vector2d(h, -h),
                                                  center + Eigen::Vector2d(h, h), center + Eigen::Vector2d(-h, h)};
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int q = 0; q < 4; ++q) {
    const Eigen::Vector2d& from = corners[static_cast<std::size_t>(q)];
    const Eigen::Vector2d& to = corners[static_cast<std::size_t>((q + 1) % 4)];
    for (int i = 0; i < per_side; ++i) pts.push_back(from + (to - from) * (static_cast<double>(i) / per_side));
  }
  return pts;
}

std::vector<Eigen::Vector2d> circle_points(const Eigen::Vector2d& center, double radius, int count) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = 2.0 * std::numbers::pi * i / count;
    pts.push_back(center + radius * Eigen::Vector2d(std::cos(t), std::sin(t)));
  }
  return pts;
}

// Equispaced points on the boundary of [0,1]², counter-clockwise from the origin.
std::vector<Eigen::Vector2d> unit_square_boundary(int count) {
  return square_perimeter(Eigen::Vector2d(0.5, 0.5), 1.0, count);
}

struct PairBuilder {
  std::vector<Eigen::Vector2d> src, dst;
  std::vector<bool> quasi;

  void add(const Eigen::Vector2d& s, const Eigen::Vector2d& t, bool q) {
    if (!in_unit_square(s) || !in_unit_square(t)) throw DomainError("case geometry places a landmark outside [0,1]^2");
    src.push_back(s);
    dst.push_back(t);
    quasi.push_back(q);
  }

  LandmarkSet build() const {
    const auto n = static_cast<Eigen::Index>(src.size());
    Eigen::MatrixXd s(n, 2), t(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      s.row(i) = src[static_cast<std::size_t>(i)].transpose();
      t.row(i) = dst[static_cast<std::size_t>(i)].transpose();
    }
    return LandmarkSet(std::move(s), std::move(t), quasi);
  }
};

double cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Andrew's monotone chain; counter-clockwise, no repeated endpoint.
std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Region hull_region(std::vector<Eigen::Vector2d> hull) {
  return [hull = std::move(hull)](const Eigen::Vector2d& p) {
    for (std::size_t i = 0; i < hull.size(); ++i)
      if (cross(hull[i], hull[(i + 1) % hull.size()], p) < -1e-12) return false;
    return true;
  };
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

EvaluationGrid EvaluationGrid::regular(int rows, int cols) {
  if (rows < 2 || cols < 2) throw DomainError("a regular grid needs at least 2 rows and 2 columns");
  EvaluationGrid g;
  g.rows = rows;
  g.cols = cols;
  g.points.resize(static_cast<Eigen::Index>(rows) * cols, 2);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const Eigen::Index i = static_cast<Eigen::Index>(r) * cols + c;
      g.points(i, 0) = static_cast<double>(c) / (cols - 1);
      g.points(i, 1) = static_cast<double>(r) / (rows - 1);
    }
  return g;
}

EvaluationGrid EvaluationGrid::restricted(const std::function<bool(const Eigen::Vector2d&)>& keep) const {
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    if (keep(points.row(i).transpose())) kept.push_back(i);
  EvaluationGrid g;
  g.rows = static_cast<int>(kept.size());
  g.cols = 1;
  g.points.resize(static_cast<Eigen::Index>(kept.size()), 2);
  for (std::size_t i = 0; i < kept.size(); ++i) g.points.row(static_cast<Eigen::Index>(i)) = points.row(kept[i]);
  return g;
}

std::string_view case_name(CaseKind kind) {
  switch (kind) {
    case CaseKind::SquareShift32: return "square-shift-32";
    case CaseKind::SquareScale32: return "square-scale-32";
    case CaseKind::SquareShift64: return "square-shift-64";
    case CaseKind::SquareScale64: return "square-scale-64";
    case CaseKind::CircleExpand: return "circle-expand";
    case CaseKind::CircleContract: return "circle-contract";
    case CaseKind::RealLife: return "real-life";
  }
  return "unknown";
}

std::optional<CaseKind> parse_case(std::string_view name) {
  const std::string key = lower(name);
  for (const CaseKind k : kAllCases)
    if (case_name(k) == key) return k;
  return std::nullopt;
}

CaseSpec CaseSpec::defaults(CaseKind kind) {
  CaseSpec s;
  s.kind = kind;
  switch (kind) {
    case CaseKind::SquareScale32:
    case CaseKind::SquareScale64:
      s.square_side = 0.2;
      break;
    case CaseKind::CircleContract:
      s.inner_radius_target = 0.075;
      break;
    default:
      break;
  }
  return s;
}

const std::array<std::array<double, 4>, 6>& real_life_landmarks() {
  static const std::array<std::array<double, 4>, 6> table = {{
      {0.3135, 0.8232, 0.3467, 0.8525},
      {0.3330, 0.7080, 0.3584, 0.7334},
      {0.3643, 0.5967, 0.3877, 0.6162},
      {0.4131, 0.5068, 0.4229, 0.5068},
      {0.4580, 0.4053, 0.4600, 0.3916},
      {0.5146, 0.3057, 0.5205, 0.2783},
  }};
  return table;
}

GeneratedCase gen_case(const CaseSpec& spec) {
  PairBuilder pairs;
  std::optional<PointMap> truth;
  Region region;
  const std::array<Eigen::Vector2d, 4> unit_corners = {Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0),
                                                       Eigen::Vector2d(1, 1), Eigen::Vector2d(0, 1)};

  switch (spec.kind) {
    case CaseKind::SquareShift32:
    case CaseKind::SquareShift64:
    case CaseKind::SquareScale32:
    case CaseKind::SquareScale64: {
      if (!(spec.square_side > 0.0)) throw DomainError("square side must be positive");
      const bool shift = spec.kind == CaseKind::SquareShift32 || spec.kind == CaseKind::SquareShift64;
      const int count = (spec.kind == CaseKind::SquareShift32 || spec.kind == CaseKind::SquareScale32) ? 32 : 64;
      if (!shift && !(spec.scale_factor > 0.0)) throw DomainError("scale factor must be positive");
      const Eigen::Vector2d center = spec.square_center;
      const Eigen::Vector2d offset = spec.shift;
      const double factor = spec.scale_factor;
      const auto move = [=](const Eigen::Vector2d& p) -> Eigen::Vector2d {
        return shift ? Eigen::Vector2d(p + offset) : Eigen::Vector2d(center + factor * (p - center));
      };
      for (const auto& p : square_perimeter(center, spec.square_side, count)) pairs.add(p, move(p), false);
      for (const auto& q : unit_corners) pairs.add(q, q, true);
      const double half = 0.5 * spec.square_side;
      region = [center, half](const Eigen::Vector2d& p) { return ((p - center).cwiseAbs().array() <= half).all(); };
      truth = [region, move](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        const Eigen::Vector2d p(x(0), x(1));
        return region(p) ? Eigen::VectorXd(move(p)) : x;
      };
      break;
    }
    case CaseKind::CircleExpand:
    case CaseKind::CircleContract: {
      const double r_in = spec.inner_radius;
      const double r_to = spec.inner_radius_target;
      const double r_out = spec.outer_radius;
      if (!(r_in > 0.0 && r_to > 0.0 && r_in < r_out && r_to < r_out))
        throw DomainError("circle radii must satisfy 0 < inner, inner target < outer");
      const Eigen::Vector2d center = spec.circle_center;
      for (const auto& p : circle_points(center, r_in, 20))
        pairs.add(p, center + (r_to / r_in) * (p - center), false);
      for (const auto& p : circle_points(center, r_out, 40)) pairs.add(p, p, true);
      region = [center, r_in](const Eigen::Vector2d& p) { return (p - center).norm() <= r_in; };
      truth = [center, r_in, r_to, r_out](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        const Eigen::Vector2d d = Eigen::Vector2d(x(0), x(1)) - center;
        const double r = d.norm();
        if (r == 0.0 || r >= r_out) return x;
        const double mapped = r <= r_in ? r * (r_to / r_in) : r_to + (r - r_in) * (r_out - r_to) / (r_out - r_in);
        return Eigen::VectorXd(center + d * (mapped / r));
      };
      break;
    }
    case CaseKind::RealLife: {
      std::vector<Eigen::Vector2d> hull_pts;
      for (const auto& row : real_life_landmarks()) {
        pairs.add(Eigen::Vector2d(row[0], row[1]), Eigen::Vector2d(row[2], row[3]), false);
        hull_pts.emplace_back(row[0], row[1]);
      }
      for (const auto& q : unit_square_boundary(12)) pairs.add(q, q, true);
      region = hull_region(convex_hull(std::move(hull_pts)));
      break;
    }
  }
  return GeneratedCase{spec, pairs.build(), EvaluationGrid::regular(), std::move(truth), std::move(region)};
}

double rmse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("RMSE operands differ in shape");
  if (a.rows() == 0) throw DomainError("RMSE needs at least one point");
  return std::sqrt((a - b).rowwise().squaredNorm().sum() / static_cast<double>(a.rows()));
}

double rmse(const Transformation& f, const EvaluationGrid& grid, const std::optional<PointMap>& reference) {
  if (grid.size() == 0) throw DomainError("RMSE needs a nonempty grid");
  const Eigen::MatrixXd mapped = f.evaluate_rows(grid.points);
  if (!reference) return rmse(grid.points, mapped);
  Eigen::MatrixXd ref(grid.points.rows(), grid.points.cols());
  for (Eigen::Index i = 0; i < grid.size(); ++i) ref.row(i) = (*reference)(grid.points.row(i).transpose()).transpose();
  return rmse(ref, mapped);
}

std::string_view method_label(Method method) {
  switch (method) {
    case Method::G: return "G";
    case Method::TPS: return "TPS";
    case Method::ShepG: return "Shep-G";
    case Method::ShepTPS: return "Shep-TPS";
    case Method::W2_2D: return "W2-2D";
    case Method::W4_2D: return "W4-2D";
    case Method::W2_1Dx1D: return "W2-1Dx1D";
    case Method::W4_1Dx1D: return "W4-1Dx1D";
    case Method::L4: return "L4";
    case Method::L6: return "L6";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  const std::string key = lower(name);
  for (const Method m : kAllMethods)
    if (lower(method_label(m)) == key) return m;
  return std::nullopt;
}

ParamKind parameter_kind(Method method) {
  switch (method) {
    case Method::TPS:
    case Method::ShepTPS:
      return ParamKind::None;
    case Method::G:
    case Method::ShepG:
    case Method::L4:
    case Method::L6:
      return ParamKind::Alpha;
    default:
      return ParamKind::C;
  }
}

std::string_view parameter_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::None: return "-";
    case ParamKind::Alpha: return "alpha";
    case ParamKind::C: return "c";
  }
  return "-";
}

Transformation build_transform(const Recipe& recipe, const LandmarkSet& landmarks) {
  return std::visit(
      [&](const auto& r) -> Transformation {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GlobalRecipe>)
          return solve_transform(r.kernel, landmarks);
        else if constexpr (std::is_same_v<T, TensorRecipe>)
          return build_tensor_transform(r.kernel, landmarks);
        else
          return build_shepard_transform(landmarks, r.config);
      },
      recipe);
}

ShepardSizes default_shepard_sizes(CaseKind kind) {
  switch (kind) {
    case CaseKind::CircleExpand: return {16, 60};
    case CaseKind::CircleContract: return {5, 60};
    case CaseKind::RealLife: return {10, 18};
    default: return {25, 25};
  }
}

Recipe method_recipe(Method method, double param, ShepardSizes sizes) {
  const auto shepard = [&](RadialKernelSpec nodal) {
    ShepardConfig cfg;
    cfg.n_local = sizes.n_local;
    cfg.n_weight = sizes.n_weight;
    cfg.nodal_kernel = nodal;
    return Recipe(ShepardRecipe{cfg});
  };
  switch (method) {
    case Method::G: return GlobalRecipe{RadialKernelSpec::gaussian(param)};
    case Method::TPS: return GlobalRecipe{RadialKernelSpec::thin_plate_spline()};
    case Method::ShepG: return shepard(RadialKernelSpec::gaussian(param));
    case Method::ShepTPS: return shepard(RadialKernelSpec::thin_plate_spline());
    case Method::W2_2D: return GlobalRecipe{RadialKernelSpec::wendland(2, 1, param)};
    case Method::W4_2D: return GlobalRecipe{RadialKernelSpec::wendland(2, 2, param)};
    case Method::W2_1Dx1D: return TensorRecipe{UnivariateKernelSpec::wendland(1, param)};
    case Method::W4_1Dx1D: return TensorRecipe{UnivariateKernelSpec::wendland(2, param)};
    case Method::L4: return TensorRecipe{LobachevskySpec::by_alpha(4, param)};
    case Method::L6: return TensorRecipe{LobachevskySpec::by_alpha(6, param)};
  }
  throw ConfigError("unknown method");
}

namespace {

struct TableEntry {
  Method method;
  CaseKind kind;
  double param;
  double rmse;
};

const std::vector<TableEntry>& published_table() {
  using M = Method;
  using C = CaseKind;
  static const std::vector<TableEntry> table = {
      {M::G, C::SquareShift32, 0.2, 6.0461e-2},        {M::G, C::SquareScale32, 2.0, 1.8654e-1},
      {M::G, C::SquareShift64, 0.4, 1.3639e-1},        {M::G, C::SquareScale64, 2.0, 2.0206e-1},
      {M::TPS, C::SquareShift32, kNaN, 4.3460e-2},     {M::TPS, C::SquareScale32, kNaN, 2.0929e-1},
      {M::TPS, C::SquareShift64, kNaN, 1.0310e-1},     {M::TPS, C::SquareScale64, kNaN, 2.0929e-1},
      {M::ShepG, C::SquareShift32, 1.6, 5.9351e-2},    {M::ShepG, C::SquareScale32, 2.0, 1.7087e-1},
      {M::ShepG, C::SquareShift64, 2.0, 1.2891e-1},    {M::ShepG, C::SquareScale64, 2.0, 1.6464e-1},
      {M::ShepTPS, C::SquareShift32, kNaN, 6.4435e-2}, {M::ShepTPS, C::SquareScale32, kNaN, 2.0929e-1},
      {M::ShepTPS, C::SquareShift64, kNaN, 1.3275e-1}, {M::ShepTPS, C::SquareScale64, kNaN, 2.0929e-1},
      {M::W2_2D, C::SquareShift32, 0.1, 4.8120e-2},    {M::W2_2D, C::SquareScale32, 0.3, 1.0033e-1},
      {M::W2_2D, C::SquareShift64, 0.1, 1.0911e-1},    {M::W2_2D, C::SquareScale64, 0.5, 1.2671e-1},
      {M::W4_2D, C::SquareShift32, 0.2, 5.3417e-2},    {M::W4_2D, C::SquareScale32, 0.4, 1.1990e-1},
      {M::W4_2D, C::SquareShift64, 0.7, 1.1349e-1},    {M::W4_2D, C::SquareScale64, 0.6, 1.4067e-1},
      {M::W2_1Dx1D, C::SquareShift32, 0.1, 4.7013e-2}, {M::W2_1Dx1D, C::SquareScale32, 0.4, 1.1098e-1},
      {M::W2_1Dx1D, C::SquareShift64, 0.2, 1.0310e-1}, {M::W2_1Dx1D, C::SquareScale64, 0.6, 1.3089e-1},
      {M::W4_1Dx1D, C::SquareShift32, 0.1, 5.0482e-2}, {M::W4_1Dx1D, C::SquareScale32, 0.5, 1.2341e-1},
      {M::W4_1Dx1D, C::SquareShift64, 0.1, 1.0820e-1}, {M::W4_1Dx1D, C::SquareScale64, 0.7, 1.4178e-1},
      {M::L4, C::SquareShift32, 0.2, 4.6950e-2},       {M::L4, C::SquareScale32, 1.4, 1.2368e-1},
      {M::L4, C::SquareShift64, 0.6, 1.0314e-1},       {M::L4, C::SquareScale64, 2.0, 1.3462e-1},
      {M::L6, C::SquareShift32, 0.4, 5.0566e-2},       {M::L6, C::SquareScale32, 2.0, 1.2374e-1},
      {M::L6, C::SquareShift64, 0.2, 1.0825e-1},       {M::L6, C::SquareScale64, 2.0, 1.6880e-1},
      // Circle experiments.
      {M::TPS, C::CircleExpand, kNaN, 6.0964e-2},      {M::ShepTPS, C::CircleExpand, kNaN, 4.5853e-2},
      {M::W2_2D, C::CircleExpand, 0.1, 9.1226e-2},     {M::W2_1Dx1D, C::CircleExpand, 0.7, 1.5294e-1},
      {M::TPS, C::CircleContract, kNaN, 7.7354e-2},    {M::ShepTPS, C::CircleContract, kNaN, 3.5643e-2},
      {M::W2_2D, C::CircleContract, 0.4, 6.4178e-2},   {M::W2_1Dx1D, C::CircleContract, 0.8, 7.8952e-2},
      // Real-life comparison.
      {M::G, C::RealLife, 1.6, 1.0314e-1},             {M::TPS, C::RealLife, kNaN, 1.9685e-2},
      {M::W2_2D, C::RealLife, 0.1, 1.9526e-2},         {M::W4_2D, C::RealLife, 0.1, 2.5981e-2},
      {M::W2_1Dx1D, C::RealLife, 0.1, 2.7157e-2},      {M::L4, C::RealLife, 1.6, 1.9843e-2},
  };
  return table;
}

}  // namespace

std::optional<PublishedValue> published_result(Method method, CaseKind kind) {
  for (const auto& e : published_table())
    if (e.method == method && e.kind == kind) return PublishedValue{e.param, e.rmse};
  return std::nullopt;
}

double reference_parameter(Method method, CaseKind kind) {
  const ParamKind pk = parameter_kind(method);
  if (pk == ParamKind::None) return kNaN;
  if (const auto pub = published_result(method, kind)) return pub->param;
  return pk == ParamKind::Alpha ? 1.6 : 0.1;
}

std::vector<double> ParamRange::values() const {
  if (count < 2) throw DomainError("a parameter range needs at least two values");
  if (!(stop > start)) throw DomainError("a parameter range needs stop > start");
  std::vector<double> v(static_cast<std::size_t>(count));
  const int last = count - 1;
  for (int i = 0; i <= last; ++i)
    v[static_cast<std::size_t>(i)] = (start * (last - i) + stop * i) / last;
  return v;
}

ParamRange ParamRange::defaults(ParamKind kind) {
  if (kind == ParamKind::C) return {0.1, 1.0, 10};
  return {0.2, 2.0, 10};
}

SweepReport sweep(Method method, const CaseSpec& spec, Reference reference, const SweepOptions& options) {
  return sweep(method, gen_case(spec), reference, options);
}

SweepReport sweep(Method method, const GeneratedCase& generated, Reference reference, const SweepOptions& options) {
  const ParamKind pk = parameter_kind(method);
  if (reference == Reference::Truth && !generated.ground_truth)
    throw ConfigError(std::string("case ") + std::string(case_name(generated.spec.kind)) + " has no ground truth");

  std::vector<double> params;
  if (pk == ParamKind::None)
    params.push_back(kNaN);
  else
    params = options.range.value_or(ParamRange::defaults(pk)).values();

  const ShepardSizes sizes = options.shepard.value_or(default_shepard_sizes(generated.spec.kind));
  const EvaluationGrid grid =
      options.object_region_only ? generated.grid.restricted(generated.object_region) : generated.grid;
  const std::optional<PointMap> ref = reference == Reference::Truth ? generated.ground_truth : std::nullopt;

  std::vector<SweepRow> rows(params.size());
  parallel_for(params.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.param = params[i];
    try {
      const Transformation f = build_transform(method_recipe(method, params[i], sizes), generated.landmarks);
      row.condition = f.condition_estimate();
      row.residual = f.residual();
      const double value = rmse(f, grid, ref);
      if (std::isfinite(value))
        row.rmse = value;
      else
        row.failure = "non-finite RMSE";
    } catch (const Error& e) {
      row.failure = e.what();
    }
  });

  SweepReport report;
  report.method = std::string(method_label(method));
  report.case_name = std::string(case_name(generated.spec.kind));
  report.param_name = std::string(parameter_name(pk));
  report.reference = reference;
  report.published = published_result(method, generated.spec.kind);
  bool found = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].rmse) continue;
    if (!found || *rows[i].rmse < report.optimal_rmse) {
      found = true;
      report.optimal_index = i;
      report.optimal_rmse = *rows[i].rmse;
      report.optimal_param = rows[i].param;
    }
  }
  report.rows = std::move(rows);
  if (!found) throw SweepError("every parameter value failed for " + report.method + " on " + report.case_name);
  return report;
}

std::vector<MethodChoice> default_real_life_methods() {
  return {{Method::G, 1.6},     {Method::TPS, kNaN},      {Method::W2_2D, 0.1},
          {Method::W4_2D, 0.1}, {Method::W2_1Dx1D, 0.1}, {Method::L4, 1.6}};
}

std::vector<RealLifeRow> real_life_run(std::span<const MethodChoice> methods) {
  const GeneratedCase rl = gen_case(CaseSpec::defaults(CaseKind::RealLife));
  const EvaluationGrid subset = rl.grid.restricted(rl.object_region);
  std::vector<RealLifeRow> out;
  for (const auto& choice : methods) {
    const Transformation f =
        build_transform(method_recipe(choice.method, choice.param, default_shepard_sizes(CaseKind::RealLife)),
                        rl.landmarks);
    RealLifeRow row;
    row.method = std::string(method_label(choice.method));
    row.param_name = std::string(parameter_name(parameter_kind(choice.method)));
    row.param = parameter_kind(choice.method) == ParamKind::None ? kNaN : choice.param;
    row.rmse = rmse(f, subset);
    row.residual = f.residual();
    row.condition = f.condition_estimate();
    if (const auto pub = published_result(choice.method, CaseKind::RealLife)) row.published_rmse = pub->rmse;
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<RealLifeRow> real_life_run() {
  const auto methods = default_real_life_methods();
  return real_life_run(methods);
}

}  // namespace locreg
