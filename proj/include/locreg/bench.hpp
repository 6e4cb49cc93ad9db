#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "locreg/landmarks.hpp"
#include "locreg/shepard.hpp"
#include "locreg/transform.hpp"

namespace locreg {

/// Points on which RMSE and renderings are computed, stored row-major with
/// y as the slow index.
struct EvaluationGrid {
  Eigen::MatrixXd points;  // size() x 2
  int rows = 0;
  int cols = 0;

  /// rows x cols corner points spanning [0,1]² inclusive.
  static EvaluationGrid regular(int rows = 40, int cols = 40);

  /// The points satisfying keep, as a rows = count, cols = 1 grid.
  EvaluationGrid restricted(const std::function<bool(const Eigen::Vector2d&)>& keep) const;

  Eigen::Index size() const noexcept { return points.rows(); }
};

enum class CaseKind { SquareShift32, SquareScale32, SquareShift64, SquareScale64, CircleExpand, CircleContract, RealLife };

inline constexpr std::array<CaseKind, 7> kAllCases = {
    CaseKind::SquareShift32, CaseKind::SquareScale32, CaseKind::SquareShift64, CaseKind::SquareScale64,
    CaseKind::CircleExpand,  CaseKind::CircleContract, CaseKind::RealLife};
inline constexpr std::array<CaseKind, 4> kSquareCases = {CaseKind::SquareShift32, CaseKind::SquareScale32,
                                                         CaseKind::SquareShift64, CaseKind::SquareScale64};

std::string_view case_name(CaseKind kind);
std::optional<CaseKind> parse_case(std::string_view name);

/// Geometry of a synthetic test case. Only the fields relevant to kind are
/// read. The defaults are chosen for this library; the original landmark
/// coordinates of the square and circle experiments were never published.
struct CaseSpec {
  CaseKind kind = CaseKind::SquareShift32;
  Eigen::Vector2d square_center{0.5, 0.4};
  double square_side = 0.25;
  Eigen::Vector2d shift{0.0, 0.2};
  double scale_factor = 2.0;
  Eigen::Vector2d circle_center{0.5, 0.5};
  double inner_radius = 0.15;
  double inner_radius_target = 0.30;
  double outer_radius = 0.48;

  static CaseSpec defaults(CaseKind kind);
};

using PointMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using Region = std::function<bool(const Eigen::Vector2d&)>;

struct GeneratedCase {
  CaseSpec spec;
  LandmarkSet landmarks;
  EvaluationGrid grid;
  /// Known deformation: the rigid shift/scale inside the source square, the
  /// radial map for circles (linear in the radius across the ring), identity
  /// elsewhere. Absent for the real-life case.
  std::optional<PointMap> ground_truth;
  /// The deforming object: source square, inner disk, or the convex hull of
  /// the real-life landmarks.
  Region object_region;
};

/// Deterministic landmark generation. Throws DomainError when the geometry
/// places any landmark outside [0,1]².
GeneratedCase gen_case(const CaseSpec& spec);

/// Source/target pairs of the real-life case.
const std::array<std::array<double, 4>, 6>& real_life_landmarks();

/// sqrt(mean ||a_i - b_i||²) over matching rows.
double rmse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// RMSE between reference(x) (identity when absent) and F(x) over the grid.
double rmse(const Transformation& f, const EvaluationGrid& grid, const std::optional<PointMap>& reference = std::nullopt);

// ---------------------------------------------------------------------------
// The ten compared methods.

enum class Method { G, TPS, ShepG, ShepTPS, W2_2D, W4_2D, W2_1Dx1D, W4_1Dx1D, L4, L6 };

inline constexpr std::array<Method, 10> kAllMethods = {Method::G,     Method::TPS,      Method::ShepG,
                                                       Method::ShepTPS, Method::W2_2D, Method::W4_2D,
                                                       Method::W2_1Dx1D, Method::W4_1Dx1D, Method::L4,
                                                       Method::L6};

enum class ParamKind { None, Alpha, C };

std::string_view method_label(Method method);
/// Case-insensitive; accepts the labels ("Shep-TPS", "W2-1Dx1D", ...).
std::optional<Method> parse_method(std::string_view name);
ParamKind parameter_kind(Method method);
std::string_view parameter_name(ParamKind kind);

struct GlobalRecipe {
  RadialKernelSpec kernel;
};
struct TensorRecipe {
  TensorKernel kernel;
};
struct ShepardRecipe {
  ShepardConfig config;
};
/// Everything needed to fit a transformation to a landmark set.
using Recipe = std::variant<GlobalRecipe, TensorRecipe, ShepardRecipe>;

Transformation build_transform(const Recipe& recipe, const LandmarkSet& landmarks);

struct ShepardSizes {
  int n_local;
  int n_weight;
};

/// 25/25 for squares, 16/60 and 5/60 for circle expansion/contraction,
/// 10/18 for the real-life case.
ShepardSizes default_shepard_sizes(CaseKind kind);

/// Recipe of a named method at shape parameter value param (ignored for
/// parameter-free methods).
Recipe method_recipe(Method method, double param, ShepardSizes sizes);

/// Published optimal parameter for a method and case where one exists, and
/// the real-life values (α = 1.6, c = 0.1) otherwise. NaN for TPS/Shep-TPS.
double reference_parameter(Method method, CaseKind kind);

struct PublishedValue {
  double param;  // NaN for parameter-free methods
  double rmse;
};

/// Published RMSE for comparison display; nullopt when none was reported.
std::optional<PublishedValue> published_result(Method method, CaseKind kind);

// ---------------------------------------------------------------------------
// Sweeps.

struct ParamRange {
  double start;
  double stop;
  int count;

  /// Equispaced values start + i (stop - start) / (count - 1).
  std::vector<double> values() const;
  /// α ∈ [0.2, 2.0] or c ∈ [0.1, 1.0], ten values each.
  static ParamRange defaults(ParamKind kind);
};

enum class Reference { Identity, Truth };

struct SweepRow {
  double param;  // NaN for parameter-free methods
  std::optional<double> rmse;
  std::optional<double> condition;
  std::optional<double> residual;
  std::string failure;
};

struct SweepReport {
  std::string method;
  std::string case_name;
  std::string param_name;
  Reference reference = Reference::Identity;
  std::vector<SweepRow> rows;
  std::size_t optimal_index = 0;
  double optimal_param = 0.0;
  double optimal_rmse = 0.0;
  std::optional<PublishedValue> published;
};

struct SweepOptions {
  std::optional<ParamRange> range;
  std::optional<ShepardSizes> shepard;
  /// Restrict the RMSE to the grid points inside the case's object region.
  bool object_region_only = false;
};

/// Fits the method at every parameter value, records RMSE and condition,
/// and picks the argmin (ties go to the smallest parameter). Failed values
/// are kept as rows without RMSE; throws SweepError if all fail.
SweepReport sweep(Method method, const CaseSpec& spec, Reference reference, const SweepOptions& options = {});
SweepReport sweep(Method method, const GeneratedCase& generated, Reference reference, const SweepOptions& options = {});

// ---------------------------------------------------------------------------
// Real-life comparison.

struct MethodChoice {
  Method method;
  double param;
};

/// G (α=1.6), TPS, W2-2D, W4-2D, W2-1Dx1D (c=0.1), L4 (α=1.6).
std::vector<MethodChoice> default_real_life_methods();

struct RealLifeRow {
  std::string method;
  std::string param_name;
  double param;
  double rmse;
  double residual;
  double condition;
  std::optional<double> published_rmse;
};

/// Fits each method to the real-life landmarks and evaluates the identity-
/// reference RMSE on the grid points inside the convex hull of the six
/// true landmarks.
std::vector<RealLifeRow> real_life_run(std::span<const MethodChoice> methods);
std::vector<RealLifeRow> real_life_run();

}  // namespace locreg
