#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "locreg/bench.hpp"
#include "locreg/landmarks.hpp"

namespace locreg {

/// Shortest form of %.17g; lossless for doubles and locale independent.
std::string format_double(double v);
/// Fixed-point with the given number of decimals.
std::string format_fixed(double v, int decimals);
/// Parses a whole field as a finite double; throws ParseError otherwise.
double parse_double(std::string_view field, int line);
int parse_int(std::string_view field, int line);

/// Landmark CSV with header `sx,sy,tx,ty,quasi`, one pair per row.
LandmarkSet parse_landmarks(std::string_view text);
std::string write_landmarks(const LandmarkSet& landmarks);

/// Flat `key = value` configuration describing one transformation.
///
///   kernel = gaussian | tps | multiquadric | wendland1d | wendland2d |
///            wendland3d | wendland1dx1d | lobachevsky
///   method = global | tensor | shepard   (inferred from kernel if absent)
///
/// Parameters: alpha (gaussian, lobachevsky), gamma + mu (multiquadric),
/// h + c (wendland*), n + alpha|a (lobachevsky). Shepard takes
/// nodal_kernel = tps|gaussian, n_l, n_w, and rho = auto|<number>.
/// Unknown, repeated, or unused keys are errors.
Recipe parse_config(std::string_view text);

struct GridData {
  EvaluationGrid original;
  Eigen::MatrixXd deformed;
};

/// Grid CSV `x,y,fx,fy`, one row per grid point in grid order.
std::string write_grid_csv(const EvaluationGrid& grid, const Eigen::MatrixXd& deformed);
/// Infers rows/cols from the run of equal y values at the top of the file.
GridData parse_grid_csv(std::string_view text);

/// SVG 1.1 drawing of the deformed grid, one polyline per row and per
/// column, in a 1000 x 1000 viewBox. Sources are marked with circles,
/// targets with crosses.
std::string render_grid_svg(const EvaluationGrid& original, const EvaluationGrid& deformed,
                            const LandmarkSet* landmarks = nullptr);

std::string write_sweep_report(const SweepReport& report);
std::string write_real_life_report(const std::vector<RealLifeRow>& rows);

}  // namespace locreg
