#include "locreg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "locreg/bench.hpp"
#include "locreg/error.hpp"
#include "locreg/io.hpp"

namespace locreg {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write '" + path + "'");
  os << content;
  if (!os) throw Error("failed writing '" + path + "'");
}

// Writes to path if given, else to out.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-")
    out << content;
  else
    write_file(path, content);
}

CaseKind case_from(const std::string& name) {
  if (auto k = parse_case(name)) return *k;
  throw ConfigError("unknown case '" + name + "'");
}

struct Options {
  std::string case_name;
  std::string out;
  std::string landmarks;
  std::string config;
  std::string grid_out;
  std::string svg_out;
  std::string grid;
  std::string a;
  std::string b;
  std::string method;
  std::string reference;
  int rows = 40;
  int cols = 40;
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<int> count;
  std::optional<int> n_l;
  std::optional<int> n_w;
  bool object_region = false;
};

int run_gen_case(const Options& o, std::ostream& out) {
  const auto generated = gen_case(CaseSpec::defaults(case_from(o.case_name)));
  emit(o.out, write_landmarks(generated.landmarks), out);
  return 0;
}

int run_solve(const Options& o, std::ostream& out) {
  const LandmarkSet lm = parse_landmarks(read_file(o.landmarks));
  const Recipe recipe = parse_config(read_file(o.config));
  const Transformation f = build_transform(recipe, lm);
  const auto grid = EvaluationGrid::regular(o.rows, o.cols);
  const Eigen::MatrixXd deformed = f.evaluate_rows(grid.points);
  if (!o.grid_out.empty()) write_file(o.grid_out, write_grid_csv(grid, deformed));
  if (!o.svg_out.empty()) {
    EvaluationGrid d = grid;
    d.points = deformed;
    write_file(o.svg_out, render_grid_svg(grid, d, &lm));
  }
  out << "transform: " << f.description() << '\n'
      << "residual: " << format_double(f.residual()) << '\n'
      << "condition: " << format_double(f.condition_estimate()) << '\n';
  if (f.ill_conditioned()) out << "warning: system is ill-conditioned\n";
  return 0;
}

int run_sweep(const Options& o, std::ostream& out) {
  const auto method = parse_method(o.method);
  if (!method) throw ConfigError("unknown method '" + o.method + "'");
  const CaseKind kind = case_from(o.case_name);
  const Reference ref = o.reference == "truth" ? Reference::Truth : Reference::Identity;

  SweepOptions opts;
  opts.object_region_only = o.object_region;
  if (o.start || o.stop || o.count) {
    auto r = ParamRange::defaults(parameter_kind(*method));
    if (o.start) r.start = *o.start;
    if (o.stop) r.stop = *o.stop;
    if (o.count) r.count = *o.count;
    opts.range = r;
  }
  if (o.n_l || o.n_w) {
    auto s = default_shepard_sizes(kind);
    if (o.n_l) s.n_local = *o.n_l;
    if (o.n_w) s.n_weight = *o.n_w;
    opts.shepard = s;
  }
  const SweepReport report = sweep(*method, CaseSpec::defaults(kind), ref, opts);
  emit(o.out, write_sweep_report(report), out);
  return 0;
}

int run_rmse(const Options& o, std::ostream& out) {
  const GridData a = parse_grid_csv(read_file(o.a));
  const GridData b = parse_grid_csv(read_file(o.b));
  if (a.original.rows != b.original.rows || a.original.cols != b.original.cols)
    throw DomainError("grids differ in shape");
  out << format_double(rmse(a.deformed, b.deformed)) << '\n';
  return 0;
}

int run_render(const Options& o, std::ostream& out) {
  const GridData g = parse_grid_csv(read_file(o.grid));
  EvaluationGrid deformed = g.original;
  deformed.points = g.deformed;
  std::optional<LandmarkSet> lm;
  if (!o.landmarks.empty()) lm = parse_landmarks(read_file(o.landmarks));
  emit(o.out, render_grid_svg(g.original, deformed, lm ? &*lm : nullptr), out);
  return 0;
}

int run_real_life(const Options& o, std::ostream& out) {
  emit(o.out, write_real_life_report(real_life_run()), out);
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landmark-based registration toolkit", "regcli"};
  app.require_subcommand(1, 1);
  Options o;

  std::vector<std::string> case_names;
  for (auto k : kAllCases) case_names.emplace_back(case_name(k));

  auto* gen = app.add_subcommand("gen-case", "Write the landmarks of a synthetic case as CSV");
  gen->add_option("--case", o.case_name, "Case name")->required()->check(CLI::IsMember(case_names));
  gen->add_option("--out", o.out, "Output CSV (default stdout)");

  auto* solve = app.add_subcommand("solve", "Fit a transformation and evaluate it on a grid");
  solve->add_option("--landmarks", o.landmarks, "Landmark CSV")->required();
  solve->add_option("--config", o.config, "Kernel configuration file")->required();
  solve->add_option("--grid-out", o.grid_out, "Deformed grid CSV");
  solve->add_option("--svg-out", o.svg_out, "Deformed grid SVG");
  solve->add_option("--rows", o.rows, "Grid rows")->check(CLI::Range(2, 10000));
  solve->add_option("--cols", o.cols, "Grid columns")->check(CLI::Range(2, 10000));

  auto* sw = app.add_subcommand("sweep", "Parameter sweep of one method on one case");
  sw->add_option("--case", o.case_name, "Case name")->required()->check(CLI::IsMember(case_names));
  sw->add_option("--method", o.method, "Method label, e.g. G, TPS, Shep-TPS, W2-2D, L4")->required();
  sw->add_option("--reference", o.reference, "RMSE reference: identity or truth")
      ->required()
      ->check(CLI::IsMember({"identity", "truth"}));
  sw->add_option("--out", o.out, "Report CSV (default stdout)");
  sw->add_option("--start", o.start, "First parameter value");
  sw->add_option("--stop", o.stop, "Last parameter value");
  sw->add_option("--count", o.count, "Number of parameter values")->check(CLI::PositiveNumber);
  sw->add_option("--n-l", o.n_l, "Shepard nodal neighbourhood size");
  sw->add_option("--n-w", o.n_w, "Shepard weight neighbourhood size");
  sw->add_flag("--object-region", o.object_region, "Measure RMSE only inside the deforming object");

  auto* rm = app.add_subcommand("rmse", "RMSE between the deformed points of two grid CSVs");
  rm->add_option("--a", o.a, "First grid CSV")->required();
  rm->add_option("--b", o.b, "Second grid CSV")->required();

  auto* render = app.add_subcommand("render", "Render a grid CSV as SVG");
  render->add_option("--grid", o.grid, "Grid CSV")->required();
  render->add_option("--landmarks", o.landmarks, "Landmark CSV to overlay");
  render->add_option("--out", o.out, "Output SVG (default stdout)");

  auto* rl = app.add_subcommand("real-life", "Run the real-life landmark comparison");
  rl->add_option("--out", o.out, "Report CSV (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 1;
  }

  try {
    if (*gen) return run_gen_case(o, out);
    if (*solve) return run_solve(o, out);
    if (*sw) return run_sweep(o, out);
    if (*rm) return run_rmse(o, out);
    if (*render) return run_render(o, out);
    if (*rl) return run_real_life(o, out);
  } catch (const SolvabilityError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const SweepError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace locreg
