#include "locreg/io.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "locreg/error.hpp"

namespace locreg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  std::string out(buf, res.ptr);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

double parse_double(std::string_view field, int line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw ParseError("expected a number, got '" + std::string(field) + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite number '" + std::string(field) + "'", line);
  return v;
}

int parse_int(std::string_view field, int line) {
  field = trim(field);
  int v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw ParseError("expected an integer, got '" + std::string(field) + "'", line);
  return v;
}

LandmarkSet parse_landmarks(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw ParseError("empty landmark file", 0);
  if (trim(lines[i]) != "sx,sy,tx,ty,quasi")
    throw ParseError("expected header 'sx,sy,tx,ty,quasi'", static_cast<int>(i) + 1);

  std::vector<std::array<double, 4>> rows;
  std::vector<bool> quasi;
  for (++i; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (trim(lines[i]).empty()) continue;
    const auto f = split_fields(lines[i]);
    if (f.size() != 5) throw ParseError("expected 5 fields, got " + std::to_string(f.size()), line_no);
    std::array<double, 4> r{};
    for (std::size_t k = 0; k < 4; ++k) r[k] = parse_double(f[k], line_no);
    if (f[4] != "0" && f[4] != "1") throw ParseError("quasi flag must be 0 or 1", line_no);
    const bool q = f[4] == "1";
    if (q && (std::abs(r[0] - r[2]) > kQuasiTolerance || std::abs(r[1] - r[3]) > kQuasiTolerance))
      throw ValidationError("line " + std::to_string(line_no) + ": quasi-landmark has source != target");
    rows.push_back(r);
    quasi.push_back(q);
  }
  if (rows.empty()) throw ParseError("landmark file has no rows", 0);
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd s(n, 2), t(n, 2);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& r = rows[static_cast<std::size_t>(j)];
    s(j, 0) = r[0];
    s(j, 1) = r[1];
    t(j, 0) = r[2];
    t(j, 1) = r[3];
  }
  return LandmarkSet(std::move(s), std::move(t), std::move(quasi));
}

std::string write_landmarks(const LandmarkSet& landmarks) {
  if (landmarks.dimension() != 2) throw DomainError("landmark CSV files are two-dimensional");
  std::string out = "sx,sy,tx,ty,quasi\n";
  for (Eigen::Index j = 0; j < landmarks.size(); ++j) {
    out += format_double(landmarks.sources()(j, 0)) + ',' + format_double(landmarks.sources()(j, 1)) + ',' +
           format_double(landmarks.targets()(j, 0)) + ',' + format_double(landmarks.targets()(j, 1)) + ',' +
           (landmarks.is_quasi(j) ? "1" : "0") + '\n';
  }
  return out;
}

namespace {

// Tracks which config keys have been consumed.
class ConfigReader {
 public:
  explicit ConfigReader(std::string_view text) {
    static const std::set<std::string> known = {"method", "kernel", "alpha", "gamma", "mu", "c", "h",
                                                "n",      "a",      "nodal_kernel", "n_l", "n_w", "rho"};
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const int line_no = static_cast<int>(i) + 1;
      std::string_view l = lines[i];
      if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
      l = trim(l);
      if (l.empty()) continue;
      const auto eq = l.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
      const std::string key(trim(l.substr(0, eq)));
      const std::string_view value = trim(l.substr(eq + 1));
      if (key.empty() || value.empty()) throw ParseError("expected 'key = value'", line_no);
      if (!known.count(key)) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      if (entries_.count(key)) throw ConfigError("line " + std::to_string(line_no) + ": repeated key '" + key + "'");
      entries_[key] = {std::string(value), line_no};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<std::string> text(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    used_.insert(key);
    return it->second.value;
  }

  std::string require_text(const std::string& key, const std::string& context) {
    auto v = text(key);
    if (!v) throw ConfigError(context + " requires '" + key + "'");
    return *v;
  }

  double require_double(const std::string& key, const std::string& context) {
    const auto v = require_text(key, context);
    return parse_double(v, entries_.at(key).line);
  }

  int require_int(const std::string& key, const std::string& context) {
    const auto v = require_text(key, context);
    return parse_int(v, entries_.at(key).line);
  }

  void reject_unused(const std::string& context) const {
    for (const auto& [key, entry] : entries_)
      if (!used_.count(key))
        throw ConfigError("line " + std::to_string(entry.line) + ": key '" + key + "' is not used by " + context);
  }

 private:
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

RadialKernelSpec read_radial(ConfigReader& cfg, const std::string& name) {
  if (name == "gaussian") return RadialKernelSpec::gaussian(cfg.require_double("alpha", name));
  if (name == "tps") return RadialKernelSpec::thin_plate_spline();
  if (name == "multiquadric")
    return RadialKernelSpec::generalized_multiquadric(cfg.require_double("gamma", name), cfg.require_int("mu", name));
  if (name == "wendland1d" || name == "wendland2d" || name == "wendland3d") {
    const int m = name[8] - '0';
    return RadialKernelSpec::wendland(m, cfg.require_int("h", name), cfg.require_double("c", name));
  }
  throw ConfigError("kernel '" + name + "' is not a radial kernel");
}

}  // namespace

Recipe parse_config(std::string_view text) {
  ConfigReader cfg(text);
  std::string method;
  if (auto m = cfg.text("method")) {
    method = *m;
  } else if (cfg.has("kernel")) {
    const auto k = *cfg.text("kernel");
    method = (k == "wendland1dx1d" || k == "lobachevsky") ? "tensor" : "global";
  } else {
    throw ConfigError("config needs 'kernel' or 'method'");
  }

  Recipe recipe = GlobalRecipe{RadialKernelSpec::thin_plate_spline()};
  if (method == "global") {
    const std::string kernel = cfg.require_text("kernel", "method global");
    recipe = GlobalRecipe{read_radial(cfg, kernel)};
  } else if (method == "tensor") {
    const std::string kernel = cfg.require_text("kernel", "method tensor");
    if (kernel == "wendland1dx1d") {
      recipe = TensorRecipe{UnivariateKernelSpec::wendland(cfg.require_int("h", kernel), cfg.require_double("c", kernel))};
    } else if (kernel == "lobachevsky") {
      const int n = cfg.require_int("n", kernel);
      if (cfg.has("alpha") == cfg.has("a")) throw ConfigError("lobachevsky needs exactly one of 'alpha' or 'a'");
      recipe = cfg.has("alpha") ? TensorRecipe{LobachevskySpec::by_alpha(n, cfg.require_double("alpha", kernel))}
                                : TensorRecipe{LobachevskySpec::by_a(n, cfg.require_double("a", kernel))};
    } else {
      throw ConfigError("kernel '" + kernel + "' is not a tensor-product kernel");
    }
  } else if (method == "shepard") {
    ShepardConfig sc;
    const std::string nodal = cfg.require_text("nodal_kernel", "method shepard");
    if (nodal != "tps" && nodal != "gaussian") throw ConfigError("nodal_kernel must be tps or gaussian");
    sc.nodal_kernel = read_radial(cfg, nodal);
    sc.n_local = cfg.require_int("n_l", "method shepard");
    sc.n_weight = cfg.require_int("n_w", "method shepard");
    if (auto rho = cfg.text("rho"); rho && *rho != "auto") sc.rho = parse_double(*rho, 0);
    recipe = ShepardRecipe{sc};
  } else {
    throw ConfigError("method must be global, tensor or shepard");
  }
  cfg.reject_unused("method " + method);
  return recipe;
}

std::string write_grid_csv(const EvaluationGrid& grid, const Eigen::MatrixXd& deformed) {
  if (deformed.rows() != grid.size() || deformed.cols() != 2)
    throw DomainError("deformed points do not match the grid");
  std::string out = "x,y,fx,fy\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    out += format_double(grid.points(i, 0)) + ',' + format_double(grid.points(i, 1)) + ',' +
           format_double(deformed(i, 0)) + ',' + format_double(deformed(i, 1)) + '\n';
  return out;
}

GridData parse_grid_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != "x,y,fx,fy") throw ParseError("expected header 'x,y,fx,fy'", 1);
  std::vector<std::array<double, 4>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (trim(lines[i]).empty()) continue;
    const auto f = split_fields(lines[i]);
    if (f.size() != 4) throw ParseError("expected 4 fields, got " + std::to_string(f.size()), line_no);
    rows.push_back({parse_double(f[0], line_no), parse_double(f[1], line_no), parse_double(f[2], line_no),
                    parse_double(f[3], line_no)});
  }
  if (rows.empty()) throw ParseError("grid file has no rows", 0);

  int cols = 0;
  while (cols < static_cast<int>(rows.size()) && rows[static_cast<std::size_t>(cols)][1] == rows[0][1]) ++cols;
  if (rows.size() % static_cast<std::size_t>(cols) != 0)
    throw ParseError("grid rows are not all the same length", 0);

  GridData g;
  const auto n = static_cast<Eigen::Index>(rows.size());
  g.original.cols = cols;
  g.original.rows = static_cast<int>(rows.size()) / cols;
  g.original.points.resize(n, 2);
  g.deformed.resize(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    g.original.points.row(i) << r[0], r[1];
    g.deformed.row(i) << r[2], r[3];
  }
  return g;
}

namespace {

std::string svg_point(double x, double y) {
  return format_fixed(1000.0 * x, 3) + ',' + format_fixed(1000.0 * y, 3);
}

}  // namespace

std::string render_grid_svg(const EvaluationGrid& original, const EvaluationGrid& deformed,
                            const LandmarkSet* landmarks) {
  if (original.rows != deformed.rows || original.cols != deformed.cols || original.size() != deformed.size() ||
      deformed.size() != static_cast<Eigen::Index>(deformed.rows) * deformed.cols)
    throw DomainError("original and deformed grids differ in shape");
  if (landmarks && landmarks->dimension() != 2) throw DomainError("only planar landmarks can be drawn");

  const auto at = [&](const EvaluationGrid& g, int r, int c) {
    return g.points.row(static_cast<Eigen::Index>(r) * g.cols + c);
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" height=\"1000\" "
        "viewBox=\"0 0 1000 1000\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n"
     << "<g transform=\"matrix(1 0 0 -1 0 1000)\">\n";

  // Undeformed grid as one faint path underneath.
  os << "<path fill=\"none\" stroke=\"#d0d0d0\" stroke-width=\"1\" d=\"";
  for (int r = 0; r < original.rows; ++r)
    for (int c = 0; c < original.cols; ++c) {
      const auto p = at(original, r, c);
      os << (c == 0 ? "M" : " L") << svg_point(p(0), p(1));
      if (c + 1 == original.cols) os << ' ';
    }
  for (int c = 0; c < original.cols; ++c)
    for (int r = 0; r < original.rows; ++r) {
      const auto p = at(original, r, c);
      os << (r == 0 ? "M" : " L") << svg_point(p(0), p(1));
      if (r + 1 == original.rows) os << ' ';
    }
  os << "\"/>\n";

  os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (int r = 0; r < deformed.rows; ++r) {
    os << "<polyline points=\"";
    for (int c = 0; c < deformed.cols; ++c) {
      const auto p = at(deformed, r, c);
      os << (c ? " " : "") << svg_point(p(0), p(1));
    }
    os << "\"/>\n";
  }
  for (int c = 0; c < deformed.cols; ++c) {
    os << "<polyline points=\"";
    for (int r = 0; r < deformed.rows; ++r) {
      const auto p = at(deformed, r, c);
      os << (r ? " " : "") << svg_point(p(0), p(1));
    }
    os << "\"/>\n";
  }
  os << "</g>\n";

  if (landmarks) {
    os << "<g fill=\"none\" stroke-width=\"2\">\n";
    for (Eigen::Index j = 0; j < landmarks->size(); ++j) {
      const auto s = landmarks->sources().row(j);
      os << "<circle cx=\"" << format_fixed(1000.0 * s(0), 3) << "\" cy=\"" << format_fixed(1000.0 * s(1), 3)
         << "\" r=\"8\" stroke=\"#1f5fbf\"/>\n";
    }
    for (Eigen::Index j = 0; j < landmarks->size(); ++j) {
      const auto t = landmarks->targets().row(j);
      const double x = 1000.0 * t(0);
      const double y = 1000.0 * t(1);
      os << "<path stroke=\"#c0302a\" d=\"M" << format_fixed(x - 8, 3) << ',' << format_fixed(y - 8, 3) << " L"
         << format_fixed(x + 8, 3) << ',' << format_fixed(y + 8, 3) << " M" << format_fixed(x - 8, 3) << ','
         << format_fixed(y + 8, 3) << " L" << format_fixed(x + 8, 3) << ',' << format_fixed(y - 8, 3) << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string write_sweep_report(const SweepReport& report) {
  std::string out = "method,case,reference,param_name,param,rmse,condition,residual,optimal,status\n";
  const std::string ref = report.reference == Reference::Identity ? "identity" : "truth";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const SweepRow& r = report.rows[i];
    out += report.method + ',' + report.case_name + ',' + ref + ',' + report.param_name + ',' +
           (std::isnan(r.param) ? std::string("-") : format_double(r.param)) + ',' +
           (r.rmse ? format_double(*r.rmse) : "") + ',' + (r.condition ? format_double(*r.condition) : "") + ',' +
           (r.residual ? format_double(*r.residual) : "") + ',' + (i == report.optimal_index ? "1" : "0") + ',';
    std::string status = r.failure.empty() ? "ok" : r.failure;
    for (auto& ch : status)
      if (ch == ',' || ch == '\n') ch = ';';
    out += status + '\n';
  }
  if (report.published) {
    out += "# published optimum: param=" +
           (std::isnan(report.published->param) ? std::string("-") : format_double(report.published->param)) +
           " rmse=" + format_double(report.published->rmse) + " (different landmark coordinates; display only)\n";
  }
  return out;
}

std::string write_real_life_report(const std::vector<RealLifeRow>& rows) {
  std::string out = "method,param_name,param,rmse,published_rmse,residual,condition\n";
  for (const auto& r : rows)
    out += r.method + ',' + r.param_name + ',' + (std::isnan(r.param) ? std::string("-") : format_double(r.param)) +
           ',' + format_double(r.rmse) + ',' + (r.published_rmse ? format_double(*r.published_rmse) : "") + ',' +
           format_double(r.residual) + ',' + format_double(r.condition) + '\n';
  return out;
}

}  // namespace locreg
