#include "locreg/kernels.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "locreg/error.hpp"

namespace locreg {

namespace {

double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ConfigError(std::string(name) + " must be a positive finite number");
}

void require_smoothness(int h) {
  if (h < 0 || h > 3) throw ConfigError("Wendland smoothness h must be in {0,1,2,3}");
}

// Printed m=1 polynomials, t = c r < 1.
double wendland_1d(int h, double t) {
  const double u = 1.0 - t;
  switch (h) {
    case 0: return u;
    case 1: return ipow(u, 3) * (3.0 * t + 1.0);
    case 2: return ipow(u, 5) * ((8.0 * t + 5.0) * t + 1.0);
    case 3: return ipow(u, 7) * (((21.0 * t + 19.0) * t + 7.0) * t + 1.0);
  }
  throw ConfigError("unsupported Wendland smoothness");
}

// Printed m=2 polynomials; also used for m=3.
double wendland_2d(int h, double t) {
  const double u = 1.0 - t;
  switch (h) {
    case 0: return u * u;
    case 1: return ipow(u, 4) * (4.0 * t + 1.0);
    case 2: return ipow(u, 6) * ((35.0 * t + 18.0) * t + 3.0);
    case 3: return ipow(u, 8) * (((32.0 * t + 25.0) * t + 8.0) * t + 1.0);
  }
  throw ConfigError("unsupported Wendland smoothness");
}

double wendland(int m, int h, double c, double r) {
  const double t = c * r;
  if (t >= 1.0) return 0.0;
  return m == 1 ? wendland_1d(h, t) : wendland_2d(h, t);
}

}  // namespace

RadialKernelSpec RadialKernelSpec::gaussian(double alpha) {
  require_positive(alpha, "Gaussian alpha");
  RadialKernelSpec k;
  k.family_ = RadialFamily::Gaussian;
  k.alpha_ = alpha;
  return k;
}

RadialKernelSpec RadialKernelSpec::thin_plate_spline() {
  RadialKernelSpec k;
  k.family_ = RadialFamily::ThinPlateSpline;
  return k;
}

RadialKernelSpec RadialKernelSpec::generalized_multiquadric(double gamma, int mu) {
  require_positive(gamma, "multiquadric gamma");
  if (mu == 0) throw ConfigError("multiquadric exponent mu must be nonzero");
  if (mu > 0 && mu % 2 == 0)
    throw ConfigError("multiquadric exponent mu must be negative or odd positive");
  RadialKernelSpec k;
  k.family_ = RadialFamily::GeneralizedMultiquadric;
  k.gamma_ = gamma;
  k.mu_ = mu;
  return k;
}

RadialKernelSpec RadialKernelSpec::wendland(int m, int h, double c) {
  if (m < 1 || m > 3) throw ConfigError("Wendland space dimension m must be in {1,2,3}");
  require_smoothness(h);
  require_positive(c, "Wendland c");
  RadialKernelSpec k;
  k.family_ = RadialFamily::WendlandRadial;
  k.m_ = m;
  k.h_ = h;
  k.c_ = c;
  return k;
}

double RadialKernelSpec::alpha() const {
  if (family_ != RadialFamily::Gaussian) throw ConfigError("alpha is only defined for Gaussian kernels");
  return alpha_;
}

double RadialKernelSpec::gamma() const {
  if (family_ != RadialFamily::GeneralizedMultiquadric)
    throw ConfigError("gamma is only defined for multiquadric kernels");
  return gamma_;
}

int RadialKernelSpec::mu() const {
  if (family_ != RadialFamily::GeneralizedMultiquadric)
    throw ConfigError("mu is only defined for multiquadric kernels");
  return mu_;
}

double RadialKernelSpec::c() const {
  if (family_ != RadialFamily::WendlandRadial) throw ConfigError("c is only defined for Wendland kernels");
  return c_;
}

int RadialKernelSpec::h() const {
  if (family_ != RadialFamily::WendlandRadial) throw ConfigError("h is only defined for Wendland kernels");
  return h_;
}

int RadialKernelSpec::m() const {
  if (family_ != RadialFamily::WendlandRadial) throw ConfigError("m is only defined for Wendland kernels");
  return m_;
}

std::string RadialKernelSpec::describe() const {
  std::ostringstream os;
  switch (family_) {
    case RadialFamily::Gaussian: os << "gaussian(alpha=" << alpha_ << ")"; break;
    case RadialFamily::ThinPlateSpline: os << "tps"; break;
    case RadialFamily::GeneralizedMultiquadric:
      os << "multiquadric(gamma=" << gamma_ << ", mu=" << mu_ << ")";
      break;
    case RadialFamily::WendlandRadial:
      os << "wendland(m=" << m_ << ", h=" << h_ << ", c=" << c_ << ")";
      break;
  }
  return os.str();
}

UnivariateKernelSpec UnivariateKernelSpec::wendland(int h, double c) {
  require_smoothness(h);
  require_positive(c, "Wendland c");
  return UnivariateKernelSpec(h, c);
}

std::string UnivariateKernelSpec::describe() const {
  std::ostringstream os;
  os << "wendland1d(h=" << h_ << ", c=" << c_ << ")";
  return os.str();
}

double eval_radial(const RadialKernelSpec& kernel, double r) {
  if (!(r >= 0.0)) throw DomainError("radial kernel evaluated at a negative or NaN distance");
  switch (kernel.family()) {
    case RadialFamily::Gaussian: {
      const double ar = kernel.alpha() * r;
      return std::exp(-ar * ar);
    }
    case RadialFamily::ThinPlateSpline:
      return r == 0.0 ? 0.0 : r * r * std::log(r);
    case RadialFamily::GeneralizedMultiquadric: {
      const double g = kernel.gamma();
      return std::pow(r * r + g * g, 0.5 * kernel.mu());
    }
    case RadialFamily::WendlandRadial:
      return wendland(kernel.m(), kernel.h(), kernel.c(), r);
  }
  throw ConfigError("unknown radial kernel family");
}

double eval_univariate(const UnivariateKernelSpec& kernel, double x) {
  return wendland(1, kernel.h(), kernel.c(), std::abs(x));
}

std::optional<int> polynomial_tail_degree(const RadialKernelSpec& kernel) {
  switch (kernel.family()) {
    case RadialFamily::ThinPlateSpline:
      return 1;
    case RadialFamily::GeneralizedMultiquadric:
      if (kernel.mu() > 0) return kernel.mu() - 1;
      return std::nullopt;
    case RadialFamily::Gaussian:
    case RadialFamily::WendlandRadial:
      return std::nullopt;
  }
  return std::nullopt;
}

double support_radius(const RadialKernelSpec& kernel) {
  if (kernel.family() == RadialFamily::WendlandRadial) return 1.0 / kernel.c();
  return std::numeric_limits<double>::infinity();
}

double support_radius(const UnivariateKernelSpec& kernel) { return 1.0 / kernel.c(); }

}  // namespace locreg
