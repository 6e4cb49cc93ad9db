#include "locreg/lobachevsky.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "locreg/error.hpp"

namespace locreg {

namespace lobachevsky {

namespace {

constexpr int kExplicitMaxOrder = 20;

void check_args(int n, double a) {
  if (n < 1) throw DomainError("Lobachevsky order n must be >= 1");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("Lobachevsky half-width a must be positive");
}

// f_1 on the half-open interval [-a, a).
double base(double a, double x) { return (x >= -a && x < a) ? 0.5 / a : 0.0; }

template <typename Buffer>
double recurrence(int n, double a, double y, Buffer& vals) {
  // vals[i] holds f_level(y + (i - span) a) for offsets of matching parity.
  const int span = n - 1;
  for (int i = 0; i <= 2 * span; i += 2) vals[i] = base(a, y + (i - span) * a);
  for (int level = 2; level <= n; ++level) {
    const int width = n - level;
    const double inv = 1.0 / (level - 1);
    const double two_a = 2.0 * a;
    for (int i = span - width; i <= span + width; i += 2) {
      const double z = y + (i - span) * a;
      const double up = vals[i + 1];
      const double down = vals[i - 1];
      vals[i] = inv * (((level * a + z) / two_a) * up + ((level * a - z) / two_a) * down);
    }
  }
  return vals[span];
}

}  // namespace

double eval_explicit(int n, double a, double x) {
  check_args(n, a);
  if (n > kExplicitMaxOrder)
    throw DomainError("explicit Lobachevsky formula is limited to n <= 20");
  if (n == 1) return base(a, x);
  const double y = -std::abs(x);
  if (y <= -n * a) return 0.0;

  double sum = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double arg = y + (n - 2 * k) * a;
    if (arg > 0.0) {
      const double term = binom * std::pow(arg, n - 1);
      sum += (k % 2 == 0) ? term : -term;
    }
    binom = binom * (n - k) / (k + 1);
  }
  double factorial = 1.0;
  for (int k = 2; k < n; ++k) factorial *= k;
  return sum / (std::pow(2.0 * a, n) * factorial);
}

double eval_recurrence(int n, double a, double x) {
  check_args(n, a);
  if (n == 1) return base(a, x);
  const double y = -std::abs(x);
  if (y <= -n * a) return 0.0;
  // Offsets 0..2(n-1) are addressed with index i+1 and i-1, so 2n-1 slots.
  if (n <= 64) {
    std::array<double, 128> vals{};
    return recurrence(n, a, y, vals);
  }
  std::vector<double> vals(static_cast<std::size_t>(2 * n));
  return recurrence(n, a, y, vals);
}

double eval_standardized(int n, double x) {
  if (n < 1) throw DomainError("Lobachevsky order n must be >= 1");
  if (std::abs(x) >= std::sqrt(3.0 * n)) return 0.0;
  const double s = std::sqrt(n / 3.0);
  return s * eval_recurrence(n, 1.0, s * x);
}

}  // namespace lobachevsky

LobachevskySpec LobachevskySpec::by_a(int n, double a) {
  if (n < 1) throw ConfigError("Lobachevsky order n must be >= 1");
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("Lobachevsky a must be positive");
  return LobachevskySpec(n, Parameterization::ByA, a);
}

LobachevskySpec LobachevskySpec::by_alpha(int n, double alpha) {
  if (n < 1) throw ConfigError("Lobachevsky order n must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("Lobachevsky alpha must be positive");
  return LobachevskySpec(n, Parameterization::ByAlpha, alpha);
}

double LobachevskySpec::a() const {
  if (param_ != Parameterization::ByA) throw ConfigError("spline is parameterized by alpha");
  return value_;
}

double LobachevskySpec::alpha() const {
  if (param_ != Parameterization::ByAlpha) throw ConfigError("spline is parameterized by a");
  return value_;
}

double LobachevskySpec::operator()(double x) const {
  if (param_ == Parameterization::ByA) return lobachevsky::eval_recurrence(n_, value_, x);
  return lobachevsky::eval_standardized(n_, value_ * x);
}

std::string LobachevskySpec::describe() const {
  std::ostringstream os;
  os << "lobachevsky(n=" << n_ << (param_ == Parameterization::ByA ? ", a=" : ", alpha=") << value_ << ")";
  return os.str();
}

Interval support(const LobachevskySpec& spec) {
  const int n = spec.order();
  const double half = spec.parameterization() == LobachevskySpec::Parameterization::ByA
                          ? n * spec.a()
                          : std::sqrt(3.0 * n) / spec.alpha();
  return {-half, half};
}

}  // namespace locreg
