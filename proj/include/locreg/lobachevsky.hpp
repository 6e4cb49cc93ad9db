#pragma once

#include <string>

namespace locreg {

/// Lobachevsky splines f_n: the n-fold convolution of the uniform density
/// on [-a, a]. f_n is a centered uniform B-spline of degree n-1 with knots
/// spaced 2a apart, support [-na, na], and unit integral.
namespace lobachevsky {

/// Alternating truncated-power sum. Loses significance as n grows and is
/// kept as the reference for the recurrence; rejects n > 20.
double eval_explicit(int n, double a, double x);

/// Three-term recurrence evaluated bottom-up in O(n²). Production path.
double eval_recurrence(int n, double a, double x);

/// Standardized spline f*_n(x) = s f_n(s x) with a = 1 and s = sqrt(n/3);
/// unit variance, support [-sqrt(3n), sqrt(3n)].
double eval_standardized(int n, double x);

}  // namespace lobachevsky

struct Interval {
  double lo;
  double hi;
};

/// A Lobachevsky spline as a univariate kernel, either f_n with half-width a
/// or f*_n(αx).
class LobachevskySpec {
 public:
  enum class Parameterization { ByA, ByAlpha };

  static LobachevskySpec by_a(int n, double a);
  static LobachevskySpec by_alpha(int n, double alpha);

  int order() const noexcept { return n_; }
  Parameterization parameterization() const noexcept { return param_; }
  double a() const;
  double alpha() const;

  double operator()(double x) const;
  std::string describe() const;

 private:
  LobachevskySpec(int n, Parameterization p, double v) : n_(n), param_(p), value_(v) {}
  int n_;
  Parameterization param_;
  double value_;
};

Interval support(const LobachevskySpec& spec);

}  // namespace locreg
