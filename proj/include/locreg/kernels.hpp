#pragma once

#include <optional>
#include <string>

namespace locreg {

enum class RadialFamily { Gaussian, ThinPlateSpline, GeneralizedMultiquadric, WendlandRadial };

/// Radial basis function Φ(r) with the parameters of exactly one family.
///
/// Instances are built through the named factories, which validate the
/// parameters; reading a parameter that the active family does not carry
/// throws ConfigError.
class RadialKernelSpec {
 public:
  /// Φ(r) = exp(-α² r²), α > 0.
  static RadialKernelSpec gaussian(double alpha);
  /// Φ(r) = r² log r, Φ(0) = 0.
  static RadialKernelSpec thin_plate_spline();
  /// Φ(r) = (r² + γ²)^(μ/2), γ > 0, μ negative or odd positive.
  static RadialKernelSpec generalized_multiquadric(double gamma, int mu);
  /// Wendland φ_{m,h}(c r) for space dimension m ∈ {1,2,3}, h ∈ {0,1,2,3}.
  static RadialKernelSpec wendland(int m, int h, double c);

  RadialFamily family() const noexcept { return family_; }
  double alpha() const;
  double gamma() const;
  int mu() const;
  double c() const;
  int h() const;
  int m() const;

  std::string describe() const;

 private:
  RadialKernelSpec() = default;

  RadialFamily family_ = RadialFamily::Gaussian;
  double alpha_ = 0.0;
  double gamma_ = 0.0;
  int mu_ = 0;
  double c_ = 0.0;
  int h_ = 0;
  int m_ = 0;
};

/// Univariate Wendland φ_{1,h}(c|x|), the factor of tensor-product kernels.
class UnivariateKernelSpec {
 public:
  static UnivariateKernelSpec wendland(int h, double c);

  int h() const noexcept { return h_; }
  double c() const noexcept { return c_; }
  std::string describe() const;

 private:
  UnivariateKernelSpec(int h, double c) : h_(h), c_(c) {}
  int h_;
  double c_;
};

double eval_radial(const RadialKernelSpec& kernel, double r);
double eval_univariate(const UnivariateKernelSpec& kernel, double x);

/// Degree of the polynomial tail the kernel needs for unique solvability,
/// or nullopt for strictly positive definite kernels.
std::optional<int> polynomial_tail_degree(const RadialKernelSpec& kernel);

/// Radius beyond which the kernel vanishes; +infinity for global kernels.
double support_radius(const RadialKernelSpec& kernel);
double support_radius(const UnivariateKernelSpec& kernel);

}  // namespace locreg
