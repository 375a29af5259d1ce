#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ksr {

class Modulus {
 public:
  enum class Family { Power, PiecewiseLinear, MinLinear };

  static Modulus power(double K, double alpha);
  static Modulus min_linear(double K, double C);
  /// Breakpoints (x_i, y_i) with x_0 = 0, y_0 = 0; constant after the last one.
  /// With require_concave the slopes must be nonincreasing.
  static Modulus piecewise_linear(std::vector<std::pair<double, double>> pts, bool require_concave);
  /// "power:K=1,alpha=0.5", "minlin:K=1,C=0.5", "plconcave:0,0;0.5,0.4", "pl:0,0;...".
  static Modulus parse(const std::string& spec);

  double operator()(double t) const { return eval(t); }
  double eval(double t) const;
  /// Right derivative. Throws Unbounded at 0 for alpha < 1.
  double derivative(double t) const;
  /// I(alpha, beta) = integral of omega over [alpha, beta], closed form.
  double primitive(double alpha, double beta) const;
  /// I(0, t)
  double I(double t) const { return primitive(0.0, t); }

  bool concave() const noexcept { return concave_; }
  Family family() const noexcept { return family_; }
  const std::string& spec() const noexcept { return spec_; }

 private:
  Modulus() = default;
  void validate();

  Family family_ = Family::Power;
  double K_ = 1.0;
  double alpha_ = 1.0;
  double C_ = 0.0;
  std::vector<std::pair<double, double>> pts_;
  bool concave_ = true;
  std::string spec_;
};

/// Searches a grid on [0, T] for s, t with w(s+t) > w(s) + w(t) + 1e-10.
std::optional<std::pair<double, double>> subadditivity_witness(const std::function<double(double)>& w,
                                                               double T, int grid = 200);

}  // namespace ksr
