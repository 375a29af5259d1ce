#pragma once

#include <vector>

#include "ksr/gridfn.hpp"
#include "ksr/kscore.hpp"
#include "ksr/modulus.hpp"

namespace ksr {

struct Knots {
  std::vector<double> t;    // t_1..t_n
  std::vector<double> tau;  // tau_1..tau_{n+1}, cell boundaries
};

Knots optimal_knots(std::size_t n, double a, double b);
std::vector<double> cell_bounds(const std::vector<double>& t, double a, double b);
/// a <= t_1 - h < t_1 + h < t_2 - h < ... < t_n + h <= b, else KnotViolation.
void check_knots(const std::vector<double>& t, double h, double a, double b);

struct MeanInfo {
  double a, b, h;
  std::vector<double> t;
  std::vector<Element> means;
};

MeanInfo mean_info(const GridFunction& f, const std::vector<double>& t, double h);

/// Cell-mean step function: mean k on [tau_k, tau_{k+1}).
Element method_convexify(const MeanInfo& info, double u);
GridFunction recover_convexify(const MeanInfo& info, std::size_t N);
double error_convexify(std::size_t n, double h, const Modulus& w, double L);

/// (b-a)/n times the sum of the cell means.
Element recover_integral(const MeanInfo& info);
double error_integral(std::size_t n, double h, const Modulus& w, double L);

/// Zero cell means, large sup norm (any modulus).
RealFn lower_extremal_mean(const std::vector<double>& t, double h, const Modulus& w, double a, double b);
/// Zero cell means, large integral (concave modulus).
RealFn lower_extremal_integral(const std::vector<double>& t, double h, const Modulus& w, double a, double b);

/// Piecewise-linear interpolation of node values (node values must be convex).
Element polyline_eval(const std::vector<double>& nodes, const std::vector<Element>& values, double t);
GridFunction polyline(const std::vector<double>& nodes, const std::vector<Element>& values, std::size_t N);
/// Interpolant of f at the uniform partition into n cells, on f's grid.
GridFunction identity_method(const GridFunction& f, std::size_t n);
double polyline_error(double tk, double tk1, double t, const Modulus& w);
double polyline_uniform_error(std::size_t n, const Modulus& w, double L);

std::vector<double> uniform_partition(std::size_t n, double a, double b);

/// Hukuhara slope of the interpolant; right segment at nodes, last segment at the end.
Element polyline_derivative(const std::vector<double>& nodes, const std::vector<Element>& values, double t);
double derivative_error_bound(double tk, double tk1, double t, const Modulus& w);
double derivative_recovery_value(std::size_t n, const Modulus& w, double L);

struct DerivativeExtremal {
  RealFn g;  // derivative, g0 minus its mean
  RealFn f;  // integral of g from a
};
DerivativeExtremal derivative_extremal(std::size_t n, const Modulus& w, double a, double b);

struct OmegaSpline {
  std::vector<double> nodes;
  std::vector<double> eta;
  RealFn g;
  RealFn G;
  double sup = 0.0;       // max |G(eta_i)|
  double residual = 0.0;  // max |G(t_i)|
  std::size_t iterations = 0;
};

/// Function vanishing at the partition nodes with large sup (concave modulus).
OmegaSpline omega_spline(const std::vector<double>& nodes, const Modulus& w);

}  // namespace ksr
