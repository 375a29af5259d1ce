#pragma once

#include <vector>

namespace ksr {

/// Continuous piecewise-linear function given by nodes with strictly
/// increasing abscissae. Outside [front, back] it is extended by its end values.
struct Polyline {
  std::vector<double> x;
  std::vector<double> y;

  Polyline() = default;
  Polyline(std::vector<double> xs, std::vector<double> ys);

  bool empty() const { return x.empty(); }
  std::size_t size() const { return x.size(); }
  double front() const { return x.front(); }
  double back() const { return x.back(); }

  double eval(double t) const;
  /// Slope of the piece containing t (right-continuous).
  double slope(double t) const;
  double integral() const;
  double integral(double l, double r) const;
  double integral_abs() const;
  double variation() const;
  double max() const;
  double min() const;
  double max_abs() const;

  /// Inserts a node wherever the graph crosses `level` strictly inside a piece.
  Polyline with_crossings(double level) const;
  Polyline restricted(double l, double r) const;
  Polyline abs() const;
  Polyline scaled(double c) const;
  /// Drops collinear interior nodes and merges nodes closer than tol.
  Polyline simplified(double tol = 1e-14) const;
};

/// Pointwise sum over the union of both node sets.
Polyline operator+(const Polyline& p, const Polyline& q);

/// Nonincreasing equimeasurable rearrangement on [0, back-front], computed
/// exactly from the distribution function. Requires p >= 0.
Polyline hardy_rearrangement(const Polyline& p);

/// mes{t : p(t) > y}
double distribution(const Polyline& p, double y);

}  // namespace ksr
