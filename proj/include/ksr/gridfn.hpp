#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ksr/lspace.hpp"
#include "ksr/modulus.hpp"

namespace ksr {

/// Function [a, b] -> X sampled on the uniform grid t_i = a + i (b - a) / N.
/// Real, vector and interval values interpolate linearly between nodes;
/// unions and max-space values use the nearest node.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(double a, double b, std::vector<Element> values);

  static GridFunction tabulate(double a, double b, std::size_t N, const std::function<Element(double)>& f);
  static GridFunction tabulate_real(double a, double b, std::size_t N, const std::function<double(double)>& f);
  static GridFunction from_reals(double a, double b, const std::vector<double>& v);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t N() const { return values_.size() - 1; }
  double step() const { return (b_ - a_) / static_cast<double>(N()); }
  double node(std::size_t i) const;
  Model model() const { return values_.front().model(); }
  const Element& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Element>& values() const { return values_; }
  bool is_real() const { return model() == Model::Real; }
  /// Node values of a real function.
  std::vector<double> reals() const;

  Element eval(double t) const;

 private:
  double a_ = 0.0;
  double b_ = 1.0;
  std::vector<Element> values_;
};

struct MembershipReport {
  bool member = true;
  double defect = 0.0;  // max of dist - omega over the checked pairs
  std::size_t i = 0;
  std::size_t j = 0;
};

constexpr double kMembershipSlack = 1e-9;

/// Adjacent and dyadic-span node pairs, or all pairs when strict.
MembershipReport check_Homega(const GridFunction& f, const Modulus& w, bool strict = false);
/// sup dist(f(t'), f(t'')) / omega(|t' - t''|) over the same pair set.
double omega_seminorm(const GridFunction& f, const Modulus& w, bool strict = false);

/// Integral over [c, d] of the convexified values (trapezoid, exact for
/// piecewise-linear payloads, partial cells handled exactly).
Element integrate(const GridFunction& f, double c, double d);
Element integrate(const GridFunction& f);
/// Fast real-valued version.
double integrate_real(const GridFunction& f, double c, double d);

/// t -> f_+(t) x + f_-(t) x'
GridFunction lift(const GridFunction& f, const Element& x);

/// Central Hukuhara quotients inside, one-sided at the ends.
GridFunction hukuhara_derivative(const GridFunction& f);

/// x0 + running integral of P(phi); a W1 member when phi is an H^omega member.
GridFunction antiderivative(const GridFunction& phi, const Element& x0);

double sup_norm(const GridFunction& f);
double sup_dist(const GridFunction& f, const GridFunction& g);

/// Grid tolerance eps(N) = omega(2 (b - a) / N) + 1e-9.
double grid_eps(const Modulus& w, double length, std::size_t N);

void write_csv(std::ostream& os, const GridFunction& f);
GridFunction read_csv(std::istream& is);
nlohmann::json to_json(const GridFunction& f);
GridFunction gridfn_from_json(const nlohmann::json& j);

}  // namespace ksr
