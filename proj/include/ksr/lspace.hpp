#pragma once

// Concrete L-space models. Every element is an immutable value; the free
// functions below implement the semilinear operations, the metric and the
// derived operators (convexification, Hukuhara difference, lifting of reals).

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ksr {

enum class Model { Real, Vector, Interval, IntervalUnion, MaxSpace };

std::string_view model_name(Model m) noexcept;
Model parse_model(std::string_view name);

struct Real {
  double v = 0.0;
};

struct Vector {
  std::vector<double> v;
};

/// Closed interval [lo, hi], lo <= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Finite union of closed intervals, sorted and pairwise disjoint.
struct IntervalUnion {
  std::vector<Interval> parts;
};

/// Element of the max-plus style space ([0, inf), max, |lambda| *).
struct MaxScalar {
  double v = 0.0;
};

class Element {
 public:
  using Payload = std::variant<Real, Vector, Interval, IntervalUnion, MaxScalar>;

  Element() : payload_(Real{0.0}) {}
  Element(Real x) : payload_(x) {}
  Element(Vector x);
  Element(Interval x);
  Element(IntervalUnion x);
  Element(MaxScalar x);

  static Element real(double v) { return Element(Real{v}); }
  static Element vector(std::vector<double> v) { return Element(Vector{std::move(v)}); }
  static Element interval(double lo, double hi) { return Element(Interval{lo, hi}); }
  static Element interval_union(std::vector<Interval> parts) {
    return Element(IntervalUnion{std::move(parts)});
  }
  static Element max_scalar(double v) { return Element(MaxScalar{v}); }

  Model model() const noexcept { return static_cast<Model>(payload_.index()); }
  const Payload& payload() const noexcept { return payload_; }

  template <class T>
  const T& as() const {
    return std::get<T>(payload_);
  }
  template <class T>
  bool holds() const noexcept {
    return std::holds_alternative<T>(payload_);
  }

  /// Real payload of a Real element; throws ModelMismatch otherwise.
  double real_value() const;

  /// Interval payload of an Interval element or of a one-part union.
  Interval as_interval() const;

 private:
  Payload payload_;
};

struct SpaceDescriptor {
  Model model;
  bool isotropic;
  Element zero;
};

/// Descriptor for a model; `dim` is used by the Vector model only.
SpaceDescriptor describe(Model m, std::size_t dim = 1);

/// Zero element of the space x lives in (same vector dimension).
Element theta_like(const Element& x);

bool is_isotropic(Model m) noexcept;

Element add(const Element& x, const Element& y);
Element scale(double lambda, const Element& x);
/// Metric h_X. Hausdorff distance for the set models.
double dist(const Element& x, const Element& y);
/// dist(x, theta).
double norm(const Element& x);
/// Convexifying operator P.
Element convexify(const Element& x);
/// z with x = y + z. Throws NoDifference or NonIsotropic.
Element hukuhara_diff(const Element& x, const Element& y);
bool is_convex(const Element& x);
bool is_invertible(const Element& x);
/// x' with x + x' = theta. Throws NotInvertible.
Element inverse(const Element& x);
/// r_+ x + r_- x'. Requires x convex and invertible.
Element lift_real(double r, const Element& x);

/// Payload comparison with absolute tolerance (default 1e-12).
bool approx_equal(const Element& x, const Element& y, double tol = 1e-12);

/// Sum of nonnegative-weighted elements, sum_i w_i x_i.
Element weighted_sum(const std::vector<double>& weights, const std::vector<Element>& xs);

nlohmann::json to_json(const Element& x);
Element element_from_json(const nlohmann::json& j);

std::string to_string(const Element& x);

}  // namespace ksr
