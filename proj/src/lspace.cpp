#include "ksr/lspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ksr/error.hpp"

namespace ksr {

namespace {

constexpr double kMergeTol = 1e-12;

std::vector<Interval> normalize_parts(std::vector<Interval> parts) {
  for (const auto& p : parts) {
    require(std::isfinite(p.lo) && std::isfinite(p.hi), Errc::InvalidArgument,
            "interval endpoints must be finite");
    require(p.lo <= p.hi, Errc::InvalidArgument, "interval with lo > hi");
  }
  require(!parts.empty(), Errc::InvalidArgument, "empty interval union");
  std::sort(parts.begin(), parts.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  std::vector<Interval> out;
  out.reserve(parts.size());
  for (const auto& p : parts) {
    if (!out.empty() && p.lo <= out.back().hi + kMergeTol) {
      out.back().hi = std::max(out.back().hi, p.hi);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

// Parts view shared by Interval and IntervalUnion so mixed operands work.
std::vector<Interval> parts_of(const Element& x) {
  if (x.holds<Interval>()) return {x.as<Interval>()};
  return x.as<IntervalUnion>().parts;
}

bool is_set_model(Model m) { return m == Model::Interval || m == Model::IntervalUnion; }

void check_same_model(const Element& x, const Element& y) {
  if (x.model() == y.model()) {
    if (x.model() == Model::Vector) {
      require(x.as<Vector>().v.size() == y.as<Vector>().v.size(), Errc::ModelMismatch,
              "vector dimensions differ");
    }
    return;
  }
  require(is_set_model(x.model()) && is_set_model(y.model()), Errc::ModelMismatch,
          std::string("cannot combine ") + std::string(model_name(x.model())) + " with " +
              std::string(model_name(y.model())));
}

// sup_{p in A} d(p, B) for sorted disjoint part lists.
double directed_hausdorff(const std::vector<Interval>& A, const std::vector<Interval>& B) {
  auto point_dist = [&B](double p) {
    auto it = std::lower_bound(B.begin(), B.end(), p,
                               [](const Interval& iv, double v) { return iv.hi < v; });
    double best = INFINITY;
    if (it != B.end()) best = std::min(best, p < it->lo ? it->lo - p : 0.0);
    if (it != B.begin()) best = std::min(best, p - std::prev(it)->hi);
    return best;
  };
  double worst = 0.0;
  for (const auto& a : A) {
    worst = std::max({worst, point_dist(a.lo), point_dist(a.hi)});
  }
  // d(., B) peaks inside A only at gap midpoints of B.
  for (std::size_t j = 0; j + 1 < B.size(); ++j) {
    const double mid = 0.5 * (B[j].hi + B[j + 1].lo);
    for (const auto& a : A) {
      if (a.lo <= mid && mid <= a.hi) worst = std::max(worst, point_dist(mid));
    }
  }
  return worst;
}

Element set_result(std::vector<Interval> parts) {
  parts = normalize_parts(std::move(parts));
  return Element(IntervalUnion{std::move(parts)});
}

}  // namespace

std::string_view model_name(Model m) noexcept {
  switch (m) {
    case Model::Real: return "real";
    case Model::Vector: return "vector";
    case Model::Interval: return "interval";
    case Model::IntervalUnion: return "union";
    case Model::MaxSpace: return "maxspace";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  for (Model m : {Model::Real, Model::Vector, Model::Interval, Model::IntervalUnion, Model::MaxSpace}) {
    if (model_name(m) == name) return m;
  }
  fail(Errc::ParseError, "unknown model '" + std::string(name) + "'");
}

Element::Element(Vector x) : payload_(std::move(x)) {
  require(!as<Vector>().v.empty(), Errc::InvalidArgument, "vector of dimension 0");
}

Element::Element(Interval x) : payload_(x) {
  require(std::isfinite(x.lo) && std::isfinite(x.hi), Errc::InvalidArgument,
          "interval endpoints must be finite");
  require(x.lo <= x.hi, Errc::InvalidArgument, "interval with lo > hi");
}

Element::Element(IntervalUnion x) : payload_(IntervalUnion{normalize_parts(std::move(x.parts))}) {}

Element::Element(MaxScalar x) : payload_(x) {
  require(x.v >= 0.0, Errc::InvalidArgument, "max-space elements are nonnegative");
}

double Element::real_value() const {
  require(holds<Real>(), Errc::ModelMismatch, "expected a real element");
  return as<Real>().v;
}

Interval Element::as_interval() const {
  if (holds<Interval>()) return as<Interval>();
  require(holds<IntervalUnion>() && as<IntervalUnion>().parts.size() == 1, Errc::ModelMismatch,
          "expected an interval");
  return as<IntervalUnion>().parts.front();
}

bool is_isotropic(Model m) noexcept {
  // Cancellation fails for non-convex compact sets, so unions are not isotropic:
  // h({0,2}+[0,1], {0,1,2}+[0,1]) = 1/2 < 1 = h({0,2}, {0,1,2}).
  return m == Model::Real || m == Model::Vector || m == Model::Interval;
}

SpaceDescriptor describe(Model m, std::size_t dim) {
  Element zero;
  switch (m) {
    case Model::Real: zero = Element::real(0.0); break;
    case Model::Vector: zero = Element::vector(std::vector<double>(dim, 0.0)); break;
    case Model::Interval: zero = Element::interval(0.0, 0.0); break;
    case Model::IntervalUnion: zero = Element::interval_union({{0.0, 0.0}}); break;
    case Model::MaxSpace: zero = Element::max_scalar(0.0); break;
  }
  return {m, is_isotropic(m), zero};
}

Element theta_like(const Element& x) {
  if (x.holds<Vector>()) return describe(Model::Vector, x.as<Vector>().v.size()).zero;
  return describe(x.model()).zero;
}

Element add(const Element& x, const Element& y) {
  check_same_model(x, y);
  switch (x.model()) {
    case Model::Real: return Element::real(x.as<Real>().v + y.as<Real>().v);
    case Model::Vector: {
      std::vector<double> v = x.as<Vector>().v;
      const auto& w = y.as<Vector>().v;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
      return Element::vector(std::move(v));
    }
    case Model::MaxSpace: return Element::max_scalar(std::max(x.as<MaxScalar>().v, y.as<MaxScalar>().v));
    case Model::Interval:
    case Model::IntervalUnion: {
      if (x.holds<Interval>() && y.holds<Interval>()) {
        const auto& p = x.as<Interval>();
        const auto& q = y.as<Interval>();
        return Element::interval(p.lo + q.lo, p.hi + q.hi);
      }
      std::vector<Interval> sums;
      for (const auto& p : parts_of(x)) {
        for (const auto& q : parts_of(y)) sums.push_back({p.lo + q.lo, p.hi + q.hi});
      }
      return set_result(std::move(sums));
    }
  }
  fail(Errc::ModelMismatch, "unreachable");
}

Element scale(double lambda, const Element& x) {
  switch (x.model()) {
    case Model::Real: return Element::real(lambda * x.as<Real>().v);
    case Model::Vector: {
      std::vector<double> v = x.as<Vector>().v;
      for (double& c : v) c *= lambda;
      return Element::vector(std::move(v));
    }
    case Model::MaxSpace: return Element::max_scalar(std::abs(lambda) * x.as<MaxScalar>().v);
    case Model::Interval: {
      const auto& p = x.as<Interval>();
      if (lambda >= 0.0) return Element::interval(lambda * p.lo, lambda * p.hi);
      return Element::interval(lambda * p.hi, lambda * p.lo);
    }
    case Model::IntervalUnion: {
      std::vector<Interval> parts;
      for (const auto& p : x.as<IntervalUnion>().parts) {
        if (lambda >= 0.0) {
          parts.push_back({lambda * p.lo, lambda * p.hi});
        } else {
          parts.push_back({lambda * p.hi, lambda * p.lo});
        }
      }
      return set_result(std::move(parts));
    }
  }
  fail(Errc::ModelMismatch, "unreachable");
}

double dist(const Element& x, const Element& y) {
  check_same_model(x, y);
  switch (x.model()) {
    case Model::Real: return std::abs(x.as<Real>().v - y.as<Real>().v);
    case Model::Vector: {
      const auto& v = x.as<Vector>().v;
      const auto& w = y.as<Vector>().v;
      double s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) s += (v[i] - w[i]) * (v[i] - w[i]);
      return std::sqrt(s);
    }
    case Model::MaxSpace: return std::abs(x.as<MaxScalar>().v - y.as<MaxScalar>().v);
    case Model::Interval:
    case Model::IntervalUnion: {
      if (x.holds<Interval>() && y.holds<Interval>()) {
        const auto& p = x.as<Interval>();
        const auto& q = y.as<Interval>();
        return std::max(std::abs(p.lo - q.lo), std::abs(p.hi - q.hi));
      }
      const auto A = parts_of(x);
      const auto B = parts_of(y);
      return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
    }
  }
  fail(Errc::ModelMismatch, "unreachable");
}

double norm(const Element& x) { return dist(x, theta_like(x)); }

Element convexify(const Element& x) {
  switch (x.model()) {
    case Model::IntervalUnion: {
      const auto& parts = x.as<IntervalUnion>().parts;
      return Element::interval(parts.front().lo, parts.back().hi);
    }
    case Model::MaxSpace:
      // Only theta satisfies (a+b)x = ax (+) bx here, so P collapses the space.
      return Element::max_scalar(0.0);
    default: return x;
  }
}

bool is_convex(const Element& x) {
  switch (x.model()) {
    case Model::IntervalUnion: return x.as<IntervalUnion>().parts.size() == 1;
    case Model::MaxSpace: return x.as<MaxScalar>().v == 0.0;
    default: return true;
  }
}

bool is_invertible(const Element& x) {
  switch (x.model()) {
    case Model::Interval: return x.as<Interval>().lo == x.as<Interval>().hi;
    case Model::IntervalUnion: {
      const auto& parts = x.as<IntervalUnion>().parts;
      return parts.size() == 1 && parts.front().lo == parts.front().hi;
    }
    case Model::MaxSpace: return x.as<MaxScalar>().v == 0.0;
    default: return true;
  }
}

Element inverse(const Element& x) {
  require(is_invertible(x), Errc::NotInvertible, to_string(x) + " has no inverse");
  return scale(-1.0, x);
}

Element hukuhara_diff(const Element& x, const Element& y) {
  check_same_model(x, y);
  switch (x.model()) {
    case Model::Real: return Element::real(x.as<Real>().v - y.as<Real>().v);
    case Model::Vector: return add(x, scale(-1.0, y));
    case Model::MaxSpace:
      fail(Errc::NonIsotropic, "Hukuhara difference is not unique in the max space");
    case Model::Interval:
    case Model::IntervalUnion: {
      require(is_convex(x) && is_convex(y), Errc::NonIsotropic,
              "Hukuhara difference of non-convex sets is not unique");
      const Interval p = x.as_interval();
      const Interval q = y.as_interval();
      const double lo = p.lo - q.lo;
      const double hi = p.hi - q.hi;
      if (hi < lo) {
        // Widths equal up to rounding still admit a (degenerate) difference.
        const double slack = 1e-12 * std::max({1.0, std::abs(p.lo), std::abs(p.hi), std::abs(q.lo), std::abs(q.hi)});
        require(lo - hi <= slack, Errc::NoDifference,
                "width of " + to_string(x) + " is smaller than width of " + to_string(y));
        const double mid = 0.5 * (lo + hi);
        return Element::interval(mid, mid);
      }
      return Element::interval(lo, hi);
    }
  }
  fail(Errc::ModelMismatch, "unreachable");
}

Element lift_real(double r, const Element& x) {
  require(is_convex(x), Errc::NotInvertible, "lifting requires a convex element");
  require(is_invertible(x), Errc::NotInvertible, to_string(x) + " is not invertible");
  if (r >= 0.0) return scale(r, x);
  return scale(-r, inverse(x));
}

bool approx_equal(const Element& x, const Element& y, double tol) {
  if (x.model() != y.model()) {
    if (!(is_set_model(x.model()) && is_set_model(y.model()))) return false;
    const auto A = parts_of(x);
    const auto B = parts_of(y);
    if (A.size() != B.size()) return false;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (std::abs(A[i].lo - B[i].lo) > tol || std::abs(A[i].hi - B[i].hi) > tol) return false;
    }
    return true;
  }
  switch (x.model()) {
    case Model::Real: return std::abs(x.as<Real>().v - y.as<Real>().v) <= tol;
    case Model::MaxSpace: return std::abs(x.as<MaxScalar>().v - y.as<MaxScalar>().v) <= tol;
    case Model::Vector: {
      const auto& v = x.as<Vector>().v;
      const auto& w = y.as<Vector>().v;
      if (v.size() != w.size()) return false;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i] - w[i]) > tol) return false;
      }
      return true;
    }
    case Model::Interval:
    case Model::IntervalUnion: {
      const auto A = parts_of(x);
      const auto B = parts_of(y);
      if (A.size() != B.size()) return false;
      for (std::size_t i = 0; i < A.size(); ++i) {
        if (std::abs(A[i].lo - B[i].lo) > tol || std::abs(A[i].hi - B[i].hi) > tol) return false;
      }
      return true;
    }
  }
  return false;
}

Element weighted_sum(const std::vector<double>& weights, const std::vector<Element>& xs) {
  require(!xs.empty() && weights.size() == xs.size(), Errc::InvalidArgument,
          "weighted_sum needs matching nonempty inputs");
  Element acc = scale(weights[0], xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) acc = add(acc, scale(weights[i], xs[i]));
  return acc;
}

nlohmann::json to_json(const Element& x) {
  nlohmann::json j;
  j["model"] = std::string(model_name(x.model()));
  switch (x.model()) {
    case Model::Real: j["payload"] = {x.as<Real>().v}; break;
    case Model::Vector: j["payload"] = x.as<Vector>().v; break;
    case Model::MaxSpace: j["payload"] = {x.as<MaxScalar>().v}; break;
    case Model::Interval: j["payload"] = {x.as<Interval>().lo, x.as<Interval>().hi}; break;
    case Model::IntervalUnion: {
      auto arr = nlohmann::json::array();
      for (const auto& p : x.as<IntervalUnion>().parts) arr.push_back({p.lo, p.hi});
      j["payload"] = arr;
      break;
    }
  }
  return j;
}

Element element_from_json(const nlohmann::json& j) {
  try {
    const Model m = parse_model(j.at("model").get<std::string>());
    const auto& p = j.at("payload");
    switch (m) {
      case Model::Real: return Element::real(p.at(0).get<double>());
      case Model::Vector: return Element::vector(p.get<std::vector<double>>());
      case Model::MaxSpace: return Element::max_scalar(p.at(0).get<double>());
      case Model::Interval: {
        require(p.size() == 2, Errc::ParseError, "interval payload needs two numbers");
        return Element::interval(p.at(0).get<double>(), p.at(1).get<double>());
      }
      case Model::IntervalUnion: {
        std::vector<Interval> parts;
        for (const auto& q : p) parts.push_back({q.at(0).get<double>(), q.at(1).get<double>()});
        return Element::interval_union(std::move(parts));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("bad element json: ") + e.what());
  }
  fail(Errc::ParseError, "bad element json");
}

std::string to_string(const Element& x) {
  std::ostringstream os;
  os.precision(17);
  switch (x.model()) {
    case Model::Real: os << x.as<Real>().v; break;
    case Model::MaxSpace: os << "max(" << x.as<MaxScalar>().v << ")"; break;
    case Model::Vector: {
      os << "(";
      const auto& v = x.as<Vector>().v;
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
      os << ")";
      break;
    }
    case Model::Interval: os << "[" << x.as<Interval>().lo << ", " << x.as<Interval>().hi << "]"; break;
    case Model::IntervalUnion: {
      os << "{";
      const auto& parts = x.as<IntervalUnion>().parts;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        os << (i ? " u " : "") << "[" << parts[i].lo << ", " << parts[i].hi << "]";
      }
      os << "}";
      break;
    }
  }
  return os.str();
}

}  // namespace ksr
