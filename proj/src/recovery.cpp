#include "ksr/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ksr/error.hpp"

namespace ksr {

Knots optimal_knots(std::size_t n, double a, double b) {
  require(n >= 1, Errc::InvalidArgument, "need at least one knot");
  require(b > a, Errc::InvalidArgument, "need a < b");
  Knots k;
  const double L = b - a;
  for (std::size_t i = 1; i <= n; ++i) {
    k.t.push_back(a + static_cast<double>(2 * i - 1) * L / static_cast<double>(2 * n));
  }
  k.tau = cell_bounds(k.t, a, b);
  return k;
}

std::vector<double> cell_bounds(const std::vector<double>& t, double a, double b) {
  std::vector<double> tau{a};
  for (std::size_t i = 1; i < t.size(); ++i) tau.push_back(0.5 * (t[i - 1] + t[i]));
  tau.push_back(b);
  return tau;
}

void check_knots(const std::vector<double>& t, double h, double a, double b) {
  require(!t.empty(), Errc::KnotViolation, "no knots");
  require(h > 0.0, Errc::KnotViolation, "half-width must be positive");
  const double tol = 1e-12 * std::max(1.0, b - a);
  require(a <= t.front() - h + tol, Errc::KnotViolation, "first window leaves [a,b]");
  require(t.back() + h <= b + tol, Errc::KnotViolation, "last window leaves [a,b]");
  for (std::size_t i = 1; i < t.size(); ++i) {
    require(t[i - 1] + h < t[i] - h, Errc::KnotViolation, "windows overlap");
  }
}

MeanInfo mean_info(const GridFunction& f, const std::vector<double>& t, double h) {
  check_knots(t, h, f.a(), f.b());
  MeanInfo info{f.a(), f.b(), h, t, {}};
  for (double tk : t) info.means.push_back(scale(0.5 / h, integrate(f, tk - h, tk + h)));
  return info;
}

Element method_convexify(const MeanInfo& info, double u) {
  const auto tau = cell_bounds(info.t, info.a, info.b);
  std::size_t k = 0;
  while (k + 1 < info.t.size() && u >= tau[k + 1]) ++k;
  return info.means[k];
}

GridFunction recover_convexify(const MeanInfo& info, std::size_t N) {
  return GridFunction::tabulate(info.a, info.b, N, [&](double u) { return method_convexify(info, u); });
}

double error_convexify(std::size_t n, double h, const Modulus& w, double L) {
  const double c = L / (2.0 * static_cast<double>(n));
  require(h > 0.0 && h <= c + 1e-15, Errc::KnotViolation, "need 0 < h <= (b-a)/(2n)");
  return w.primitive(std::max(0.0, c - h), c + h) / (2.0 * h);
}

Element recover_integral(const MeanInfo& info) {
  const double n = static_cast<double>(info.t.size());
  std::vector<double> wts(info.means.size(), (info.b - info.a) / n);
  return weighted_sum(wts, info.means);
}

double error_integral(std::size_t n, double h, const Modulus& w, double L) {
  const double nn = static_cast<double>(n);
  const double c = L / (2.0 * nn);
  require(h >= 0.0 && h <= c + 1e-15, Errc::KnotViolation, "need 0 <= h <= (b-a)/(2n)");
  return 2.0 * nn * std::max(0.0, 1.0 - 2.0 * nn * h / L) * w.I(c);
}

RealFn lower_extremal_mean(const std::vector<double>& t0, double h, const Modulus& w, double a, double b) {
  check_knots(t0, h, a, b);
  const auto t = std::make_shared<std::vector<double>>(t0);
  const auto tau = cell_bounds(t0, a, b);
  const std::size_t n = t0.size();
  // longest half-cell; its outer end is a tau point p = tau[j]
  std::size_t j = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (t0[i] - tau[i] > best) {
      best = t0[i] - tau[i];
      j = i;
    }
    if (tau[i + 1] - t0[i] > best) {
      best = tau[i + 1] - t0[i];
      j = i + 1;
    }
  }
  const double p = tau[j];
  const std::size_t kw = j < n ? j : n - 1;  // a window next to p
  // mean of w(|s - p|) over window kw
  auto int_abs = [&w](double l, double r, double c) {
    if (r <= c) return w.primitive(c - r, c - l);
    if (l >= c) return w.primitive(l - c, r - c);
    return w.I(c - l) + w.I(r - c);
  };
  const double A = int_abs(t0[kw] - h, t0[kw] + h, p) / (2.0 * h);
  const std::size_t kmin = j == 0 ? 0 : j - 1;  // core windows kmin..kmax
  const std::size_t kmax = j == n ? n - 1 : j;
  const double cl = j == 0 ? a : t0[j - 1] - h;
  const double cr = j == n ? b : t0[j] + h;
  return [t, h, w, A, p, kmin, kmax, cl, cr](double u) {
    const auto& k = *t;
    for (int guard = 0; guard < 1 << 20; ++guard) {
      if (u >= cl && u <= cr) return A - w(std::abs(u - p));
      if (u > cr) {
        // last window at or left of u
        std::size_t i = kmax;
        while (i + 1 < k.size() && k[i + 1] - h <= u) ++i;
        if (u <= k[i] + h && i > kmax) {
          u = k[i - 1] + k[i] - u;
        } else {
          u = k[i] + h;
        }
      } else {
        std::size_t i = kmin;
        while (i > 0 && k[i - 1] + h >= u) --i;
        if (u >= k[i] - h && i < kmin) {
          u = k[i] + k[i + 1] - u;
        } else {
          u = k[i] - h;
        }
      }
    }
    return A - w(std::abs(u - p));
  };
}

RealFn lower_extremal_integral(const std::vector<double>& t0, double h, const Modulus& w, double a, double b) {
  require(w.concave(), Errc::NonConcave, "ω not concave: lower construction unavailable");
  check_knots(t0, h, a, b);
  const double L = b - a;
  const double n = static_cast<double>(t0.size());
  const double c = L / (2.0 * n);
  const double q = 2.0 * n * h / L;  // share of the cell covered by the window
  auto y0 = [w, h, c, q](double s) {
    s = std::min(std::abs(s), c);
    if (s <= h) return -q * w((h - s) / q);
    if (q >= 1.0) return 0.0;
    return (1.0 - q) * w((s - h) / (1.0 - q));
  };
  // int_0^h y0 = -q^2 I(0, c), so C = q^2 I(0, c) / h
  const double C = q * q * w.I(c) / h;
  const auto t = std::make_shared<std::vector<double>>(t0);
  return [t, y0, C](double u) {
    double m = y0(u - t->front());
    for (double tk : *t) m = std::min(m, y0(u - tk));
    return m + C;
  };
}

Element polyline_eval(const std::vector<double>& nodes, const std::vector<Element>& values, double t) {
  require(nodes.size() == values.size() && nodes.size() >= 2, Errc::InvalidArgument, "node/value mismatch");
  std::size_t k = 0;
  while (k + 2 < nodes.size() && t >= nodes[k + 1]) ++k;
  const double d = nodes[k + 1] - nodes[k];
  const double s = std::clamp((t - nodes[k]) / d, 0.0, 1.0);
  return weighted_sum({1.0 - s, s}, {values[k], values[k + 1]});
}

GridFunction polyline(const std::vector<double>& nodes, const std::vector<Element>& values, std::size_t N) {
  for (const auto& v : values) require(is_convex(v), Errc::InvalidArgument, "node values must be convex");
  return GridFunction::tabulate(nodes.front(), nodes.back(), N,
                                [&](double t) { return polyline_eval(nodes, values, t); });
}

std::vector<double> uniform_partition(std::size_t n, double a, double b) {
  require(n >= 1, Errc::InvalidArgument, "need n >= 1");
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  return t;
}

GridFunction identity_method(const GridFunction& f, std::size_t n) {
  const auto nodes = uniform_partition(n, f.a(), f.b());
  std::vector<Element> vals;
  for (double x : nodes) vals.push_back(f.eval(x));
  return polyline(nodes, vals, f.N());
}

double polyline_error(double tk, double tk1, double t, const Modulus& w) {
  require(tk1 > tk && t >= tk && t <= tk1, Errc::OutOfDomain, "t must lie in the segment");
  const double d = tk1 - tk;
  return (tk1 - t) * (t - tk) / (d * d) * w.I(d);
}

double polyline_uniform_error(std::size_t n, const Modulus& w, double L) {
  require(n >= 1, Errc::InvalidArgument, "need n >= 1");
  return 0.25 * w.I(L / static_cast<double>(n));
}

Element polyline_derivative(const std::vector<double>& nodes, const std::vector<Element>& values, double t) {
  require(nodes.size() == values.size() && nodes.size() >= 2, Errc::InvalidArgument, "node/value mismatch");
  std::size_t k = 0;
  while (k + 2 < nodes.size() && t >= nodes[k + 1]) ++k;
  return scale(1.0 / (nodes[k + 1] - nodes[k]), hukuhara_diff(values[k + 1], values[k]));
}

double derivative_error_bound(double tk, double tk1, double t, const Modulus& w) {
  require(tk1 > tk && t >= tk && t <= tk1, Errc::OutOfDomain, "t must lie in the segment");
  return (w.I(t - tk) + w.I(tk1 - t)) / (tk1 - tk);
}

double derivative_recovery_value(std::size_t n, const Modulus& w, double L) {
  require(n >= 1, Errc::InvalidArgument, "need n >= 1");
  const double nn = static_cast<double>(n);
  return nn / L * w.I(L / nn);
}

DerivativeExtremal derivative_extremal(std::size_t n, const Modulus& w, double a, double b) {
  require(n >= 1, Errc::InvalidArgument, "need n >= 1");
  const double d = (b - a) / static_cast<double>(n);
  const double Id = w.I(d);
  const double mean = Id / d;
  // every cell has exactly one even endpoint, which is the nearest even node
  auto cell = [a, d, n](double t) {
    const double r = (t - a) / d;
    return std::min(static_cast<std::size_t>(std::max(0.0, std::floor(r))), n - 1);
  };
  DerivativeExtremal out;
  out.g = [=](double t) {
    const std::size_t j = cell(t);
    const double tj = a + d * static_cast<double>(j);
    const double dist = j % 2 == 0 ? t - tj : tj + d - t;
    return w(std::clamp(dist, 0.0, d)) - mean;
  };
  out.f = [=](double t) {
    t = std::clamp(t, a, b);
    const std::size_t j = cell(t);
    const double tj = a + d * static_cast<double>(j);
    const double x = std::clamp(t - tj, 0.0, d);
    const double part = j % 2 == 0 ? w.I(x) : w.primitive(d - x, d);
    return static_cast<double>(j) * Id + part - mean * (t - a);
  };
  return out;
}

}  // namespace ksr
