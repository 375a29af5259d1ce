#include "ksr/ostrowski.hpp"

#include <algorithm>
#include <cmath>

#include "ksr/error.hpp"

namespace ksr {

std::string case_name(OstrowskiCase c) {
  switch (c) {
    case OstrowskiCase::Nested: return "Nested";
    case OstrowskiCase::Overlap: return "Overlap";
    case OstrowskiCase::Disjoint: return "Disjoint";
  }
  return "?";
}

TwoIntervalConfig make_config(double a, double b, double c, double d) {
  require(b > a && d > c, Errc::InvalidArgument, "degenerate interval");
  if (c < a || (c == a && d > b)) {
    std::swap(a, c);
    std::swap(b, d);
  }
  TwoIntervalConfig cfg{a, b, c, d, std::max(b - a, d - c), std::min(b - a, d - c), OstrowskiCase::Nested};
  if (d <= b) {
    cfg.kind = OstrowskiCase::Nested;
  } else if (c < b) {
    cfg.kind = OstrowskiCase::Overlap;
  } else {
    cfg.kind = OstrowskiCase::Disjoint;
  }
  return cfg;
}

double two_interval_bound(const TwoIntervalConfig& k, const Modulus& w) {
  const double M = k.M;
  const double m = k.m;
  switch (k.kind) {
    case OstrowskiCase::Nested: {
      if (M == m) return 0.0;
      const double r = M / (M - m);
      return (M - m) / (M * M) * (w.I(r * (k.c - k.a)) + w.I(r * (k.b - k.d)));
    }
    case OstrowskiCase::Overlap: {
      const double x = M * (k.b - k.c) / m;
      return w.primitive(x, k.d - k.a) / (M + m) + (M - m) / (M * M) * w.I(x);
    }
    case OstrowskiCase::Disjoint:
      return w.primitive(k.c - k.b, k.d - k.a) / (M + m);
  }
  return 0.0;
}

namespace {
StepWeight mean_weight(double l, double r) { return StepWeight::indicator(l, r, 1.0 / (r - l)); }
}  // namespace

GluedExtremal two_interval_extremal(const TwoIntervalConfig& k, const Modulus& w, std::size_t N) {
  const Polyline Psi = psi_primitive(mean_weight(k.a, k.b), mean_weight(k.c, k.d));
  return glue_extremal(sigma_decompose(Psi), w, std::min(k.a, k.c), std::max(k.b, k.d), N);
}

double two_interval_functional(const TwoIntervalConfig& k, const GridFunction& f) {
  return ks_functional(mean_weight(k.a, k.b), mean_weight(k.c, k.d), f);
}

double symmetric_bound(double a, double b, double c, double d, const Modulus& w) {
  require(std::abs((c + d) - (a + b)) <= 1e-12 * std::max(1.0, std::abs(a + b)), Errc::InvalidArgument,
          "intervals must share their midpoint");
  require(a <= c && d <= b && c <= d, Errc::InvalidArgument, "[c,d] must lie inside [a,b]");
  return 4.0 * (c - a) / (b - a) * w.I((b - a) / 2.0);
}

double point_vs_mean_bound(double t, double c, double d, const Modulus& w) {
  require(d > c, Errc::InvalidArgument, "need d > c");
  double s;
  if (t <= c) {
    s = w.primitive(c - t, d - t);
  } else if (t >= d) {
    s = w.primitive(t - d, t - c);
  } else {
    s = w.I(t - c) + w.I(d - t);
  }
  return s / (d - c);
}

RealFn point_vs_mean_extremal(double t, const Modulus& w) {
  return [t, w](double u) { return w(std::abs(u - t)); };
}

double point_vs_mean_functional(double t, double c, double d, const GridFunction& f) {
  const Element mean = scale(1.0 / (d - c), integrate(f, c, d));
  return dist(convexify(f.eval(t)), mean);
}

double symmetrized_pair_bound(double t, double a, double b, const Modulus& w) {
  require(b > a, Errc::InvalidArgument, "need b > a");
  require(t >= a && t < (a + b) / 2.0, Errc::OutOfDomain, "t must lie in [a, (a+b)/2)");
  return 2.0 / (b - a) * (w.I(t - a) + w.I((a + b - 2.0 * t) / 2.0));
}

RealFn symmetrized_pair_extremal(double t, double a, double b, const Modulus& w) {
  return [t, a, b, w](double u) { return std::min(w(std::abs(u - t)), w(std::abs(u + t - a - b))); };
}

double symmetrized_pair_functional(double t, double a, double b, const GridFunction& f) {
  const Element avg = scale(0.5, add(convexify(f.eval(t)), convexify(f.eval(a + b - t))));
  const Element mean = scale(1.0 / (b - a), integrate(f, a, b));
  return dist(avg, mean);
}

}  // namespace ksr
