#include "ksr/landau.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ksr/error.hpp"

namespace ksr {

void check_window(const WindowConfig& c, double a, double b, bool allow_point) {
  const double tol = 1e-12 * std::max(1.0, b - a);
  require(c.g1 >= 0 && c.g2 >= 0 && c.h1 >= 0 && c.h2 >= 0, Errc::WindowViolation, "negative window size");
  require(allow_point || c.g1 + c.g2 > 0, Errc::WindowViolation, "inner window is a point");
  require(c.h1 + c.h2 > 0, Errc::WindowViolation, "outer window is a point");
  require(c.g1 <= c.h1 + tol && c.g2 <= c.h2 + tol, Errc::WindowViolation, "inner window must lie in the outer one");
  require(c.t - c.h1 >= a - tol && c.t + c.h2 <= b + tol, Errc::WindowViolation, "outer window leaves [a,b]");
}

WindowConfig clamped_windows(double t, double gamma, double h, double a, double b) {
  require(t >= a && t <= b, Errc::OutOfDomain, "t must lie in [a,b]");
  require(h > 0 && gamma >= 0 && gamma <= h, Errc::WindowViolation, "need 0 <= gamma <= h, h > 0");
  return {t, std::min(gamma, t - a), std::min(gamma, b - t), std::min(h, t - a), std::min(h, b - t)};
}

Element divided_difference(const GridFunction& f, double t, double g1, double g2) {
  require(g1 + g2 > 0, Errc::WindowViolation, "inner window is a point");
  return scale(1.0 / (g1 + g2), hukuhara_diff(f.eval(t + g2), f.eval(t - g1)));
}

double K_value(const WindowConfig& c, const Modulus& w) {
  const double H = c.H();
  require(H > 0, Errc::WindowViolation, "outer window is a point");
  const double l = c.h1 - c.g1;
  const double r = c.h2 - c.g2;
  require(l >= -1e-15 && r >= -1e-15, Errc::WindowViolation, "inner window must lie in the outer one");
  const double D = std::max(0.0, l) + std::max(0.0, r);
  if (D <= 0.0) return 0.0;
  return D / (H * H) * (w.I(H * std::max(0.0, l) / D) + w.I(H * std::max(0.0, r) / D));
}

double derivative_constant(double h1, double h2, const Modulus& w) {
  require(h1 + h2 > 0, Errc::WindowViolation, "outer window is a point");
  return (w.I(h1) + w.I(h2)) / (h1 + h2);
}

LandauVariant parse_variant(const std::string& s) {
  if (s == "b") return LandauVariant::B;
  if (s == "c") return LandauVariant::C;
  if (s == "d") return LandauVariant::D;
  if (s == "e") return LandauVariant::E;
  fail(Errc::ParseError, "unknown variant '" + s + "' (expected b, c, d or e)");
}

std::string variant_name(LandauVariant v) {
  switch (v) {
    case LandauVariant::B: return "b";
    case LandauVariant::C: return "c";
    case LandauVariant::D: return "d";
    case LandauVariant::E: return "e";
  }
  return "?";
}

double landau_rhs(LandauVariant v, const WindowConfig& c, const Modulus& w, double seminorm, double second) {
  const double H = c.H();
  switch (v) {
    case LandauVariant::B: return K_value(c, w) * seminorm + second;
    case LandauVariant::C: return derivative_constant(c.h1, c.h2, w) * seminorm + second;
    case LandauVariant::D: return K_value(c, w) * seminorm + 2.0 / H * second;
    case LandauVariant::E: return derivative_constant(c.h1, c.h2, w) * seminorm + 2.0 / H * second;
  }
  return 0.0;
}

namespace {

// Nonnegative glued extremal on the outer window whose inner mean exceeds the
// outer mean by K. Returned as values on the outer window only.
RealFn window_bump(const WindowConfig& c, const Modulus& w, std::size_t N) {
  const double l = c.t - c.h1;
  const double r = c.t + c.h2;
  const StepWeight inner = StepWeight::indicator(c.t - c.g1, c.t + c.g2, 1.0 / (c.g1 + c.g2));
  const StepWeight outer = StepWeight::indicator(l, r, 1.0 / c.H());
  const GluedExtremal ge = glue_extremal(sigma_decompose(psi_primitive(inner, outer)), w, l, r, N);
  const GridFunction G = GridFunction::tabulate_real(l, r, N, ge.g);
  const double diff = integrate_real(G, c.t - c.g1, c.t + c.g2) / (c.g1 + c.g2) - integrate_real(G, l, r) / c.H();
  const double s = diff < 0 ? -1.0 : 1.0;
  double lo = 0.0;
  bool first = true;
  for (double v : G.reals()) {
    lo = first ? s * v : std::min(lo, s * v);
    first = false;
  }
  const RealFn g = ge.g;
  return [g, s, lo](double u) { return s * g(u) - lo; };
}

double node_sup(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.reals()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

LandauExtremal landau_extremal(LandauVariant v, const WindowConfig& c, const Modulus& w, double a, double b,
                               std::size_t N) {
  const bool needs_inner = v == LandauVariant::B || v == LandauVariant::D;
  check_window(c, a, b, !needs_inner);
  if (needs_inner) {
    require(w.concave(), Errc::NonConcave, "ω not concave: sharpness unavailable, bound still valid");
  }
  const double l = c.t - c.h1;
  const double r = c.t + c.h2;
  const double top = std::max(w(c.h1), w(c.h2));
  RealFn g;
  switch (v) {
    case LandauVariant::C: {
      const double t = c.t;
      g = [w, t, top, l, r](double u) { return top - w(std::abs(std::clamp(u, l, r) - t)); };
      break;
    }
    case LandauVariant::E: {
      const double t = c.t;
      g = [w, t, top](double u) { return std::max(0.0, top - w(std::abs(u - t))); };
      break;
    }
    case LandauVariant::B: {
      const RealFn bump = window_bump(c, w, N);
      g = [bump, l, r](double u) { return bump(std::clamp(u, l, r)); };
      break;
    }
    case LandauVariant::D: {
      const RealFn bump = window_bump(c, w, N);
      // zero at the end that lies inside (a, b); the longer side by convention
      const double z = c.h2 >= c.h1 ? bump(r) : bump(l);
      g = [bump, l, r, z](double u) { return u < l || u > r ? 0.0 : std::max(0.0, bump(u) - z); };
      break;
    }
  }
  LandauExtremal out;
  out.g = GridFunction::tabulate_real(a, b, N, g);
  GridFunction F = antiderivative(out.g, Element::real(0.0));
  if (v == LandauVariant::D || v == LandauVariant::E) {
    const double mid = 0.5 * (F.eval(l).real_value() + F.eval(r).real_value());
    double lo = l;
    double hi = r;
    for (int k = 0; k < 200; ++k) {
      const double m = 0.5 * (lo + hi);
      (F.eval(m).real_value() < mid ? lo : hi) = m;
    }
    out.xi = 0.5 * (lo + hi);
    auto vals = F.reals();
    for (double& x : vals) x -= mid;
    F = GridFunction::from_reals(a, b, vals);
  } else {
    out.xi = a;
  }
  out.f = F;
  out.norm_C = node_sup(F);
  if (needs_inner) {
    out.lhs = norm(divided_difference(F, c.t, c.g1, c.g2));
  } else {
    out.lhs = std::abs(g(c.t));
  }
  const double second = v == LandauVariant::B || v == LandauVariant::C
                            ? norm(divided_difference(F, c.t, c.h1, c.h2))
                            : out.norm_C;
  out.rhs = landau_rhs(v, c, w, 1.0, second);
  return out;
}

StechkinTarget parse_target(const std::string& s) {
  if (s == "derivative") return StechkinTarget::Derivative;
  if (s == "divided") return StechkinTarget::Divided;
  fail(Errc::ParseError, "unknown target '" + s + "' (expected derivative or divided)");
}

double stechkin_value(StechkinTarget target, const WindowConfig& c, const Modulus& w) {
  if (target == StechkinTarget::Derivative) return derivative_constant(c.h1, c.h2, w);
  require(w.concave(), Errc::NonConcave, "ω not concave: the divided-difference value needs concavity");
  return K_value(c, w);
}

StechkinCertificate stechkin_certificate(StechkinTarget target, const WindowConfig& c, const Modulus& w, double a,
                                         double b, std::size_t N, unsigned seed) {
  StechkinCertificate out{stechkin_value(target, c, w), 0.0, true};
  const bool deriv = target == StechkinTarget::Derivative;
  const LandauExtremal ex = landau_extremal(deriv ? LandauVariant::E : LandauVariant::D, c, w, a, b, N);
  const double Af = deriv ? ex.g.eval(c.t).real_value() : divided_difference(ex.f, c.t, c.g1, c.g2).real_value();
  const double H = c.H();
  out.min_gap = std::abs(Af);  // T = 0
  for (int k = 1; k <= 8; ++k) {
    const double s = k / 8.0;
    const double p1 = s * c.h1;
    const double p2 = s * c.h2;
    const double q = divided_difference(ex.f, c.t, p1, p2).real_value();
    const double lam_max = (p1 + p2) / H;
    for (int j = -10; j <= 10; ++j) {
      const double lam = lam_max * j / 10.0;
      out.min_gap = std::min(out.min_gap, std::abs(Af - lam * q));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(65);
    for (double& x : v) x = U(rng);
    const GridFunction f = GridFunction::from_reals(a, b, v);
    if (std::abs(divided_difference(f, c.t, c.h1, c.h2).real_value()) > 2.0 / H + 1e-12) out.norm_ok = false;
  }
  return out;
}

DeltaRecovery delta_recovery_value(double t, double h, const Modulus& w, double a, double b) {
  const WindowConfig c = clamped_windows(t, 0.0, h, a, b);
  require(c.H() > 0, Errc::WindowViolation, "outer window is a point");
  const double value = std::max(w(c.h1), w(c.h2));
  return {0.5 * c.H() * value - 0.5 * (w.I(c.h1) + w.I(c.h2)), value};
}

}  // namespace ksr
