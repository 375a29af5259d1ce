#include "ksr/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "ksr/error.hpp"
#include "ksr/kscore.hpp"
#include "ksr/landau.hpp"
#include "ksr/oracle.hpp"
#include "ksr/ostrowski.hpp"
#include "ksr/recovery.hpp"

namespace ksr {

namespace {

using json = nlohmann::json;

Check finish(Check c) {
  bool ok = c.empirical <= c.theoretical + c.eps;
  if (c.has_extremal) ok = ok && c.extremal <= c.theoretical + c.eps;
  if (c.sharp) ok = ok && c.has_extremal && c.extremal >= c.theoretical - c.eps;
  c.pass = ok;
  return c;
}

SampleSpec spec_of(const VerifyOptions& o, ClassTag cls, double a, double b, const Modulus& w) {
  SampleSpec s;
  s.cls = cls;
  s.w = w;
  s.a = a;
  s.b = b;
  s.N = o.N;
  s.trials = o.trials;
  s.seed = o.seed;
  return s;
}

double sup_over(const SampleSpec& s, const std::function<double(const Sample&)>& fn) {
  return empirical_sup(s.trials, [&](std::size_t i) { return fn(draw(s, i)); }).value;
}

const Element kX = Element::real(1.0);

// half the distance between the images of the lifted pair (f)_x, (f)_x'
double pair_half_gap(const Element& u, const Element& v) { return 0.5 * dist(u, v); }

Check base(const std::string& label, double theo, double eps) {
  Check c;
  c.label = label;
  c.theoretical = theo;
  c.eps = eps;
  return c;
}

void attach_extremal(Check& c, bool sharp, const std::function<double()>& ext) {
  try {
    c.extremal = ext();
    c.has_extremal = true;
    c.sharp = sharp;
  } catch (const Error& e) {
    c.note = e.what();
  }
}

// ---------------------------------------------------------------- bounds

SuiteReport suite_ks(const VerifyOptions& o) {
  SuiteReport r{"ks", {}, true};
  const Modulus& w = o.w;
  const StepWeight p1 = StepWeight::indicator(0.0, 0.25, 1.0);
  const StepWeight p2 = StepWeight::indicator(0.75, 1.0, 1.0);
  Check c = base("psi1=1 on [0,0.25], psi2=1 on [0.75,1]", ks_bound(p1, p2, w), grid_eps(w, 1.0, o.N));
  c.empirical = sup_over(spec_of(o, ClassTag::Homega, 0, 1, w), [&](const Sample& s) { return ks_functional(p1, p2, s.f); });
  attach_extremal(c, w.concave(), [&] {
    return ks_functional(p1, p2, GridFunction::tabulate_real(0, 1, o.N, ks_extremal(p1, p2, w)));
  });
  r.checks.push_back(finish(c));
  return r;
}

void general_case(SuiteReport& r, const VerifyOptions& o, const std::string& label, const StepWeight& p1,
                  const StepWeight& p2, double a, double b) {
  const Modulus& w = o.w;
  Check c = base(label, 0.0, grid_eps(w, b - a, o.N));
  GeneralBound gb{};
  try {
    gb = general_bound_forms(p1, p2, w);
  } catch (const Error& e) {
    c.note = e.what();
    c.pass = true;
    r.checks.push_back(c);
    return;
  }
  c.theoretical = gb.value;
  c.empirical = sup_over(spec_of(o, ClassTag::Homega, a, b, w), [&](const Sample& s) { return ks_functional(p1, p2, s.f); });
  attach_extremal(c, true, [&] {
    const GluedExtremal ge = glue_extremal(gb.decomposition, w, a, b, o.N);
    return ks_functional(p1, p2, GridFunction::tabulate_real(a, b, o.N, ge.g));
  });
  if (std::abs(gb.value - gb.hat_sum) > 1e-9) c.note += " rearrangement and per-hat forms differ";
  r.checks.push_back(finish(c));
}

SuiteReport suite_general(const VerifyOptions& o) {
  SuiteReport r{"general", {}, true};
  general_case(r, o, "mean over [0,1] vs mean over [0.25,0.75]", StepWeight::indicator(0, 1, 1),
               StepWeight::indicator(0.25, 0.75, 2), 0, 1);
  general_case(r, o, "mean over [0,1] vs two blocks", StepWeight::indicator(0, 1, 1),
               StepWeight(0.1, 0.85, {{0.1, 0.35, 2.0}, {0.6, 0.85, 2.0}}), 0, 1);
  return r;
}

SuiteReport suite_ostrowski(const VerifyOptions& o) {
  SuiteReport r{"ostrowski", {}, true};
  const Modulus& w = o.w;
  const double cfgs[][4] = {{0, 1, 0.25, 0.75}, {0, 1, 0.6, 1.3}, {0, 1, 1.5, 1.8}};
  for (const auto& q : cfgs) {
    const TwoIntervalConfig k = make_config(q[0], q[1], q[2], q[3]);
    const double a = std::min(k.a, k.c);
    const double b = std::max(k.b, k.d);
    Check c = base(case_name(k.kind) + " [" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "] vs [" +
                       std::to_string(q[2]) + "," + std::to_string(q[3]) + "]",
                   two_interval_bound(k, w), grid_eps(w, b - a, o.N));
    c.empirical = sup_over(spec_of(o, ClassTag::Homega, a, b, w), [&](const Sample& s) {
      return two_interval_functional(k, s.f);
    });
    attach_extremal(c, true, [&] {
      const GluedExtremal ge = two_interval_extremal(k, w, o.N);
      return two_interval_functional(k, GridFunction::tabulate_real(a, b, o.N, ge.g));
    });
    r.checks.push_back(finish(c));
  }
  return r;
}

SuiteReport suite_symmetric(const VerifyOptions& o) {
  SuiteReport r{"symmetric", {}, true};
  const Modulus& w = o.w;
  const double a = 0, b = 1, cc = 0.25, d = 0.75;
  auto fn = [&](const GridFunction& f) {
    return dist(integrate(f, a, b), scale((b - a) / (d - cc), integrate(f, cc, d)));
  };
  Check c = base("[0,1] vs [0.25,0.75]", symmetric_bound(a, b, cc, d, w), grid_eps(w, b - a, o.N));
  c.empirical = sup_over(spec_of(o, ClassTag::Homega, a, b, w), [&](const Sample& s) { return fn(s.f); });
  attach_extremal(c, true, [&] {
    const GluedExtremal ge = two_interval_extremal(make_config(a, b, cc, d), w, o.N);
    return fn(GridFunction::tabulate_real(a, b, o.N, ge.g));
  });
  r.checks.push_back(finish(c));
  return r;
}

SuiteReport suite_point_mean(const VerifyOptions& o) {
  SuiteReport r{"point-mean", {}, true};
  auto run = [&](const Modulus& w, double t, double cc, double d) {
    Check c = base("t=" + std::to_string(t) + " on [" + std::to_string(cc) + "," + std::to_string(d) + "] omega " + w.spec(),
                   point_vs_mean_bound(t, cc, d, w), grid_eps(w, 1.0, o.N));
    c.empirical = sup_over(spec_of(o, ClassTag::Homega, 0, 1, w), [&](const Sample& s) {
      return point_vs_mean_functional(t, cc, d, s.f);
    });
    attach_extremal(c, true, [&] {
      return point_vs_mean_functional(t, cc, d, GridFunction::tabulate_real(0, 1, o.N, point_vs_mean_extremal(t, w)));
    });
    r.checks.push_back(finish(c));
  };
  run(o.w, 0.5, 0, 1);
  run(o.w, 0.0, 0, 1);
  run(o.w, 0.3, 0.5, 0.9);
  run(Modulus::power(1.0, 0.5), 0.0, 0, 1);
  return r;
}

SuiteReport suite_pair(const VerifyOptions& o) {
  SuiteReport r{"pair", {}, true};
  const Modulus& w = o.w;
  for (double t : {0.0, 0.2}) {
    Check c = base("t=" + std::to_string(t) + " on [0,1]", symmetrized_pair_bound(t, 0, 1, w), grid_eps(w, 1.0, o.N));
    c.empirical = sup_over(spec_of(o, ClassTag::Homega, 0, 1, w), [&](const Sample& s) {
      return symmetrized_pair_functional(t, 0, 1, s.f);
    });
    attach_extremal(c, true, [&] {
      return symmetrized_pair_functional(
          t, 0, 1, GridFunction::tabulate_real(0, 1, o.N, symmetrized_pair_extremal(t, 0, 1, w)));
    });
    r.checks.push_back(finish(c));
  }
  return r;
}

// ---------------------------------------------------------------- recovery

double info_mismatch(const GridFunction& F, const GridFunction& Fp, const std::vector<double>& t, double h) {
  const MeanInfo u = mean_info(F, t, h);
  const MeanInfo v = mean_info(Fp, t, h);
  double m = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) m = std::max(m, dist(u.means[k], v.means[k]));
  return m;
}

}  // namespace

Check check_convexify(std::size_t n, double h, double a, double b, const VerifyOptions& o) {
  const Modulus& w = o.w;
  const Knots k = optimal_knots(n, a, b);
  Check c = base("n=" + std::to_string(n) + " h=" + std::to_string(h), error_convexify(n, h, w, b - a),
                 grid_eps(w, b - a, o.N));
  c.empirical = sup_over(spec_of(o, ClassTag::Homega, a, b, w), [&](const Sample& s) {
    const MeanInfo info = mean_info(s.f, k.t, h);
    double m = 0.0;
    for (std::size_t i = 0; i <= s.f.N(); ++i) {
      m = std::max(m, dist(convexify(s.f[i]), method_convexify(info, s.f.node(i))));
    }
    return m;
  });
  attach_extremal(c, true, [&] {
    const GridFunction G = GridFunction::tabulate_real(a, b, o.N, lower_extremal_mean(k.t, h, w, a, b));
    const GridFunction F = lift(G, kX);
    const GridFunction Fp = lift(G, inverse(kX));
    if (info_mismatch(F, Fp, k.t, h) > c.eps) fail(Errc::CannotCertify, "lower pair carries different information");
    double m = 0.0;
    for (std::size_t i = 0; i <= G.N(); ++i) m = std::max(m, pair_half_gap(convexify(F[i]), convexify(Fp[i])));
    return m;
  });
  return finish(c);
}

Check check_integral(std::size_t n, double h, double a, double b, const VerifyOptions& o) {
  const Modulus& w = o.w;
  const Knots k = optimal_knots(n, a, b);
  Check c = base("n=" + std::to_string(n) + " h=" + std::to_string(h), error_integral(n, h, w, b - a),
                 grid_eps(w, b - a, o.N));
  c.empirical = sup_over(spec_of(o, ClassTag::Homega, a, b, w), [&](const Sample& s) {
    return dist(integrate(s.f), recover_integral(mean_info(s.f, k.t, h)));
  });
  attach_extremal(c, w.concave(), [&] {
    const GridFunction G = GridFunction::tabulate_real(a, b, o.N, lower_extremal_integral(k.t, h, w, a, b));
    const GridFunction F = lift(G, kX);
    const GridFunction Fp = lift(G, inverse(kX));
    if (info_mismatch(F, Fp, k.t, h) > c.eps) fail(Errc::CannotCertify, "lower pair carries different information");
    return pair_half_gap(integrate(F), integrate(Fp));
  });
  return finish(c);
}

double spline_lower(const OmegaSpline& sp, std::size_t N, double eps) {
  const double a = sp.nodes.front();
  const double b = sp.nodes.back();
  const GridFunction G = GridFunction::tabulate_real(a, b, N, sp.G);
  const GridFunction F = lift(G, kX);
  const GridFunction Fp = lift(G, inverse(kX));
  for (double x : sp.nodes) {
    if (dist(F.eval(x), Fp.eval(x)) > eps) fail(Errc::CannotCertify, "lower pair differs at a node");
  }
  double m = 0.0;
  for (std::size_t i = 0; i <= G.N(); ++i) m = std::max(m, pair_half_gap(F[i], Fp[i]));
  return m;
}

Check check_identity(std::size_t n, double a, double b, const VerifyOptions& o, const Modulus& w) {
  Check c = base("n=" + std::to_string(n) + " omega " + w.spec(), polyline_uniform_error(n, w, b - a),
                 grid_eps(w, b - a, o.N));
  c.empirical = sup_over(spec_of(o, ClassTag::W1Homega, a, b, w), [&](const Sample& s) {
    return sup_dist(s.f, identity_method(s.f, n));
  });
  attach_extremal(c, w.concave(), [&] {
    return spline_lower(omega_spline(uniform_partition(n, a, b), w), o.N, c.eps);
  });
  return finish(c);
}

Check check_derivative(std::size_t n, double a, double b, const VerifyOptions& o) {
  const Modulus& w = o.w;
  const auto nodes = uniform_partition(n, a, b);
  Check c = base("n=" + std::to_string(n), derivative_recovery_value(n, w, b - a), grid_eps(w, b - a, o.N));
  c.empirical = sup_over(spec_of(o, ClassTag::W1Homega, a, b, w), [&](const Sample& s) {
    std::vector<Element> vals;
    for (double x : nodes) vals.push_back(s.f.eval(x));
    double m = 0.0;
    for (std::size_t i = 0; i <= s.phi.N(); ++i) {
      m = std::max(m, dist(s.phi[i], polyline_derivative(nodes, vals, s.phi.node(i))));
    }
    return m;
  });
  attach_extremal(c, true, [&] {
    const DerivativeExtremal de = derivative_extremal(n, w, a, b);
    for (double x : nodes) {
      if (std::abs(de.f(x)) > c.eps) fail(Errc::CannotCertify, "extremal does not vanish at the nodes");
    }
    return pair_half_gap(lift_real(de.g(a), kX), lift_real(de.g(a), inverse(kX)));
  });
  return finish(c);
}

namespace {

SuiteReport one(const std::string& name, Check c) { return {name, {std::move(c)}, true}; }

SuiteReport suite_omega_spline(const VerifyOptions& o) {
  SuiteReport r{"omega-spline", {}, true};
  for (const Modulus& w : {o.w, Modulus::power(1.0, 0.5)}) {
    for (std::size_t n : {1, 2, 4}) {
      Check c = base("n=" + std::to_string(n) + " omega " + w.spec(), polyline_uniform_error(n, w, 1.0),
                     grid_eps(w, 1.0, o.N));
      c.empirical = sup_over(spec_of(o, ClassTag::W1Homega, 0, 1, w), [&](const Sample& s) {
        return sup_dist(s.f, identity_method(s.f, n));
      });
      attach_extremal(c, w.concave(), [&] {
        const OmegaSpline sp = omega_spline(uniform_partition(n, 0, 1), w);
        const GridFunction G = GridFunction::tabulate_real(0, 1, o.N, sp.G);
        double m = 0.0;
        for (double v : G.reals()) m = std::max(m, std::abs(v));
        return m;
      });
      r.checks.push_back(finish(c));
    }
  }
  return r;
}

// ---------------------------------------------------------------- landau

struct LandauCase {
  double t, gamma, h;
};

std::string window_label(const LandauCase& q) {
  return "t=" + std::to_string(q.t) + " gamma=" + std::to_string(q.gamma) + " h=" + std::to_string(q.h);
}

}  // namespace

Check landau_check(LandauVariant v, double t, double gamma, double h, double a, double b, const VerifyOptions& o) {
  const Modulus& w = o.w;
  const bool inner = v == LandauVariant::B || v == LandauVariant::D;
  const WindowConfig wc = clamped_windows(t, inner ? gamma : 0.0, h, a, b);
  const double H = wc.H();
  const double constant = inner ? K_value(wc, w) : derivative_constant(wc.h1, wc.h2, w);
  // sampled quantity: lhs minus the second term; its sup is the constant
  Check c = base(window_label({t, inner ? gamma : 0.0, h}), constant, grid_eps(w, b - a, o.N));
  c.empirical = sup_over(spec_of(o, ClassTag::W1Homega, a, b, w), [&](const Sample& s) {
    const double lhs = inner ? norm(divided_difference(s.f, wc.t, wc.g1, wc.g2)) : norm(s.phi.eval(wc.t));
    const double second = v == LandauVariant::B || v == LandauVariant::C
                              ? norm(divided_difference(s.f, wc.t, wc.h1, wc.h2))
                              : 2.0 / H * sup_norm(s.f);
    return lhs - second;
  });
  attach_extremal(c, !inner || w.concave(), [&] {
    const LandauExtremal ex = landau_extremal(v, wc, w, a, b, o.N);
    return ex.lhs - (ex.rhs - constant);
  });
  return finish(c);
}

namespace {

SuiteReport suite_landau(const VerifyOptions& o, LandauVariant v) {
  SuiteReport r{"landau-" + variant_name(v), {}, true};
  const bool inner = v == LandauVariant::B || v == LandauVariant::D;
  const std::vector<LandauCase> cases =
      inner ? std::vector<LandauCase>{{0.5, 0.1, 0.2}, {0.05, 0.1, 0.2}}
            : std::vector<LandauCase>{{0.5, 0.0, v == LandauVariant::E ? 0.3 : 0.2}, {0.05, 0.0, 0.2}};
  for (const auto& q : cases) r.checks.push_back(landau_check(v, q.t, q.gamma, q.h, 0, 1, o));
  return r;
}

SuiteReport suite_stechkin(const VerifyOptions& o, StechkinTarget target) {
  const bool deriv = target == StechkinTarget::Derivative;
  SuiteReport r{deriv ? "stechkin-derivative" : "stechkin-divided", {}, true};
  const Modulus& w = o.w;
  const LandauCase q = deriv ? LandauCase{0.5, 0.0, 0.2} : LandauCase{0.5, 0.1, 0.2};
  const WindowConfig wc = clamped_windows(q.t, q.gamma, q.h, 0, 1);
  Check c = base(window_label(q), 0.0, grid_eps(w, 1.0, o.N));
  try {
    c.theoretical = stechkin_value(target, wc, w);
  } catch (const Error& e) {
    c.note = e.what();
    c.pass = true;
    r.checks.push_back(c);
    return r;
  }
  c.empirical = sup_over(spec_of(o, ClassTag::W1Homega, 0, 1, w), [&](const Sample& s) {
    const Element A = deriv ? s.phi.eval(wc.t) : divided_difference(s.f, wc.t, wc.g1, wc.g2);
    return dist(A, divided_difference(s.f, wc.t, wc.h1, wc.h2));
  });
  attach_extremal(c, true, [&] {
    const StechkinCertificate cert = stechkin_certificate(target, wc, w, 0, 1, o.N, static_cast<unsigned>(o.seed));
    if (!cert.norm_ok) fail(Errc::CannotCertify, "outer quotient exceeded its norm bound");
    return cert.min_gap;
  });
  r.checks.push_back(finish(c));
  return r;
}

SuiteReport suite_delta(const VerifyOptions& o) {
  SuiteReport r{"delta-recover", {}, true};
  const Modulus& w = o.w;
  const double t = 0.5;
  const double h = 0.1;
  const WindowConfig wc = clamped_windows(t, 0.0, h, 0, 1);
  const DeltaRecovery dr = delta_recovery_value(t, h, w, 0, 1);
  Check c = base("t=0.5 h=0.1 delta=" + std::to_string(dr.delta), dr.value, grid_eps(w, 1.0, o.N));
  const SampleSpec spec = spec_of(o, ClassTag::W1Homega, 0, 1, w);
  c.empirical = empirical_sup(spec.trials, [&](std::size_t i) {
    const Sample s = draw(spec, i);
    // continuous perturbation with sup norm <= delta; translations keep widths
    std::mt19937_64 rng(sample_seed(o.seed ^ 0x5eedULL, i));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> knots(9);
    for (double& x : knots) x = U(rng);
    std::vector<Element> g;
    g.reserve(s.f.N() + 1);
    for (std::size_t k = 0; k <= s.f.N(); ++k) {
      const double pos = 8.0 * static_cast<double>(k) / static_cast<double>(s.f.N());
      const std::size_t j = std::min<std::size_t>(7, static_cast<std::size_t>(pos));
      const double e = dr.delta * (knots[j] + (pos - j) * (knots[j + 1] - knots[j]));
      const Element& v = s.f[k];
      switch (v.model()) {
        case Model::Real: g.push_back(Element::real(v.real_value() + e)); break;
        case Model::Vector: {
          auto x = v.as<Vector>().v;
          x[0] += e;
          g.push_back(Element::vector(x));
          break;
        }
        default: {
          const Interval iv = v.as_interval();
          g.push_back(Element::interval(iv.lo + e, iv.hi + e));
        }
      }
    }
    const GridFunction G(s.f.a(), s.f.b(), std::move(g));
    return dist(s.phi.eval(t), divided_difference(G, t, wc.h1, wc.h2));
  }).value;
  attach_extremal(c, true, [&] {
    const LandauExtremal ex = landau_extremal(LandauVariant::E, wc, w, 0, 1, o.N);
    if (ex.norm_C > dr.delta + c.eps) fail(Errc::CannotCertify, "extremal leaves the delta tube");
    return pair_half_gap(lift_real(ex.g.eval(t).real_value(), kX), lift_real(ex.g.eval(t).real_value(), inverse(kX)));
  });
  r.checks.push_back(finish(c));
  return r;
}

// ---------------------------------------------------------------- lspace

SuiteReport suite_lspace(const VerifyOptions& o) {
  SuiteReport r{"lspace", {}, true};
  std::mt19937_64 rng(splitmix64(o.seed));
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  double e_inv = 0.0;
  double e_norm = 0.0;
  double e_scale = 0.0;
  for (std::size_t i = 0; i < std::max<std::size_t>(o.trials, 1); ++i) {
    Element x;
    Element y;  // convex, used for the scaling identity
    switch (i % 3) {
      case 0:
        x = Element::real(U(rng));
        y = x;
        break;
      case 1:
        x = Element::vector({U(rng), U(rng), U(rng)});
        y = x;
        break;
      default: {
        const double p = U(rng);
        x = Element::interval(p, p);
        const double lo = U(rng);
        y = Element::interval(lo, lo + std::abs(U(rng)));
      }
    }
    const Element th = theta_like(x);
    const Element xp = inverse(x);
    const double nx = dist(x, th);
    e_inv = std::max(e_inv, std::abs(dist(x, xp) - 2.0 * nx) / std::max(1.0, nx));
    e_norm = std::max(e_norm, std::abs(dist(xp, th) - nx) / std::max(1.0, nx));
    double al = std::abs(U(rng));
    double be = std::abs(U(rng));
    if (i % 2) {
      al = -al;
      be = -be;
    }
    const double ny = norm(y);
    e_scale = std::max(e_scale, std::abs(dist(scale(al, y), scale(be, y)) - std::abs(al - be) * ny) /
                                    std::max(1.0, std::abs(al - be) * ny));
  }
  auto exact = [&](const std::string& label, double err) {
    Check c = base(label, 0.0, 1e-12);
    c.empirical = err;
    r.checks.push_back(finish(c));
  };
  exact("dist(x, x') = 2 dist(x, theta)", e_inv);
  exact("dist(x', theta) = dist(x, theta)", e_norm);
  exact("dist(a x, b x) = |a - b| dist(x, theta), ab >= 0", e_scale);

  // max space: translation semi-invariance is strict for this triple
  const Element x = Element::max_scalar(1.0);
  const Element y = Element::max_scalar(3.0);
  const Element z = Element::max_scalar(5.0);
  Check c = base("max space: dist(x+z, y+z) < dist(x, y) for x=1, y=3, z=5", dist(x, y), 0.0);
  c.empirical = dist(add(x, z), add(y, z));
  c.pass = c.empirical < c.theoretical;
  try {
    (void)hukuhara_diff(y, x);
    c.pass = false;
    c.note = "Hukuhara difference unexpectedly accepted";
  } catch (const Error& e) {
    c.note = e.what();
    if (e.code() != Errc::NonIsotropic) c.pass = false;
  }
  r.checks.push_back(c);
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "ks", "general", "ostrowski", "symmetric", "point-mean", "pair",
      "recover-convexify", "recover-integral", "recover-identity", "recover-derivative", "omega-spline",
      "landau-b", "landau-c", "landau-d", "landau-e", "stechkin-derivative", "stechkin-divided", "delta-recover",
      "lspace"};
  return names;
}

std::vector<std::string> expand_suite(const std::string& name) {
  const auto& all = suite_names();
  if (name == "all") return all;
  if (name == "bounds") return {"ks", "general", "ostrowski", "symmetric", "point-mean", "pair"};
  if (name == "recovery") {
    return {"recover-convexify", "recover-integral", "recover-identity", "recover-derivative", "omega-spline"};
  }
  if (name == "landau") {
    return {"landau-b", "landau-c", "landau-d", "landau-e", "stechkin-derivative", "stechkin-divided",
            "delta-recover"};
  }
  if (std::find(all.begin(), all.end(), name) != all.end()) return {name};
  fail(Errc::ParseError, "unknown suite '" + name + "'");
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& o) {
  SuiteReport r;
  if (name == "ks") r = suite_ks(o);
  else if (name == "general") r = suite_general(o);
  else if (name == "ostrowski") r = suite_ostrowski(o);
  else if (name == "symmetric") r = suite_symmetric(o);
  else if (name == "point-mean") r = suite_point_mean(o);
  else if (name == "pair") r = suite_pair(o);
  else if (name == "recover-convexify") r = one(name, check_convexify(2, 0.1, 0, 1, o));
  else if (name == "recover-integral") r = one(name, check_integral(2, 0.05, 0, 1, o));
  else if (name == "recover-identity") r = one(name, check_identity(2, 0, 1, o, o.w));
  else if (name == "recover-derivative") r = one(name, check_derivative(4, 0, 1, o));
  else if (name == "omega-spline") r = suite_omega_spline(o);
  else if (name == "landau-b") r = suite_landau(o, LandauVariant::B);
  else if (name == "landau-c") r = suite_landau(o, LandauVariant::C);
  else if (name == "landau-d") r = suite_landau(o, LandauVariant::D);
  else if (name == "landau-e") r = suite_landau(o, LandauVariant::E);
  else if (name == "stechkin-derivative") r = suite_stechkin(o, StechkinTarget::Derivative);
  else if (name == "stechkin-divided") r = suite_stechkin(o, StechkinTarget::Divided);
  else if (name == "delta-recover") r = suite_delta(o);
  else if (name == "lspace") r = suite_lspace(o);
  else fail(Errc::ParseError, "unknown suite '" + name + "'");
  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
  return r;
}

json to_json(const Check& c) {
  json j;
  j["label"] = c.label;
  j["theoretical"] = c.theoretical;
  j["empirical"] = c.empirical;
  j["extremal"] = c.has_extremal ? json(c.extremal) : json(nullptr);
  j["eps"] = c.eps;
  j["upper_margin"] = c.theoretical + c.eps - std::max(c.empirical, c.has_extremal ? c.extremal : c.empirical);
  j["lower_margin"] = c.has_extremal ? json(c.extremal - (c.theoretical - c.eps)) : json(nullptr);
  j["sharp"] = c.sharp;
  j["pass"] = c.pass;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"name", r.name}, {"pass", r.pass}, {"checks", checks}};
}

json verify(const VerifyOptions& o) {
  json suites = json::array();
  bool pass = true;
  for (const auto& name : expand_suite(o.suite)) {
    const SuiteReport r = run_suite(name, o);
    pass = pass && r.pass;
    suites.push_back(to_json(r));
  }
  return {{"seed", o.seed}, {"trials", o.trials}, {"grid", o.N}, {"omega", o.w.spec()}, {"suite", o.suite},
          {"pass", pass}, {"suites", suites}};
}

}  // namespace ksr
