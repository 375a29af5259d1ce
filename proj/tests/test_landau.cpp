#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ksr/error.hpp"
#include "ksr/landau.hpp"
#include "ksr/oracle.hpp"
#include "ksr/ostrowski.hpp"

using namespace ksr;

namespace {

const Modulus kLin = Modulus::power(1, 1);
const Modulus kSqrt = Modulus::power(1, 0.5);
const std::size_t kN = 4096;

// the quotient gap is a two-interval mean gap of the derivative
double K_oracle(const WindowConfig& c, const Modulus& w) {
  if (c.g1 + c.g2 == 0) return point_vs_mean_bound(c.t, c.t - c.h1, c.t + c.h2, w);
  return two_interval_bound(make_config(c.t - c.h1, c.t + c.h2, c.t - c.g1, c.t + c.g2), w);
}

const LandauVariant kAll[] = {LandauVariant::B, LandauVariant::C, LandauVariant::D, LandauVariant::E};

}  // namespace

TEST_CASE("divided differences") {
  const Element x = Element::interval(1, 1);
  const auto sq = lift(GridFunction::tabulate_real(0, 1, 1000, [](double t) { return t * t; }), x);
  CHECK(approx_equal(divided_difference(sq, 0.5, 0.1, 0.1), Element::interval(1, 1), 1e-9));
  const auto c = GridFunction::tabulate(0, 1, 10, [](double) { return Element::interval(-1, 1); });
  CHECK(norm(divided_difference(c, 0.5, 0.1, 0.1)) < 1e-12);
  const auto seg = GridFunction::tabulate(0, 1, 1000, [](double t) { return Element::interval(0, t); });
  CHECK(approx_equal(divided_difference(seg, 0.5, 0.1, 0.1), Element::interval(0, 1), 1e-9));
}

TEST_CASE("window checks") {
  CHECK_THROWS_AS(check_window({0.5, 0.3, 0.1, 0.2, 0.2}, 0, 1), Error);
  CHECK_THROWS_AS(check_window({0.1, 0.0, 0.0, 0.2, 0.2}, 0, 1, true), Error);
  CHECK_THROWS_AS(check_window({0.5, 0.0, 0.0, 0.2, 0.2}, 0, 1, false), Error);
  CHECK_NOTHROW(check_window({0.5, 0.0, 0.0, 0.2, 0.2}, 0, 1, true));
  const WindowConfig c = clamped_windows(0.05, 0.1, 0.2, 0, 1);
  CHECK(c.g1 == doctest::Approx(0.05));
  CHECK(c.h1 == doctest::Approx(0.05));
  CHECK(c.g2 == doctest::Approx(0.1));
  CHECK(c.h2 == doctest::Approx(0.2));
}

TEST_CASE("quotient-gap constant") {
  CHECK(K_value({0.5, 0, 0, 0.2, 0.2}, kLin) == doctest::Approx(0.1));
  CHECK(K_value({0.5, 0.2, 0.2, 0.2, 0.2}, kLin) == 0.0);
  CHECK(K_value({0.5, 0.2, 0.1, 0.2, 0.1}, kSqrt) == 0.0);
  const double k2 = K_value({0.5, 0, 0.1, 0.2, 0.2}, kLin);
  CHECK(k2 == doctest::Approx(0.3 / 0.16 * (std::pow(0.4 * 0.2 / 0.3, 2) / 2 + std::pow(0.4 * 0.1 / 0.3, 2) / 2)));
  CHECK(k2 == doctest::Approx(0.08333).epsilon(1e-4));
}

TEST_CASE("quotient-gap constant equals the two-interval bound of the derivative") {
  std::mt19937_64 r(13);
  std::uniform_real_distribution<double> U(0, 1);
  for (int k = 0; k < 200; ++k) {
    const double h1 = 0.05 + 0.4 * U(r);
    const double h2 = 0.05 + 0.4 * U(r);
    const WindowConfig c{0.5, h1 * U(r), h2 * U(r), h1, h2};
    for (const Modulus& w : {kLin, kSqrt, Modulus::min_linear(1, 0.1)}) {
      CHECK(K_value(c, w) == doctest::Approx(K_oracle(c, w)).epsilon(1e-9));
    }
  }
  CHECK(derivative_constant(0.2, 0.3, kSqrt) == doctest::Approx(K_oracle({0.5, 0, 0, 0.2, 0.3}, kSqrt)));
}

TEST_CASE("right-hand sides") {
  const double s2 = std::sqrt(2.0);
  const WindowConfig c = clamped_windows(2, 0, s2, 0, 4);
  CHECK(landau_rhs(LandauVariant::E, c, kLin, 1, 1) == doctest::Approx(s2));
  CHECK(landau_rhs(LandauVariant::C, {0.5, 0, 0, 0.2, 0.3}, kSqrt, 2, 0) ==
        doctest::Approx(2 * derivative_constant(0.2, 0.3, kSqrt)));
  CHECK(landau_rhs(LandauVariant::B, {0.5, 0.2, 0.2, 0.2, 0.2}, kLin, 3, 0.7) == doctest::Approx(0.7));
  CHECK(parse_variant("d") == LandauVariant::D);
  CHECK_THROWS_AS(parse_variant("z"), Error);
}

TEST_CASE("variant e extremal norm") {
  const WindowConfig c = clamped_windows(0.5, 0, 0.3, 0, 1);
  const LandauExtremal ex = landau_extremal(LandauVariant::E, c, kLin, 0, 1, kN);
  CHECK(ex.norm_C == doctest::Approx(0.045).epsilon(1e-4));
  CHECK(0.6 / 2 * 0.3 - 0.09 / 2 == doctest::Approx(0.045));
  CHECK(ex.xi == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(delta_recovery_value(0.5, 0.3, kLin, 0, 1).delta == doctest::Approx(0.045));
}

TEST_CASE("xi balances the derivative mass") {
  for (double t : {0.05, 0.3, 0.5}) {
    const WindowConfig c = clamped_windows(t, 0, 0.2, 0, 1);
    const LandauExtremal ex = landau_extremal(LandauVariant::E, c, kSqrt, 0, 1, kN);
    const double left = integrate_real(ex.g, c.t - c.h1, ex.xi);
    const double right = integrate_real(ex.g, ex.xi, c.t + c.h2);
    CHECK(left == doctest::Approx(right).epsilon(1e-6));
  }
}

TEST_CASE("extremals attain equality") {
  for (const Modulus& w : {kLin, kSqrt}) {
    for (double t : {0.5, 0.05, 0.0, 0.95}) {
      for (LandauVariant v : kAll) {
        const bool inner = v == LandauVariant::B || v == LandauVariant::D;
        const WindowConfig c = clamped_windows(t, inner ? 0.1 : 0.0, 0.2, 0, 1);
        CAPTURE(t);
        CAPTURE(variant_name(v));
        const LandauExtremal ex = landau_extremal(v, c, w, 0, 1, kN);
        const double eps = grid_eps(w, 1, kN);
        CHECK(check_Homega(ex.g, w).member);
        CHECK(ex.lhs >= ex.rhs - 2 * eps);
        CHECK(ex.lhs <= ex.rhs + 2 * eps);
      }
    }
  }
}

TEST_CASE("inequalities hold on sampled integral-class members") {
  SampleSpec s;
  s.cls = ClassTag::W1Homega;
  s.N = 1024;
  s.trials = 200;
  for (const Modulus& w : {kLin, kSqrt}) {
    s.w = w;
    const double eps = 2 * grid_eps(w, 1, s.N);
    for (double t : {0.5, 0.05}) {
      const WindowConfig ci = clamped_windows(t, 0.1, 0.2, 0, 1);
      const WindowConfig cd = clamped_windows(t, 0, 0.2, 0, 1);
      for (std::size_t i = 0; i < s.trials; ++i) {
        const Sample smp = draw(s, i);
        const double semi = omega_seminorm(smp.phi, w);
        const Element inner = divided_difference(smp.f, t, ci.g1, ci.g2);
        const Element outer = divided_difference(smp.f, t, ci.h1, ci.h2);
        const Element outer_d = divided_difference(smp.f, t, cd.h1, cd.h2);
        double normC = 0;
        for (const auto& v : smp.f.values()) normC = std::max(normC, norm(v));
        const Element d = smp.phi.eval(t);
        CHECK(dist(inner, outer) <= K_value(ci, w) * semi + eps);
        CHECK(dist(d, outer_d) <= derivative_constant(cd.h1, cd.h2, w) * semi + eps);
        CHECK(norm(inner) <= landau_rhs(LandauVariant::B, ci, w, semi, norm(outer)) + eps);
        CHECK(norm(d) <= landau_rhs(LandauVariant::C, cd, w, semi, norm(outer_d)) + eps);
        CHECK(norm(inner) <= landau_rhs(LandauVariant::D, ci, w, semi, normC) + eps);
        CHECK(norm(d) <= landau_rhs(LandauVariant::E, cd, w, semi, normC) + eps);
      }
    }
  }
}

TEST_CASE("inner-window variants need concavity") {
  const Modulus nc = Modulus::parse("pl:0,0;1,1;2,1;3,2");
  const WindowConfig c = clamped_windows(0.5, 0.1, 0.2, 0, 1);
  try {
    landau_extremal(LandauVariant::B, c, nc, 0, 1, 512);
    FAIL("expected NonConcave");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonConcave);
    CHECK(std::string(e.what()).find("not concave") != std::string::npos);
  }
  CHECK_NOTHROW(landau_extremal(LandauVariant::E, clamped_windows(0.5, 0, 0.2, 0, 1), nc, 0, 1, 512));
}

TEST_CASE("best approximation values") {
  const WindowConfig c = clamped_windows(0.5, 0, 0.2, 0, 1);
  CHECK(stechkin_value(StechkinTarget::Derivative, c, kLin) == doctest::Approx(0.1));
  CHECK(stechkin_value(StechkinTarget::Divided, clamped_windows(0.5, 0.2, 0.2, 0, 1), kLin) == 0.0);
  CHECK(stechkin_value(StechkinTarget::Derivative, clamped_windows(0.5, 0, 0.25, 0, 1), kSqrt) ==
        doctest::Approx(1.0 / 3.0));
  for (StechkinTarget tg : {StechkinTarget::Derivative, StechkinTarget::Divided}) {
    const WindowConfig cc = clamped_windows(0.5, tg == StechkinTarget::Divided ? 0.1 : 0.0, 0.2, 0, 1);
    const StechkinCertificate cert = stechkin_certificate(tg, cc, kLin, 0, 1, kN, 3);
    CHECK(cert.norm_ok);
    CHECK(cert.min_gap >= cert.value - grid_eps(kLin, 1, kN));
  }
  CHECK(parse_target("divided") == StechkinTarget::Divided);
  CHECK_THROWS_AS(parse_target("second"), Error);
}

TEST_CASE("recovery from perturbed values") {
  const DeltaRecovery d = delta_recovery_value(0.5, 0.1, kLin, 0, 1);
  CHECK(d.delta == doctest::Approx(0.005));
  CHECK(d.value == doctest::Approx(0.1));
  const Modulus ml = Modulus::min_linear(1, 0.05);
  CHECK(delta_recovery_value(0.5, 0.1, ml, 0, 1).value == doctest::Approx(0.05));
  const DeltaRecovery tiny = delta_recovery_value(0.5, 1e-8, kSqrt, 0, 1);
  CHECK(tiny.delta < 1e-8);
  CHECK(tiny.value < 1e-3);
}
