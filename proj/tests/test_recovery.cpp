#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ksr/error.hpp"
#include "ksr/oracle.hpp"
#include "ksr/recovery.hpp"

using namespace ksr;

namespace {

const Modulus kLin = Modulus::power(1, 1);
const Modulus kSqrt = Modulus::power(1, 0.5);
const std::size_t kN = 4096;

double sup_abs(const GridFunction& f) {
  double m = 0;
  for (double v : f.reals()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> cell_means(const GridFunction& f, const std::vector<double>& t, double h) {
  std::vector<double> out;
  for (double tk : t) out.push_back(integrate_real(f, tk - h, tk + h) / (2 * h));
  return out;
}

}  // namespace

TEST_CASE("optimal knots") {
  const Knots k2 = optimal_knots(2, 0, 1);
  CHECK(k2.t == std::vector<double>{0.25, 0.75});
  CHECK(k2.tau == std::vector<double>{0, 0.5, 1});
  CHECK(optimal_knots(1, 0, 1).t == std::vector<double>{0.5});
  const Knots k4 = optimal_knots(4, 0, 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(k4.t[i] == doctest::Approx(0.25 + 0.5 * i));
  CHECK_THROWS_AS(check_knots({0.25, 0.75}, 0.3, 0, 1), Error);
  CHECK_THROWS_AS(check_knots({0.05, 0.75}, 0.1, 0, 1), Error);
  // windows must be strictly separated
  CHECK_THROWS_AS(check_knots({0.25, 0.75}, 0.25, 0, 1), Error);
  CHECK_NOTHROW(check_knots({0.25, 0.75}, 0.2499, 0, 1));
}

TEST_CASE("convexifying-operator recovery: values") {
  CHECK(error_convexify(2, 0.1, kLin, 1) == doctest::Approx(0.25));
  CHECK(error_convexify(1, 0.5, kLin, 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(error_convexify(2, 0.3, kLin, 1), Error);
  const auto c = GridFunction::tabulate(0, 1, 256, [](double) { return Element::interval(-1, 2); });
  const MeanInfo info = mean_info(c, optimal_knots(2, 0, 1).t, 0.1);
  CHECK(sup_dist(recover_convexify(info, 256), c) < 1e-12);
}

TEST_CASE("integral recovery: values") {
  CHECK(error_integral(2, 0.05, kLin, 1) == doctest::Approx(0.1));
  CHECK(error_integral(2, 0.25, kLin, 1) == doctest::Approx(0.0));
  const auto c = GridFunction::tabulate(0, 3, 300, [](double) { return Element::interval(0, 1); });
  const MeanInfo info = mean_info(c, optimal_knots(3, 0, 3).t, 0.2);
  CHECK(approx_equal(recover_integral(info), Element::interval(0, 3), 1e-12));
  // h = 0 limit: (b - a)^2 / (4n) for omega = t
  for (std::size_t n : {1, 2, 4, 8}) CHECK(error_integral(n, 0.0, kLin, 1) == doctest::Approx(1.0 / (4.0 * n)));
}

TEST_CASE("lower construction for mean information") {
  const Knots k = optimal_knots(2, 0, 1);
  const auto f = GridFunction::tabulate_real(0, 1, kN, lower_extremal_mean(k.t, 0.1, kLin, 0, 1));
  const double eps = grid_eps(kLin, 1, kN);
  CHECK(check_Homega(f, kLin).member);
  CHECK(sup_abs(f) >= 0.25 - eps);
  for (double m : cell_means(f, k.t, 0.1)) CHECK(std::abs(m) <= eps);
  // n = 1: the largest value sits at a cell end
  const auto g = GridFunction::tabulate_real(0, 1, kN, lower_extremal_mean({0.5}, 0.1, kSqrt, 0, 1));
  CHECK(std::abs(g[0].real_value()) == doctest::Approx(sup_abs(g)));
  CHECK(sup_abs(g) >= error_convexify(1, 0.1, kSqrt, 1) - grid_eps(kSqrt, 1, kN));
}

TEST_CASE("lower construction for mean information on non-uniform knots") {
  const std::vector<double> t{0.1, 0.35, 0.8};
  for (const Modulus& w : {kLin, kSqrt, Modulus::min_linear(1, 0.2)}) {
    const auto f = GridFunction::tabulate_real(0, 1, kN, lower_extremal_mean(t, 0.05, w, 0, 1));
    CHECK(check_Homega(f, w).member);
    for (double m : cell_means(f, t, 0.05)) CHECK(std::abs(m) <= grid_eps(w, 1, kN));
  }
}

TEST_CASE("lower construction for the integral") {
  const Knots k = optimal_knots(2, 0, 1);
  const auto f = GridFunction::tabulate_real(0, 1, kN, lower_extremal_integral(k.t, 0.05, kLin, 0, 1));
  const double eps = grid_eps(kLin, 1, kN);
  CHECK(check_Homega(f, kLin).member);
  CHECK(integrate_real(f, 0, 1) >= 0.1 - eps);
  for (double m : cell_means(f, k.t, 0.05)) CHECK(std::abs(m) <= eps);
  // small h approaches 2n I((b-a)/2n)
  const auto g = GridFunction::tabulate_real(0, 1, kN, lower_extremal_integral(k.t, 1e-4, kLin, 0, 1));
  CHECK(integrate_real(g, 0, 1) == doctest::Approx(4 * kLin.I(0.25)).epsilon(2e-3));
  CHECK_THROWS_AS(lower_extremal_integral(k.t, 0.05, Modulus::parse("pl:0,0;1,1;2,1;3,2"), 0, 1), Error);
}

TEST_CASE("lifted pairs share their information") {
  // f and -f lifted along a singleton carry the same zero means, so every
  // method misses one of them by at least sup |f|
  const Knots k = optimal_knots(2, 0, 1);
  const auto f = GridFunction::tabulate_real(0, 1, 1024, lower_extremal_mean(k.t, 0.1, kLin, 0, 1));
  const Element x = Element::interval(1, 1);
  const auto fx = lift(f, x);
  const auto fxp = lift(f, inverse(x));
  const MeanInfo a = mean_info(fx, k.t, 0.1);
  const MeanInfo b = mean_info(fxp, k.t, 0.1);
  for (std::size_t i = 0; i < 2; ++i) CHECK(dist(a.means[i], b.means[i]) < 1e-3);
  CHECK(0.5 * sup_dist(fx, fxp) >= error_convexify(2, 0.1, kLin, 1) - grid_eps(kLin, 1, 1024));
}

TEST_CASE("recovery methods stay within the bounds on samples") {
  SampleSpec s;
  s.N = 1024;
  s.trials = 200;
  const Knots k = optimal_knots(2, 0, 1);
  const double eps = grid_eps(s.w, 1, s.N);
  const auto sup_c = empirical_sup(s.trials, [&](std::size_t i) {
    const Sample smp = draw(s, i);
    const MeanInfo info = mean_info(smp.f, k.t, 0.1);
    double e = 0;
    for (std::size_t j = 0; j <= s.N; ++j) e = std::max(e, dist(convexify(smp.f[j]), method_convexify(info, smp.f.node(j))));
    return e;
  });
  CHECK(sup_c.value <= error_convexify(2, 0.1, s.w, 1) + eps);
  const auto sup_i = empirical_sup(s.trials, [&](std::size_t i) {
    const Sample smp = draw(s, i);
    return dist(integrate(smp.f), recover_integral(mean_info(smp.f, k.t, 0.05)));
  });
  CHECK(sup_i.value <= error_integral(2, 0.05, s.w, 1) + eps);
}

TEST_CASE("polyline interpolation") {
  CHECK(polyline_uniform_error(2, kLin, 1) == doctest::Approx(1.0 / 32));
  // midpoint: (1/4) I(L) = L^2 / 8 for omega = t
  for (double L : {0.5, 1.0, 2.0}) CHECK(polyline_error(0, L, L / 2, kLin) == doctest::Approx(L * L / 8));
  CHECK(polyline_error(0, 1, 0.5, kLin) == doctest::Approx(1.0 / 8));
  CHECK(polyline_error(0.2, 0.7, 0.2, kSqrt) == 0.0);
  CHECK(polyline_error(0.2, 0.7, 0.7, kSqrt) == 0.0);
  // quarters per doubling for omega = t
  for (std::size_t n : {1, 2, 4, 8})
    CHECK(polyline_uniform_error(2 * n, kLin, 1) == doctest::Approx(polyline_uniform_error(n, kLin, 1) / 4));
  const std::vector<double> nodes{0, 0.3, 1};
  const Element x = Element::interval(1, 1);
  const std::vector<Element> vals{lift_real(0.1, x), lift_real(0.7, x), lift_real(2.1, x)};
  const auto p = polyline(nodes, vals, 100);
  CHECK(approx_equal(p.eval(0.3), vals[1], 1e-12));
  // lifted linear data: exact everywhere
  const auto lin = polyline({0, 0.5, 1}, {lift_real(1, x), lift_real(2, x), lift_real(3, x)}, 64);
  for (std::size_t i = 0; i <= 64; ++i) CHECK(approx_equal(lin[i], lift_real(1 + 2 * lin.node(i), x), 1e-12));
  CHECK_THROWS_AS(polyline({0, 1}, {Element::interval_union({{0, 1}, {2, 3}}), Element::interval(0, 1)}, 8), Error);
}

TEST_CASE("interpolation chain on integral-class samples") {
  SampleSpec s;
  s.cls = ClassTag::W1Homega;
  s.N = 1024;
  s.trials = 150;
  for (const Modulus& w : {kLin, kSqrt}) {
    s.w = w;
    const double eps = grid_eps(w, 1, s.N);
    for (std::size_t i = 0; i < s.trials; ++i) {
      const Sample smp = draw(s, i);
      const Element fa = smp.f[0];
      const Element fb = smp.f[s.N];
      for (double t : {0.1, 0.37, 0.5, 0.81}) {
        const Element blend = weighted_sum({1 - t, t}, {fa, fb});
        CHECK(dist(smp.f.eval(t), blend) <= polyline_error(0, 1, t, w) + eps);
      }
      const GridFunction p = identity_method(smp.f, 2);
      CHECK(sup_dist(p, smp.f) <= polyline_uniform_error(2, w, 1) + eps);
    }
  }
}

TEST_CASE("omega spline on uniform partitions") {
  for (const Modulus& w : {kLin, kSqrt}) {
    for (std::size_t n : {1, 2, 4}) {
      const OmegaSpline sp = omega_spline(uniform_partition(n, 0, 1), w);
      CHECK(sp.sup == doctest::Approx(polyline_uniform_error(n, w, 1)).epsilon(1e-9));
      CHECK(sp.residual < 1e-7);
      const auto g = GridFunction::tabulate_real(0, 1, kN, sp.g);
      CHECK(check_Homega(g, w).member);
      const auto G = GridFunction::tabulate_real(0, 1, kN, sp.G);
      CHECK(sup_abs(G) >= polyline_uniform_error(n, w, 1) - grid_eps(w, 1, kN));
    }
  }
  CHECK(omega_spline(uniform_partition(2, 0, 1), kLin).sup == doctest::Approx(1.0 / 32));
}

TEST_CASE("omega spline on a mildly non-uniform partition") {
  const OmegaSpline sp = omega_spline({0, 0.45, 1}, kLin);
  CHECK(sp.residual < 1e-7);
  for (double t : sp.nodes) CHECK(std::abs(sp.G(t)) < 1e-7);
  CHECK(sp.sup >= 1.0 / 32 - grid_eps(kLin, 1, kN));
  CHECK(check_Homega(GridFunction::tabulate_real(0, 1, kN, sp.g), kLin).member);
  CHECK_THROWS_AS(omega_spline({0, 1}, Modulus::parse("pl:0,0;1,1;2,1;3,2")), Error);
}

TEST_CASE("derivative recovery") {
  CHECK(derivative_recovery_value(4, kLin, 1) == doctest::Approx(0.125));
  CHECK(derivative_error_bound(0, 1, 0, kLin) == doctest::Approx(0.5));
  const Element x = Element::interval(1, 1);
  const std::vector<double> nodes = uniform_partition(3, 0, 1);
  std::vector<Element> vals;
  for (double t : nodes) vals.push_back(lift_real(2 - 5 * t, x));
  for (double t : {0.0, 0.2, 0.5, 0.99, 1.0}) CHECK(approx_equal(polyline_derivative(nodes, vals, t), lift_real(-5, x), 1e-12));
  for (const Modulus& w : {kLin, kSqrt}) {
    for (std::size_t n : {1, 2, 4}) {
      const DerivativeExtremal e = derivative_extremal(n, w, 0, 1);
      const double v = derivative_recovery_value(n, w, 1);
      for (double t : uniform_partition(n, 0, 1)) CHECK(std::abs(e.f(t)) < 1e-12);
      CHECK(std::abs(e.g(0)) == doctest::Approx(v).epsilon(1e-12));
      CHECK(check_Homega(GridFunction::tabulate_real(0, 1, kN, e.g), w).member);
    }
  }
}

TEST_CASE("derivative recovery on samples") {
  SampleSpec s;
  s.cls = ClassTag::W1Homega;
  s.N = 1024;
  s.trials = 200;
  const std::size_t n = 4;
  const auto nodes = uniform_partition(n, 0, 1);
  const double value = derivative_recovery_value(n, s.w, 1);
  const auto sup = empirical_sup(s.trials, [&](std::size_t i) {
    const Sample smp = draw(s, i);
    std::vector<Element> vals;
    for (double t : nodes) vals.push_back(smp.f.eval(t));
    double e = 0;
    for (std::size_t j = 0; j <= s.N; ++j) e = std::max(e, dist(smp.phi[j], polyline_derivative(nodes, vals, smp.f.node(j))));
    return e;
  });
  CHECK(sup.value <= value + grid_eps(s.w, 1, s.N));
}
