#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ksr/error.hpp"
#include "ksr/gridfn.hpp"
#include "ksr/oracle.hpp"

using namespace ksr;

namespace {

const Modulus kLin = Modulus::power(1, 1);
const Modulus kSqrt = Modulus::power(1, 0.5);

GridFunction interval_fn(double a, double b, std::size_t N, const std::function<double(double)>& lo,
                         const std::function<double(double)>& hi) {
  return GridFunction::tabulate(a, b, N, [&](double t) { return Element::interval(lo(t), hi(t)); });
}

}  // namespace

TEST_CASE("membership examples") {
  const auto c = GridFunction::tabulate_real(0, 1, 64, [](double) { return 3.0; });
  const auto rc = check_Homega(c, kLin);
  CHECK(rc.member);
  CHECK(rc.defect <= 0.0);
  CHECK(check_Homega(GridFunction::tabulate_real(0, 1, 64, [](double t) { return t; }), kSqrt).member);
  const auto r2 = check_Homega(GridFunction::tabulate_real(0, 1, 64, [](double t) { return 2 * t; }), kLin);
  CHECK_FALSE(r2.member);
  CHECK(r2.defect == doctest::Approx(1.0));
  // the dyadic pair set agrees with the full pair set on these
  const auto g = GridFunction::tabulate_real(0, 1, 64, [](double t) { return std::sqrt(t) * 1.01; });
  CHECK(check_Homega(g, kSqrt).member == check_Homega(g, kSqrt, true).member);
}

TEST_CASE("integration examples") {
  const auto f = interval_fn(0, 2, 32, [](double) { return 0.0; }, [](double) { return 1.0; });
  CHECK(approx_equal(integrate(f), Element::interval(0, 2), 1e-12));
  const auto u = GridFunction::tabulate(0, 1, 16, [](double) { return Element::interval_union({{0, 0}, {1, 1}}); });
  CHECK(approx_equal(integrate(u), Element::interval(0, 1), 1e-12));
  const auto t = GridFunction::tabulate_real(0, 1, 16, [](double s) { return s; });
  CHECK(integrate(t).real_value() == doctest::Approx(0.5).epsilon(1e-14));
  const auto q = GridFunction::tabulate_real(0, 1, 4096, [](double s) { return s * s; });
  CHECK(std::abs(integrate(q).real_value() - 1.0 / 3.0) < 1.0 / (4096.0 * 4096.0));
  // partial cells
  CHECK(integrate_real(t, 0.1234, 0.8765) == doctest::Approx((0.8765 * 0.8765 - 0.1234 * 0.1234) / 2).epsilon(1e-12));
}

TEST_CASE("integration properties on sampled members") {
  SampleSpec s;
  s.N = 512;
  s.seed = 99;
  for (std::size_t i = 0; i < 40; ++i) {
    const Sample A = draw(s, i);
    const Sample B = draw(s, i + 1000);
    if (A.f.model() != B.f.model()) continue;
    if (A.f.model() == Model::Vector &&
        A.f[0].as<Vector>().v.size() != B.f[0].as<Vector>().v.size())
      continue;
    const Element IA = integrate(A.f);
    // idempotent under convexification
    CHECK(approx_equal(IA, convexify(IA), 1e-12));
    // dist of integrals <= integral of dist (trapezoid of the node distances)
    double rhs = 0;
    for (std::size_t k = 0; k < A.f.N(); ++k) {
      rhs += 0.5 * A.f.step() *
             (dist(convexify(A.f[k]), convexify(B.f[k])) + dist(convexify(A.f[k + 1]), convexify(B.f[k + 1])));
    }
    CHECK(dist(IA, integrate(B.f)) <= rhs + grid_eps(s.w, 1.0, s.N));
  }
}

TEST_CASE("affine substitution") {
  std::mt19937_64 r(4);
  for (int k = 0; k < 10; ++k) {
    const auto v = sample_real(kSqrt, 0, 1, 1024, r());
    const auto f = GridFunction::from_reals(0, 1, v);
    // same node values on [2, 5]: integral scales by the length
    const auto g = GridFunction::from_reals(2, 5, v);
    CHECK(integrate(g).real_value() == doctest::Approx(3 * integrate(f).real_value()).epsilon(1e-9));
    CHECK(integrate_real(g, 2.6, 3.5) == doctest::Approx(3 * integrate_real(f, 0.2, 0.5)).epsilon(1e-9));
  }
}

TEST_CASE("lift") {
  const Element one = Element::interval(1, 1);
  const auto f = GridFunction::tabulate_real(0, 1, 256, [](double t) { return t - 0.5; });
  const auto L = lift(f, one);
  CHECK(L.model() == Model::Interval);
  CHECK(norm(integrate(L)) < 1e-12);
  const auto p = GridFunction::tabulate_real(0, 1, 64, [](double t) { return t * t; });
  const Element x = Element::vector({0.6, 0.8});
  const auto Lp = lift(p, x);
  for (std::size_t i = 0; i <= 64; ++i) CHECK(approx_equal(Lp[i], scale(p[i].real_value(), x)));
  std::mt19937_64 r(8);
  for (int k = 0; k < 20; ++k) {
    const auto g = GridFunction::from_reals(0, 1, sample_real(kSqrt, 0, 1, 512, r()));
    CHECK(check_Homega(lift(g, one), kSqrt).member);
  }
}

TEST_CASE("Hukuhara derivative") {
  const auto f = interval_fn(0, 1, 128, [](double) { return 0.0; }, [](double t) { return t; });
  const auto d = hukuhara_derivative(f);
  for (std::size_t i = 0; i <= 128; ++i) CHECK(approx_equal(d[i], Element::interval(0, 1), 1e-9));
  const Element one = Element::interval(1, 1);
  const std::size_t N = 1024;
  const auto sq = GridFunction::tabulate_real(0, 1, N, [](double t) { return t * t; });
  const auto dsq = hukuhara_derivative(lift(sq, one));
  CHECK(dist(dsq.eval(0.5), Element::interval(1, 1)) <= 2.0 / N);
  // lift / derivative consistency: max node error bounded by C * step
  const auto lf = lift(GridFunction::tabulate_real(0, 1, N, [](double t) { return 2 * t * t; }), one);
  const auto ld = lift(GridFunction::tabulate_real(0, 1, N, [](double t) { return 4 * t; }), one);
  CHECK(sup_dist(hukuhara_derivative(lf), ld) <= 8.0 / N);
  const auto c = GridFunction::tabulate(0, 1, 8, [](double) { return Element::interval(2, 3); });
  const auto dc = hukuhara_derivative(c);
  for (const auto& v : dc.values()) CHECK(norm(v) < 1e-12);
}

TEST_CASE("antiderivative inverts the Hukuhara derivative") {
  SampleSpec s;
  s.N = 256;
  s.cls = ClassTag::W1Homega;
  for (std::size_t i = 0; i < 12; ++i) {
    const Sample smp = draw(s, i);
    const auto d = hukuhara_derivative(smp.f);
    // interior central quotients average two adjacent cells
    for (std::size_t k = 1; k < s.N; ++k) {
      const Element avg = weighted_sum({0.5, 0.5}, {smp.phi[k - 1], smp.phi[k + 1]});
      const Element mid = weighted_sum({0.5, 0.5}, {avg, smp.phi[k]});
      CHECK(dist(d[k], mid) <= grid_eps(s.w, 1.0, s.N));
    }
  }
}

TEST_CASE("csv and json round trip") {
  const auto f = interval_fn(0, 1, 16, [](double t) { return -t; }, [](double t) { return t * t; });
  std::stringstream ss;
  write_csv(ss, f);
  const auto g = read_csv(ss);
  CHECK(g.N() == 16);
  CHECK(sup_dist(f, g) < 1e-12);
  const auto h = gridfn_from_json(to_json(f));
  CHECK(sup_dist(f, h) == 0.0);
  std::stringstream bad("t,value\n0,zz\n");
  CHECK_THROWS_AS(read_csv(bad), Error);
}

TEST_CASE("grid tolerance") {
  CHECK(grid_eps(kLin, 1.0, 4096) == doctest::Approx(2.0 / 4096 + 1e-9));
  CHECK(grid_eps(kSqrt, 2.0, 100) == doctest::Approx(std::sqrt(0.04) + 1e-9));
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(GridFunction(1, 0, {Element::real(0), Element::real(0), Element::real(0)}), Error);
  CHECK_THROWS_AS(GridFunction(0, 1, {Element::real(0), Element::real(0)}), Error);
  CHECK_THROWS_AS(GridFunction(0, 1, {Element::real(0), Element::interval(0, 1), Element::real(0)}), Error);
  const auto f = GridFunction::tabulate_real(0, 1, 4, [](double t) { return t; });
  CHECK_THROWS_AS(f.eval(1.5), Error);
}
