#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>

#include "ksr/error.hpp"
#include "ksr/kscore.hpp"
#include "ksr/oracle.hpp"
#include "ksr/ostrowski.hpp"

using namespace ksr;

namespace {

const Modulus kLin = Modulus::power(1, 1);
const Modulus kSqrt = Modulus::power(1, 0.5);

bool same(const GridFunction& f, const GridFunction& g) {
  if (f.N() != g.N()) return false;
  for (std::size_t i = 0; i <= f.N(); ++i) {
    if (!approx_equal(f[i], g[i], 0.0)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("seeding") {
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < 1000; ++i) seen.insert(sample_seed(7, i));
  CHECK(seen.size() == 1000);
  CHECK(sample_seed(7, 3) == sample_seed(7, 3));
  CHECK(sample_seed(7, 3) != sample_seed(8, 3));
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("streams are deterministic") {
  SampleSpec s;
  s.N = 256;
  for (std::size_t i = 0; i < 20; ++i) {
    const Sample a = draw(s, i);
    const Sample b = draw(s, i);
    CHECK(same(a.f, b.f));
    CHECK(a.generator == b.generator);
  }
  s.cls = ClassTag::W1Homega;
  for (std::size_t i = 0; i < 8; ++i) CHECK(same(draw(s, i).f, draw(s, i).f));
}

TEST_CASE("every sample is a member") {
  SampleSpec s;
  s.N = 512;
  for (const Modulus& w : {kLin, kSqrt, Modulus::min_linear(2, 0.3), Modulus::parse("pl:0,0;1,1;2,1;3,2")}) {
    s.w = w;
    std::set<Model> models;
    for (std::size_t i = 0; i < 80; ++i) {
      const Sample smp = draw(s, i);
      models.insert(smp.f.model());
      const MembershipReport rep = check_Homega(smp.f, w);
      CAPTURE(smp.generator);
      CHECK(rep.defect <= kMembershipSlack);
    }
    CHECK(models.size() >= 3);
  }
  s.model = Model::MaxSpace;
  s.w = kSqrt;
  for (std::size_t i = 0; i < 20; ++i) CHECK(check_Homega(draw(s, i).f, kSqrt).member);
}

TEST_CASE("integral-class samples have member derivatives") {
  SampleSpec s;
  s.cls = ClassTag::W1Homega;
  s.N = 512;
  s.w = kSqrt;
  for (std::size_t i = 0; i < 40; ++i) {
    const Sample smp = draw(s, i);
    CHECK(check_Homega(smp.phi, kSqrt).member);
    for (const auto& v : smp.f.values()) CHECK(is_convex(v));
  }
  s.model = Model::MaxSpace;
  try {
    draw(s, 0);
    FAIL("expected NonIsotropic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonIsotropic);
  }
}

TEST_CASE("real samples directly") {
  for (std::uint64_t seed = 1; seed < 30; ++seed) {
    std::string gen;
    const auto v = sample_real(kSqrt, -1, 2, 600, seed, &gen);
    CHECK(v.size() == 601);
    CHECK_FALSE(gen.empty());
    CHECK(check_Homega(GridFunction::from_reals(-1, 2, v), kSqrt).member);
  }
}

TEST_CASE("sup with the extremal injected brackets the bound") {
  const StepWeight p1 = StepWeight::indicator(0, 0.25, 1);
  const StepWeight p2 = StepWeight::indicator(0.75, 1, 1);
  const std::size_t N = 4096;
  SampleSpec s;
  s.N = N;
  s.trials = 200;
  const auto lifted = lift(GridFunction::tabulate_real(0, 1, N, ks_extremal(p1, p2, kLin)), Element::interval(1, 1));
  const auto sup = empirical_sup(s.trials + 1, [&](std::size_t i) {
    return i == s.trials ? ks_functional(p1, p2, lifted) : ks_functional(p1, p2, draw(s, i).f);
  });
  const double eps = grid_eps(kLin, 1, N);
  CHECK(sup.value >= 0.1875 - eps);
  CHECK(sup.value <= 0.1875 + eps);
  CHECK(sup.argmax == s.trials);
}

TEST_CASE("constant samples give a zero sup") {
  const auto c = GridFunction::tabulate_real(0, 1, 64, [](double) { return 0.4; });
  const StepWeight p1 = StepWeight::indicator(0, 0.25, 1);
  const StepWeight p2 = StepWeight::indicator(0.75, 1, 1);
  CHECK(empirical_sup(50, [&](std::size_t) { return ks_functional(p1, p2, c); }).value == doctest::Approx(0.0));
}

TEST_CASE("nested means stay below the bound") {
  SampleSpec s;
  s.N = 4096;
  s.trials = 200;
  const TwoIntervalConfig k = make_config(0, 1, 0.25, 0.75);
  const auto sup = empirical_sup(s.trials, [&](std::size_t i) { return two_interval_functional(k, draw(s, i).f); });
  CHECK(sup.value <= 0.125 + grid_eps(kLin, 1, s.N));
}

TEST_CASE("sup is monotone in the trial count and independent of the thread count") {
  SampleSpec s;
  s.N = 256;
  const TwoIntervalConfig k = make_config(0, 1, 0.25, 0.75);
  auto fn = [&](std::size_t i) { return two_interval_functional(k, draw(s, i).f); };
  double prev = -1;
  for (std::size_t n : {10, 40, 160}) {
    const double v = empirical_sup(n, fn).value;
    CHECK(v >= prev);
    prev = v;
  }
  setenv("KSR_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const SupResult one = empirical_sup(97, fn);
  setenv("KSR_THREADS", "5", 1);
  CHECK(worker_count() == 5);
  const SupResult five = empirical_sup(97, fn);
  unsetenv("KSR_THREADS");
  CHECK(one.value == five.value);
  CHECK(one.argmax == five.argmax);
}

TEST_CASE("errors from the evaluator propagate") {
  CHECK_THROWS_AS(empirical_sup(10, [](std::size_t i) -> double {
                    if (i == 7) fail(Errc::InvalidArgument, "boom");
                    return 0.0;
                  }),
                  Error);
}
