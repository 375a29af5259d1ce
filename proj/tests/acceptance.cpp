// Acceptance criteria AC1..AC10; one PASS/FAIL line each.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ksr/error.hpp"
#include "ksr/kscore.hpp"
#include "ksr/landau.hpp"
#include "ksr/ostrowski.hpp"
#include "ksr/recovery.hpp"
#include "ksr/suites.hpp"

using namespace ksr;

namespace {

const Modulus kLin = Modulus::power(1, 1);
const Modulus kSqrt = Modulus::power(1, 0.5);
constexpr std::size_t kN = 4096;

struct Outcome {
  bool ok = true;
  std::ostringstream why;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      why << " [" << what << "]";
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s << what << ": got " << got << ", want " << want << " +- " << tol;
    expect(std::abs(got - want) <= tol, s.str());
  }
};

// runs suites with default options (trials 1000, grid 4096, seed 7)
void suites_pass(Outcome& o, std::initializer_list<const char*> names, const Modulus& w = kLin) {
  VerifyOptions opt;
  opt.w = w;
  for (const char* n : names) {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteReport r = run_suite(n, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const Check& c : r.checks) {
      if (!c.pass) {
        std::ostringstream s;
        s << n << "/" << c.label << " theo=" << c.theoretical << " emp=" << c.empirical << " ext=" << c.extremal;
        o.expect(false, s.str());
      }
    }
    o.expect(secs < 60.0, std::string(n) + " took over 60 s");
  }
}

double eps1() { return grid_eps(kLin, 1.0, kN); }

void ac1(Outcome& o) {
  const StepWeight p1 = StepWeight::indicator(0, 0.25, 1);
  const StepWeight p2 = StepWeight::indicator(0.75, 1, 1);
  o.near(ks_bound(p1, p2, kLin), 0.1875, 1e-12, "bound");
  const KsExtremal g = ks_extremal(p1, p2, kLin);
  for (double t = 0; t <= 1.0; t += 0.125) o.near(g(t), t - 0.5, 1e-12, "g(t) = t - 0.5");
  const auto f = GridFunction::tabulate_real(0, 1, kN, g);
  o.expect(check_Homega(f, kLin).member, "extremal membership");
  o.near(ks_functional(p1, p2, f), 0.1875, eps1(), "attainment");
  suites_pass(o, {"ks"});
}

void ac2(Outcome& o) {
  const std::array<std::pair<StepWeight, StepWeight>, 5> cfgs{{
      {StepWeight::indicator(0, 0.25, 1), StepWeight::indicator(0.75, 1, 1)},
      {StepWeight::parse("0,0.4; 0,0.1,2; 0.1,0.4,1"), StepWeight::parse("0.5,1; 0.5,0.8,1; 0.8,1,1")},
      {StepWeight::indicator(0, 0.5, 1), StepWeight::indicator(0.5, 1, 1)},
      {StepWeight::parse("0,0.3; 0,0.2,0.5; 0.2,0.3,3"), StepWeight::parse("0.6,0.9; 0.6,0.9,1.3333333333333333")},
      {StepWeight::parse("1,2; 1,1.5,1; 1.5,2,3"), StepWeight::parse("2.5,4; 2.5,3,2; 3,4,1")},
  }};
  for (const Modulus& w : {kLin, kSqrt}) {
    for (const auto& [p1, p2] : cfgs) {
      const double eq7 = ks_bound(p1, p2, w);
      const Polyline R = sigma_rearrangement(psi_primitive(p1, p2));
      o.near(integral_r_domega(R, w), eq7, 1e-7, "rearrangement form vs rho form");
      o.near(integral_dr_omega(R, w), eq7, 1e-7, "by-parts form vs rho form");
    }
  }
}

void ac3(Outcome& o) {
  const StepWeight p1 = StepWeight::indicator(0, 1, 1);
  const StepWeight p2 = StepWeight::indicator(0.25, 0.75, 2);
  const double g = general_bound(p1, p2, kLin);
  const double two = two_interval_bound(make_config(0, 1, 0.25, 0.75), kLin);
  o.near(g, 0.125, 1e-12, "general bound");
  o.near(two, 0.125, 1e-12, "two-interval bound");
  const GluedExtremal ge = glue_extremal(sigma_decompose(psi_primitive(p1, p2)), kLin, 0, 1, kN);
  const auto f = GridFunction::tabulate_real(0, 1, kN, ge.g);
  o.expect(check_Homega(f, kLin).member, "glued extremal membership");
  o.near(ks_functional(p1, p2, f), 0.125, eps1(), "glued attainment");
  suites_pass(o, {"general", "ostrowski"});
}

void ac4(Outcome& o) {
  o.near(point_vs_mean_bound(0.5, 0, 1, kLin), 0.25, 1e-12, "point vs mean");
  o.near(symmetrized_pair_bound(0, 0, 1, kLin), 0.25, 1e-12, "symmetrized pair");
  o.near(point_vs_mean_bound(0, 0, 1, kSqrt), 2.0 / 3.0, 1e-12, "point vs mean, sqrt");
  const auto pm = GridFunction::tabulate_real(0, 1, kN, point_vs_mean_extremal(0.5, kLin));
  o.near(point_vs_mean_functional(0.5, 0, 1, pm), 0.25, eps1(), "point vs mean attainment");
  const auto pr = GridFunction::tabulate_real(0, 1, kN, symmetrized_pair_extremal(0, 0, 1, kLin));
  o.near(symmetrized_pair_functional(0, 0, 1, pr), 0.25, eps1(), "pair attainment");
  const auto ps = GridFunction::tabulate_real(0, 1, kN, point_vs_mean_extremal(0, kSqrt));
  o.near(point_vs_mean_functional(0, 0, 1, ps), 2.0 / 3.0, grid_eps(kSqrt, 1, kN), "sqrt attainment");
  suites_pass(o, {"point-mean", "pair", "symmetric"});
}

void ac5(Outcome& o) {
  o.near(error_convexify(2, 0.1, kLin, 1), 0.25, 1e-12, "convexify");
  o.near(error_integral(2, 0.05, kLin, 1), 0.1, 1e-12, "integral");
  o.near(polyline_uniform_error(2, kLin, 1), 1.0 / 32, 1e-12, "identity");
  o.near(derivative_recovery_value(4, kLin, 1), 0.125, 1e-12, "derivative");
  VerifyOptions opt;
  for (const Check& c : {check_convexify(2, 0.1, 0, 1, opt), check_integral(2, 0.05, 0, 1, opt),
                         check_identity(2, 0, 1, opt, kLin), check_derivative(4, 0, 1, opt)}) {
    o.expect(c.pass && c.sharp, "two-sided check " + c.label);
  }
  suites_pass(o, {"recover-convexify", "recover-integral", "recover-identity", "recover-derivative"});
}

void ac6(Outcome& o) {
  for (const Modulus& w : {kLin, kSqrt}) {
    for (std::size_t n : {1, 2, 4}) {
      const OmegaSpline sp = omega_spline(uniform_partition(n, 0, 1), w);
      o.near(sp.sup, 0.25 * w.I(1.0 / static_cast<double>(n)), grid_eps(w, 1, kN), "spline sup " + w.spec());
    }
  }
  suites_pass(o, {"omega-spline"});
}

void ac7(Outcome& o) {
  o.near(K_value(clamped_windows(0.5, 0, 0.2, 0, 1), kLin), 0.1, 1e-12, "K");
  o.near(stechkin_value(StechkinTarget::Derivative, clamped_windows(0.5, 0, 0.2, 0, 1), kLin), 0.1, 1e-12,
         "best approximation");
  const LandauExtremal e = landau_extremal(LandauVariant::E, clamped_windows(0.5, 0, 0.3, 0, 1), kLin, 0, 1, kN);
  o.near(e.norm_C, 0.045, eps1(), "variant e extremal norm");
  const DeltaRecovery d = delta_recovery_value(0.5, 0.1, kLin, 0, 1);
  o.near(d.delta, 0.005, 1e-12, "delta");
  o.near(d.value, 0.1, 1e-12, "delta value");
  suites_pass(o, {"landau-b", "landau-c", "landau-d", "landau-e", "stechkin-derivative", "stechkin-divided",
                  "delta-recover"});
}

void ac8(Outcome& o) {
  std::mt19937_64 r(2024);
  std::uniform_real_distribution<double> U(-10, 10);
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    Element x;
    switch (k % 3) {
      case 0: x = Element::real(U(r)); break;
      case 1: x = Element::vector({U(r), U(r)}); break;
      default: {
        const double u = U(r);
        x = Element::interval(u, u);
      }
    }
    const Element th = theta_like(x);
    const double n = dist(x, th);
    double a = U(r);
    double b = U(r);
    if (a * b < 0) b = -b;
    if (std::abs(dist(x, inverse(x)) - 2 * n) > 1e-12 * (1 + n)) ++bad;
    if (std::abs(dist(inverse(x), th) - n) > 1e-12 * (1 + n)) ++bad;
    if (std::abs(dist(scale(a, x), scale(b, x)) - std::abs(a - b) * n) > 1e-12 * (1 + 20 * n)) ++bad;
  }
  o.expect(bad == 0, std::to_string(bad) + " identity violations");
  suites_pass(o, {"lspace"});
}

void ac9(Outcome& o) {
  const Element x = Element::max_scalar(1);
  const Element y = Element::max_scalar(3);
  const Element z = Element::max_scalar(5);
  o.expect(dist(add(x, z), add(y, z)) < dist(x, y), "strict inequality for 1, 3, 5");
  o.expect(!is_isotropic(Model::MaxSpace), "max space flagged non-isotropic");
  bool rejected = false;
  try {
    hukuhara_diff(z, x);
  } catch (const Error& e) {
    rejected = e.code() == Errc::NonIsotropic;
  }
  o.expect(rejected, "Hukuhara difference rejected");
}

std::pair<int, std::string> run_cli_binary(const std::string& args) {
  const std::string cmd = std::string(KSR_CLI_PATH) + " " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 65536> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void ac10(Outcome& o) {
  const auto [c1, out1] = run_cli_binary("verify --suite all --seed 7");
  const auto [c2, out2] = run_cli_binary("verify --suite all --seed 7");
  o.expect(c1 == 0 && c2 == 0, "exit codes " + std::to_string(c1) + ", " + std::to_string(c2));
  o.expect(!out1.empty() && out1 == out2, "reports differ");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> acs = {
      {"AC1 sharp functional bound and extremal", ac1},
      {"AC2 rearrangement identity", ac2},
      {"AC3 general bound reduces to two-interval bound", ac3},
      {"AC4 point-vs-mean and symmetrized pair", ac4},
      {"AC5 recovery values", ac5},
      {"AC6 omega-spline equality", ac6},
      {"AC7 Landau, best approximation, perturbed recovery", ac7},
      {"AC8 metric identities", ac8},
      {"AC9 non-isotropy witness", ac9},
      {"AC10 determinism", ac10},
  };
  int failed = 0;
  for (const auto& [name, fn] : acs) {
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << o.why.str() << std::endl;
    if (!o.ok) ++failed;
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
