#include "ksr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ksr/error.hpp"
#include "ksr/kscore.hpp"
#include "ksr/landau.hpp"
#include "ksr/oracle.hpp"
#include "ksr/ostrowski.hpp"
#include "ksr/recovery.hpp"
#include "ksr/suites.hpp"

namespace ksr {

using json = nlohmann::json;

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::ParseError, "cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto l = s.find_first_not_of(" \t\r");
    const auto r = s.find_last_not_of(" \t\r");
    return l == std::string::npos ? std::string() : s.substr(l, r - l + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, Errc::ParseError, path + ":" + std::to_string(lineno) + ": expected key=value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

namespace {

struct Params {
  std::string omega = "power:K=1,alpha=1";
  std::string ab = "0,1";
  std::string cd = "0.25,0.75";
  std::string psi1 = "0,0.25; 0,0.25,1";
  std::string psi2 = "0.75,1; 0.75,1,1";
  std::string variant = "e";
  std::string target = "derivative";
  std::string suite = "all";
  std::string problem = "integral";
  std::string param = "n";
  std::string values;
  std::string partition;
  std::string out;
  std::string extremal_csv;
  double t = 0.5;
  double h = 0.1;
  double gamma = 0.0;
  std::size_t n = 2;
  std::size_t grid = 4096;
  std::size_t trials = 1000;
  std::uint64_t seed = 7;
  bool check = false;
};

std::pair<double, double> parse_pair(const std::string& s, const std::string& what) {
  std::istringstream is(s);
  double x = 0;
  double y = 0;
  char comma = 0;
  if (!(is >> x >> comma >> y) || comma != ',') fail(Errc::ParseError, what + " must look like 'lo,hi'");
  is >> std::ws;
  require(is.eof(), Errc::ParseError, what + " has trailing characters");
  return {x, y};
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> v;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      require(item.find_first_not_of(" \t", used) == std::string::npos, Errc::ParseError, what + ": bad number");
    } catch (const std::logic_error&) {
      fail(Errc::ParseError, what + ": bad number '" + item + "'");
    }
  }
  return v;
}

void write_function_csv(const std::string& path, const GridFunction& f, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_csv(out, f);
    return;
  }
  std::ofstream os(path);
  require(static_cast<bool>(os), Errc::InvalidArgument, "cannot write '" + path + "'");
  write_csv(os, f);
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

VerifyOptions verify_options(const Params& p) {
  VerifyOptions o;
  o.suite = p.suite;
  o.trials = p.trials;
  o.N = p.grid;
  o.seed = p.seed;
  o.w = Modulus::parse(p.omega);
  return o;
}

json check_report(const Check& c) {
  json j = to_json(c);
  j["lower_bound"] = j["extremal"];
  j["empirical_upper"] = c.empirical;
  j["gap"] = c.has_extremal ? json(c.theoretical - c.extremal) : json(nullptr);
  return j;
}

Check recovery_check(const std::string& problem, const Params& p, const VerifyOptions& o) {
  const auto [a, b] = parse_pair(p.ab, "--ab");
  if (problem == "convexify") return check_convexify(p.n, p.h, a, b, o);
  if (problem == "integral") return check_integral(p.n, p.h, a, b, o);
  if (problem == "identity") return check_identity(p.n, a, b, o, o.w);
  if (problem == "derivative") return check_derivative(p.n, a, b, o);
  fail(Errc::ParseError, "unknown recovery problem '" + problem + "'");
}

int cmd_bound(const std::string& kind, const Params& p, std::ostream& out, std::ostream& err) {
  const Modulus w = Modulus::parse(p.omega);
  json j;
  j["omega"] = w.spec();
  if (kind == "ks") {
    const StepWeight a = StepWeight::parse(p.psi1);
    const StepWeight b = StepWeight::parse(p.psi2);
    const KsBound f = ks_bound_forms(a, b, w);
    j["bound"] = f.psi1_form;
    j["psi2_form"] = f.psi2_form;
    j["sharp"] = w.concave();
  } else if (kind == "general") {
    const GeneralBound g = general_bound_forms(StepWeight::parse(p.psi1), StepWeight::parse(p.psi2), w);
    j["bound"] = g.value;
    j["hat_sum"] = g.hat_sum;
    json hats = json::array();
    for (const auto& h : g.decomposition.hats) hats.push_back({{"alpha", h.alpha}, {"beta", h.beta}, {"sign", h.sign}});
    j["hats"] = hats;
  } else if (kind == "ostrowski") {
    const auto [a, b] = parse_pair(p.ab, "--ab");
    const auto [c, d] = parse_pair(p.cd, "--cd");
    const TwoIntervalConfig k = make_config(a, b, c, d);
    j["case"] = case_name(k.kind);
    j["bound"] = two_interval_bound(k, w);
    if (!p.extremal_csv.empty()) {
      try {
        const GluedExtremal ge = two_interval_extremal(k, w, p.grid);
        write_function_csv(p.extremal_csv,
                           GridFunction::tabulate_real(std::min(k.a, k.c), std::max(k.b, k.d), p.grid, ge.g), out);
        j["extremal_csv"] = p.extremal_csv;
      } catch (const Error& e) {
        emit(out, j);
        err << "error: " << e.what() << "\n";
        return 2;
      }
    }
  } else if (kind == "symmetric") {
    const auto [a, b] = parse_pair(p.ab, "--ab");
    const auto [c, d] = parse_pair(p.cd, "--cd");
    j["bound"] = symmetric_bound(a, b, c, d, w);
  } else if (kind == "point-mean") {
    const auto [c, d] = parse_pair(p.cd, "--cd");
    j["bound"] = point_vs_mean_bound(p.t, c, d, w);
  } else if (kind == "pair") {
    const auto [a, b] = parse_pair(p.ab, "--ab");
    j["bound"] = symmetrized_pair_bound(p.t, a, b, w);
  }
  emit(out, j);
  return 0;
}

int cmd_extremal(const std::string& kind, const Params& p, std::ostream& out) {
  const Modulus w = Modulus::parse(p.omega);
  const std::size_t N = p.grid;
  GridFunction f;
  if (kind == "ks") {
    const StepWeight a = StepWeight::parse(p.psi1);
    const StepWeight b = StepWeight::parse(p.psi2);
    const KsExtremal g = ks_extremal(a, b, w);
    f = GridFunction::tabulate_real(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()), N, g);
  } else if (kind == "general") {
    const StepWeight a = StepWeight::parse(p.psi1);
    const StepWeight b = StepWeight::parse(p.psi2);
    const double lo = std::min(a.lo(), b.lo());
    const double hi = std::max(a.hi(), b.hi());
    const GluedExtremal ge = glue_extremal(sigma_decompose(psi_primitive(a, b)), w, lo, hi, N);
    f = GridFunction::tabulate_real(lo, hi, N, ge.g);
  } else if (kind == "ostrowski") {
    const auto [a, b] = parse_pair(p.ab, "--ab");
    const auto [c, d] = parse_pair(p.cd, "--cd");
    const TwoIntervalConfig k = make_config(a, b, c, d);
    f = GridFunction::tabulate_real(std::min(k.a, k.c), std::max(k.b, k.d), N, two_interval_extremal(k, w, N).g);
  } else if (kind == "point-mean") {
    const auto [a, b] = parse_pair(p.ab, "--ab");
    f = GridFunction::tabulate_real(a, b, N, point_vs_mean_extremal(p.t, w));
  } else if (kind == "pair") {
    const auto [a, b] = parse_pair(p.ab, "--ab");
    f = GridFunction::tabulate_real(a, b, N, symmetrized_pair_extremal(p.t, a, b, w));
  } else if (kind == "spline") {
    const auto [a, b] = parse_pair(p.ab, "--ab");
    const auto nodes = p.partition.empty() ? uniform_partition(p.n, a, b) : parse_list(p.partition, "--partition");
    const OmegaSpline sp = omega_spline(nodes, w);
    f = GridFunction::tabulate_real(nodes.front(), nodes.back(), N, sp.G);
  } else if (kind == "derivative") {
    const auto [a, b] = parse_pair(p.ab, "--ab");
    f = GridFunction::tabulate_real(a, b, N, derivative_extremal(p.n, w, a, b).f);
  } else if (kind == "mean-lower" || kind == "integral-lower") {
    const auto [a, b] = parse_pair(p.ab, "--ab");
    const Knots k = optimal_knots(p.n, a, b);
    f = GridFunction::tabulate_real(a, b, N, kind == "mean-lower" ? lower_extremal_mean(k.t, p.h, w, a, b)
                                                                  : lower_extremal_integral(k.t, p.h, w, a, b));
  }
  write_function_csv(p.out, f, out);
  return 0;
}

int cmd_landau(const Params& p, std::ostream& out) {
  const Modulus w = Modulus::parse(p.omega);
  const auto [a, b] = parse_pair(p.ab, "--ab");
  const LandauVariant v = parse_variant(p.variant);
  const bool inner = v == LandauVariant::B || v == LandauVariant::D;
  const WindowConfig c = clamped_windows(p.t, inner ? p.gamma : 0.0, p.h, a, b);
  json j{{"variant", variant_name(v)}, {"t", p.t}, {"g1", c.g1}, {"g2", c.g2}, {"h1", c.h1}, {"h2", c.h2},
         {"omega", w.spec()}};
  j["value"] = inner ? K_value(c, w) : derivative_constant(c.h1, c.h2, w);
  // gamma = 0 collapses the inner window to a point; the value is still
  // defined but the construction needs a window of positive length
  if ((v == LandauVariant::B || v == LandauVariant::D) && c.g1 + c.g2 <= 0.0) {
    j["extremal"] = nullptr;
    j["note"] = "point window: extremal needs gamma > 0";
    if (p.check) j["check"] = to_json(landau_check(v, p.t, p.gamma, p.h, a, b, verify_options(p)));
    emit(out, j);
    return 0;
  }
  const LandauExtremal ex = landau_extremal(v, c, w, a, b, p.grid);
  j["extremal"] = {{"lhs", ex.lhs}, {"rhs", ex.rhs}, {"norm_C", ex.norm_C}, {"xi", ex.xi}};
  if (v == LandauVariant::E) j["norm_C_closed_form"] = delta_recovery_value(p.t, p.h, w, a, b).delta;
  if (!p.extremal_csv.empty()) {
    write_function_csv(p.extremal_csv, ex.f, out);
    j["extremal_csv"] = p.extremal_csv;
  }
  if (p.check) j["check"] = to_json(landau_check(v, p.t, p.gamma, p.h, a, b, verify_options(p)));
  emit(out, j);
  return 0;
}

int cmd_stechkin(const Params& p, std::ostream& out) {
  const Modulus w = Modulus::parse(p.omega);
  const auto [a, b] = parse_pair(p.ab, "--ab");
  const StechkinTarget target = parse_target(p.target);
  const WindowConfig c = clamped_windows(p.t, target == StechkinTarget::Divided ? p.gamma : 0.0, p.h, a, b);
  const StechkinCertificate cert = stechkin_certificate(target, c, w, a, b, p.grid, static_cast<unsigned>(p.seed));
  json j{{"target", p.target}, {"value", cert.value}, {"operator_norm", 2.0 / c.H()}, {"min_gap", cert.min_gap},
         {"norm_ok", cert.norm_ok}};
  if (!p.extremal_csv.empty()) {
    const LandauExtremal ex = landau_extremal(target == StechkinTarget::Derivative ? LandauVariant::E : LandauVariant::D,
                                              c, w, a, b, p.grid);
    write_function_csv(p.extremal_csv, ex.f, out);
    j["extremal_csv"] = p.extremal_csv;
  }
  emit(out, j);
  return 0;
}

int cmd_delta(const Params& p, std::ostream& out) {
  const Modulus w = Modulus::parse(p.omega);
  const auto [a, b] = parse_pair(p.ab, "--ab");
  const DeltaRecovery d = delta_recovery_value(p.t, p.h, w, a, b);
  const WindowConfig c = clamped_windows(p.t, 0.0, p.h, a, b);
  emit(out, {{"delta", d.delta}, {"value", d.value}, {"h1", c.h1}, {"h2", c.h2}});
  return 0;
}

int cmd_sweep(const Params& p, std::ostream& out) {
  const std::vector<double> vals = parse_list(p.values, "--values");
  require(p.param == "n" || p.param == "grid", Errc::ParseError, "--param must be n or grid");
  out << "param,theoretical,empirical,gap\n";
  out << std::setprecision(17);
  for (double v : vals) {
    require(v >= 1 && v == std::floor(v), Errc::ParseError, "sweep values must be positive integers");
    Params q = p;
    (p.param == "n" ? q.n : q.grid) = static_cast<std::size_t>(v);
    const VerifyOptions o = verify_options(q);
    const Check c = recovery_check(p.problem, q, o);
    const double emp = std::max(c.empirical, c.has_extremal ? c.extremal : c.empirical);
    out << static_cast<std::size_t>(v) << "," << c.theoretical << "," << emp << "," << c.theoretical - emp << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp bounds, extremal functions and optimal recovery on H^omega classes"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  Params p;

  auto add_omega = [&](CLI::App* s) { s->add_option("--omega", p.omega, "modulus, e.g. power:K=1,alpha=0.5"); };
  auto add_grid = [&](CLI::App* s) { s->add_option("--grid", p.grid, "grid cells")->check(CLI::PositiveNumber); };
  auto add_sampling = [&](CLI::App* s) {
    add_grid(s);
    s->add_option("--trials", p.trials, "sampled members");
    s->add_option("--seed", p.seed, "seed");
  };

  auto* bound = app.add_subcommand("bound", "closed-form bounds");
  bound->require_subcommand(1);
  for (const char* k : {"ks", "general", "ostrowski", "symmetric", "point-mean", "pair"}) {
    auto* s = bound->add_subcommand(k);
    add_omega(s);
    s->add_option("--psi1", p.psi1, "weight 'lo,hi; u,v,w; ...'");
    s->add_option("--psi2", p.psi2, "weight 'lo,hi; u,v,w; ...'");
    s->add_option("--ab", p.ab);
    s->add_option("--cd", p.cd);
    s->add_option("--t", p.t);
    s->add_option("--extremal-csv", p.extremal_csv);
    add_grid(s);
  }

  auto* extremal = app.add_subcommand("extremal", "extremal functions as CSV");
  extremal->require_subcommand(1);
  for (const char* k : {"ks", "general", "ostrowski", "point-mean", "pair", "spline", "derivative", "mean-lower",
                        "integral-lower"}) {
    auto* s = extremal->add_subcommand(k);
    add_omega(s);
    add_grid(s);
    s->add_option("--psi1", p.psi1);
    s->add_option("--psi2", p.psi2);
    s->add_option("--ab", p.ab);
    s->add_option("--cd", p.cd);
    s->add_option("--t", p.t);
    s->add_option("--n", p.n);
    s->add_option("--h", p.h);
    s->add_option("--partition", p.partition, "comma-separated nodes");
    s->add_option("--out", p.out, "output path, stdout when omitted");
  }

  auto* recover = app.add_subcommand("recover", "optimal recovery experiments");
  recover->require_subcommand(1);
  for (const char* k : {"convexify", "integral", "identity", "derivative"}) {
    auto* s = recover->add_subcommand(k);
    add_omega(s);
    add_sampling(s);
    s->add_option("--n", p.n);
    s->add_option("--h", p.h);
    s->add_option("--ab", p.ab);
  }

  auto* landau = app.add_subcommand("landau", "Landau-type inequalities");
  auto* stechkin = app.add_subcommand("stechkin", "best approximation by bounded operators");
  auto* delta = app.add_subcommand("delta-recover", "derivative recovery from perturbed data");
  for (auto* s : {landau, stechkin, delta}) {
    add_omega(s);
    add_sampling(s);
    s->add_option("--t", p.t);
    s->add_option("--h", p.h);
    s->add_option("--ab", p.ab);
  }
  for (auto* s : {landau, stechkin}) {
    s->add_option("--gamma", p.gamma);
    s->add_option("--extremal-csv", p.extremal_csv);
  }
  landau->add_option("--variant", p.variant, "b, c, d or e");
  landau->add_flag("--check", p.check, "also run the sampled check");
  stechkin->add_option("--target", p.target, "derivative or divided");

  auto* verify_cmd = app.add_subcommand("verify", "oracle verification suites");
  add_omega(verify_cmd);
  add_sampling(verify_cmd);
  verify_cmd->add_option("--suite", p.suite, "suite or group: all, bounds, recovery, landau");

  auto* sweep = app.add_subcommand("sweep", "convergence table as CSV");
  add_omega(sweep);
  add_sampling(sweep);
  sweep->add_option("--problem", p.problem, "convexify, integral, identity or derivative");
  sweep->add_option("--param", p.param, "n or grid");
  sweep->add_option("--values", p.values, "comma-separated values");
  sweep->add_option("--n", p.n);
  sweep->add_option("--h", p.h);
  sweep->add_option("--ab", p.ab);

  std::string config;
  app.add_option("--config", config, "key=value file; flags override it");

  try {
    std::vector<std::string> args = args_in;
    // config values go last so that they land on the active subcommand
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--config") {
        for (const auto& [k, v] : read_config(args[i + 1])) {
          const std::string flag = "--" + k;
          const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& s) {
            return s == flag || s.rfind(flag + "=", 0) == 0;
          });
          if (!given) {
            args.push_back(flag);
            args.push_back(v);
          }
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
        break;
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    for (auto* s : bound->get_subcommands()) return cmd_bound(s->get_name(), p, out, err);
    for (auto* s : extremal->get_subcommands()) return cmd_extremal(s->get_name(), p, out);
    for (auto* s : recover->get_subcommands()) {
      const VerifyOptions o = verify_options(p);
      const Check c = recovery_check(s->get_name(), p, o);
      json j = check_report(c);
      j["problem"] = s->get_name();
      j["n"] = p.n;
      if (s->get_name() == "convexify" || s->get_name() == "integral") j["h"] = p.h;
      emit(out, j);
      return 0;
    }
    if (*landau) return cmd_landau(p, out);
    if (*stechkin) return cmd_stechkin(p, out);
    if (*delta) return cmd_delta(p, out);
    if (*verify_cmd) {
      const json report = verify(verify_options(p));
      emit(out, report);
      return report["pass"].get<bool>() ? 0 : 3;
    }
    if (*sweep) return cmd_sweep(p, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::ParseError ? 1 : 2;
  }
  return 1;
}

}  // namespace ksr
