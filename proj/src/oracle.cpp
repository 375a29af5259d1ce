#include "ksr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "ksr/error.hpp"

namespace ksr {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t i) { return splitmix64(splitmix64(seed) ^ i); }

namespace {

using Rng = std::mt19937_64;

double unif(Rng& r, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(r); }
std::size_t pick(Rng& r, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(r); }

// Random skeleton with omega-bounded increments, linearly interpolated.
// Exact membership needs a concave modulus.
std::vector<double> skeleton(const Modulus& w, double a, double b, std::size_t N, Rng& r) {
  const std::size_t K = 2 + pick(r, 24);
  std::vector<double> x{a, b};
  for (std::size_t i = 1; i < K; ++i) x.push_back(unif(r, a, b));
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  std::vector<double> v(x.size());
  v[0] = unif(r, -1.0, 1.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double s = pick(r, 3) == 0 ? (pick(r, 2) ? 1.0 : -1.0) : unif(r, -1.0, 1.0);
    v[i] = v[i - 1] + s * w(x[i] - x[i - 1]);
  }
  double ratio = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double o = w(x[j] - x[i]);
      if (o > 0) ratio = std::max(ratio, std::abs(v[j] - v[i]) / o);
    }
  }
  for (std::size_t i = 1; i < x.size(); ++i) v[i] = v[0] + (v[i] - v[0]) / ratio;
  std::vector<double> out(N + 1);
  std::size_t k = 0;
  for (std::size_t i = 0; i <= N; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(N);
    while (k + 2 < x.size() && t > x[k + 1]) ++k;
    const double s = (t - x[k]) / (x[k + 1] - x[k]);
    out[i] = v[k] + std::clamp(s, 0.0, 1.0) * (v[k + 1] - v[k]);
  }
  return out;
}

// c + sum lambda_k w(|t - p_k|) with sum |lambda_k| <= 1; a member for any modulus.
std::vector<double> bumps(const Modulus& w, double a, double b, std::size_t N, Rng& r) {
  const std::size_t m = 1 + pick(r, 4);
  std::vector<double> lam(m);
  std::vector<double> p(m);
  double tot = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    lam[k] = unif(r, -1.0, 1.0);
    tot += std::abs(lam[k]);
    p[k] = unif(r, a, b);
  }
  const double mass = pick(r, 2) ? 1.0 : unif(r, 0.2, 1.0);
  for (double& l : lam) l *= mass / tot;
  const double c = unif(r, -1.0, 1.0);
  std::vector<double> out(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(N);
    double s = c;
    for (std::size_t k = 0; k < m; ++k) s += lam[k] * w(std::abs(t - p[k]));
    out[i] = s;
  }
  return out;
}

std::vector<double> real_member(const Modulus& w, double a, double b, std::size_t N, Rng& r, std::string& gen) {
  switch (pick(r, 3)) {
    case 0:
      if (w.concave()) {
        gen = "skeleton";
        return skeleton(w, a, b, N, r);
      }
      gen = "bumps";
      return bumps(w, a, b, N, r);
    case 1:
      gen = "bumps";
      return bumps(w, a, b, N, r);
    default: {
      // min or max of two members is a member
      std::string g1;
      std::string g2;
      auto u = real_member(w, a, b, N, r, g1);
      auto v = real_member(w, a, b, N, r, g2);
      const bool take_min = pick(r, 2) == 0;
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = take_min ? std::min(u[i], v[i]) : std::max(u[i], v[i]);
      gen = (take_min ? "min(" : "max(") + g1 + "," + g2 + ")";
      return u;
    }
  }
}

Model cycle_model(std::size_t i) {
  static const Model order[] = {Model::Real, Model::Vector, Model::Interval, Model::IntervalUnion};
  return order[i % 4];
}

GridFunction member_of(Model model, const Modulus& w, double a, double b, std::size_t N, Rng& r, std::string& gen) {
  std::string g;
  auto R = [&] { return real_member(w, a, b, N, r, g); };
  std::vector<Element> vals(N + 1);
  switch (model) {
    case Model::Real: {
      const auto u = R();
      for (std::size_t i = 0; i <= N; ++i) vals[i] = Element::real(u[i]);
      gen = "real:" + g;
      break;
    }
    case Model::Vector: {
      const auto u = R();
      const auto v = R();
      const double s = 1.0 / std::sqrt(2.0);
      for (std::size_t i = 0; i <= N; ++i) vals[i] = Element::vector({s * u[i], s * v[i]});
      gen = "vector";
      break;
    }
    case Model::Interval: {
      if (pick(r, 4) == 0) {
        // lifted real: t -> f(t) * [1,1]
        const auto u = R();
        for (std::size_t i = 0; i <= N; ++i) vals[i] = Element::interval(u[i], u[i]);
        gen = "interval:lifted";
      } else {
        const auto u = R();
        const auto v = R();
        for (std::size_t i = 0; i <= N; ++i) vals[i] = Element::interval(std::min(u[i], v[i]), std::max(u[i], v[i]));
        gen = "interval";
      }
      break;
    }
    case Model::IntervalUnion: {
      const auto u1 = R();
      const auto v1 = R();
      const auto u2 = R();
      const auto v2 = R();
      for (std::size_t i = 0; i <= N; ++i) {
        vals[i] = Element::interval_union({{std::min(u1[i], v1[i]), std::max(u1[i], v1[i])},
                                           {std::min(u2[i], v2[i]), std::max(u2[i], v2[i])}});
      }
      gen = "union";
      break;
    }
    case Model::MaxSpace: {
      const auto u = R();
      for (std::size_t i = 0; i <= N; ++i) vals[i] = Element::max_scalar(std::abs(u[i]));
      gen = "maxspace";
      break;
    }
  }
  return GridFunction(a, b, std::move(vals));
}

Element random_base(Model model, Rng& r) {
  switch (model) {
    case Model::Real: return Element::real(unif(r, -1.0, 1.0));
    case Model::Vector: return Element::vector({unif(r, -1.0, 1.0), unif(r, -1.0, 1.0)});
    case Model::Interval:
    case Model::IntervalUnion: {
      const double lo = unif(r, -1.0, 1.0);
      return Element::interval(lo, lo + unif(r, 0.0, 1.0));
    }
    case Model::MaxSpace: return Element::max_scalar(0.0);
  }
  return Element::real(0.0);
}

}  // namespace

std::vector<double> sample_real(const Modulus& w, double a, double b, std::size_t N, std::uint64_t seed,
                                std::string* generator) {
  Rng r(seed);
  std::string g;
  auto v = real_member(w, a, b, N, r, g);
  if (generator) *generator = g;
  return v;
}

Sample draw(const SampleSpec& spec, std::size_t i) {
  Rng r(sample_seed(spec.seed, i));
  const Model model = spec.model ? *spec.model : cycle_model(i);
  Sample s;
  GridFunction m = member_of(model, spec.w, spec.a, spec.b, spec.N, r, s.generator);
  if (spec.cls == ClassTag::Homega) {
    s.f = std::move(m);
    return s;
  }
  require(model != Model::MaxSpace, Errc::NonIsotropic, "integral classes are not sampled in the max space");
  std::vector<Element> conv;
  conv.reserve(m.N() + 1);
  for (const auto& v : m.values()) conv.push_back(convexify(v));
  s.phi = GridFunction(m.a(), m.b(), std::move(conv));
  s.f = antiderivative(s.phi, random_base(model == Model::IntervalUnion ? Model::Interval : model, r));
  s.generator = "w1:" + s.generator;
  return s;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("KSR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

SupResult empirical_sup(std::size_t trials, const std::function<double(std::size_t)>& eval) {
  std::vector<double> vals(trials, 0.0);
  const std::size_t T = std::min(worker_count(), std::max<std::size_t>(1, trials));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(T);
  for (std::size_t k = 0; k < T; ++k) {
    pool.emplace_back([&, k] {
      try {
        for (std::size_t i = k; i < trials; i += T) vals[i] = eval(i);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SupResult out;
  for (std::size_t i = 0; i < trials; ++i) {
    if (i == 0 || vals[i] > out.value) {
      out.value = vals[i];
      out.argmax = i;
    }
  }
  return out;
}

}  // namespace ksr
