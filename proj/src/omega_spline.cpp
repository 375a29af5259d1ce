#include <algorithm>
#include <cmath>
#include <memory>

#include "ksr/error.hpp"
#include "ksr/recovery.hpp"

namespace ksr {

namespace {

// g = +-h(dist to nearest eta), h(u) = w(2u)/2; signs alternate across eta,
// starting with + on [a, eta_1].
struct Spline {
  Modulus w;
  double a, b;
  std::vector<double> eta;

  double H(double x) const { return 0.25 * w.I(2.0 * std::max(0.0, x)); }

  double g(double t) const {
    std::size_t i = 0;
    while (i < eta.size() && t > eta[i]) ++i;
    double dist;
    if (i == 0) {
      dist = eta.front() - t;
    } else if (i == eta.size()) {
      dist = t - eta.back();
    } else {
      dist = std::min(t - eta[i - 1], eta[i] - t);
    }
    const double s = i % 2 == 0 ? 1.0 : -1.0;
    return s * 0.5 * w(2.0 * std::max(0.0, dist));
  }

  // integral of |g| over [l, x] inside piece i, l its left end
  double piece(std::size_t i, double x) const {
    if (i == 0) return H(eta.front() - a) - H(eta.front() - x);
    if (i == eta.size()) return H(x - eta.back());
    const double l = eta[i - 1];
    const double r = eta[i];
    const double mid = 0.5 * (l + r);
    if (x <= mid) return H(x - l);
    return 2.0 * H(mid - l) - H(r - x);
  }

  double G(double t) const {
    t = std::clamp(t, a, b);
    double s = 0.0;
    double sign = 1.0;
    for (std::size_t i = 0; i <= eta.size(); ++i) {
      const double r = i < eta.size() ? eta[i] : b;
      if (t <= r) return s + sign * piece(i, t);
      s += sign * piece(i, r);
      sign = -sign;
    }
    return s;
  }
};

bool is_uniform(const std::vector<double>& t) {
  const double d = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs(t[i] - t[i - 1] - d) > 1e-12 * std::max(1.0, d)) return false;
  }
  return true;
}

}  // namespace

OmegaSpline omega_spline(const std::vector<double>& nodes, const Modulus& w) {
  require(nodes.size() >= 2, Errc::InvalidArgument, "partition needs at least two nodes");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    require(nodes[i] > nodes[i - 1], Errc::InvalidArgument, "partition must be strictly increasing");
  }
  require(w.concave(), Errc::NonConcave, "ω not concave: spline construction unavailable");
  const std::size_t n = nodes.size() - 1;
  auto sp = std::make_shared<Spline>(Spline{w, nodes.front(), nodes.back(), {}});
  for (std::size_t i = 0; i < n; ++i) sp->eta.push_back(0.5 * (nodes[i] + nodes[i + 1]));

  OmegaSpline out;
  out.nodes = nodes;
  auto residual = [&] {
    double r = 0.0;
    for (double x : nodes) r = std::max(r, std::abs(sp->G(x)));
    return r;
  };

  if (!is_uniform(nodes)) {
    require(n <= 6, Errc::SearchFailed, "non-uniform partition with more than 6 cells");
    // Gauss-Seidel: each eta_i zeroes the integral of g over its own cell
    const std::size_t max_iter = 10000;
    while (out.iterations < max_iter && residual() >= 1e-7) {
      for (std::size_t i = 0; i < n; ++i) {
        const double l = nodes[i];
        const double r = nodes[i + 1];
        const double lo_lim = i == 0 ? l : std::max(l, sp->eta[i - 1]);
        const double hi_lim = i + 1 == n ? r : std::min(r, sp->eta[i + 1]);
        auto cell = [&](double e) {
          sp->eta[i] = e;
          return sp->G(r) - sp->G(l);
        };
        double lo = lo_lim;
        double hi = hi_lim;
        double flo = cell(lo);
        const double fhi = cell(hi);
        if ((flo > 0) == (fhi > 0)) {
          sp->eta[i] = std::abs(flo) < std::abs(fhi) ? lo : hi;
          continue;
        }
        for (int k = 0; k < 200 && hi - lo > 1e-15 * std::max(1.0, r - l); ++k) {
          const double m = 0.5 * (lo + hi);
          const double fm = cell(m);
          if ((fm > 0) == (flo > 0)) {
            lo = m;
            flo = fm;
          } else {
            hi = m;
          }
        }
        sp->eta[i] = 0.5 * (lo + hi);
      }
      ++out.iterations;
    }
    require(residual() < 1e-7, Errc::SearchFailed, "node-vanishing spline not found");
  }
  out.eta = sp->eta;
  out.residual = residual();
  for (double e : sp->eta) out.sup = std::max(out.sup, std::abs(sp->G(e)));
  out.g = [sp](double t) { return sp->g(t); };
  out.G = [sp](double t) { return sp->G(t); };
  return out;
}

}  // namespace ksr
