#include <algorithm>
#include <cmath>

#include "ksr/error.hpp"
#include "ksr/kscore.hpp"

namespace ksr {

namespace {

struct Work {
  std::vector<double> x;
  std::vector<double> v;
};

// Inserts a node at abscissa xc between i and i+1 (value `level`), returns its index.
std::size_t insert_node(Work& w, std::size_t i, double xc, double level) {
  if (xc <= w.x[i]) {
    w.v[i] = level;
    return i;
  }
  if (xc >= w.x[i + 1]) {
    w.v[i + 1] = level;
    return i + 1;
  }
  w.x.insert(w.x.begin() + static_cast<std::ptrdiff_t>(i + 1), xc);
  w.v.insert(w.v.begin() + static_cast<std::ptrdiff_t>(i + 1), level);
  return i + 1;
}

void peel(Work w, int sign, std::vector<Hat>& out) {
  double top = *std::max_element(w.v.begin(), w.v.end());
  const double tiny = 1e-15 * std::max(1.0, top);
  while (top > tiny) {
    const std::size_t n = w.v.size();
    // plateau-aware local maxima
    struct Peak {
      std::size_t p, q;
      double h, saddle;
    };
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < n;) {
      std::size_t j = i;
      while (j + 1 < n && w.v[j + 1] == w.v[i]) ++j;
      if (w.v[i] > tiny && w.v[i - 1] < w.v[i] && j + 1 < n && w.v[j + 1] < w.v[i]) {
        peaks.push_back({i, j, w.v[i], 0.0});
      }
      i = j + 1;
    }
    require(!peaks.empty(), Errc::CannotCertify, "no peak found while peeling");
    for (auto& pk : peaks) {
      double lmin = pk.h;
      for (std::size_t k = pk.p; k-- > 0;) {
        if (w.v[k] >= pk.h) break;
        lmin = std::min(lmin, w.v[k]);
      }
      double rmin = pk.h;
      for (std::size_t k = pk.q + 1; k < n; ++k) {
        if (w.v[k] >= pk.h) break;
        rmin = std::min(rmin, w.v[k]);
      }
      pk.saddle = std::max(lmin, rmin);
    }
    const Peak* best = &peaks.front();
    for (const auto& pk : peaks) {
      if (pk.h - pk.saddle < best->h - best->saddle) best = &pk;
    }
    const double s = best->saddle;
    const double h = best->h;
    std::size_t p = best->p;
    std::size_t q = best->q;
    // component of {v > s} around the peak, with exact crossing nodes
    std::size_t l = p;
    while (l > 0 && w.v[l - 1] > s) --l;
    {
      const std::size_t i = l - 1;
      const double xc = w.x[i] + (w.x[l] - w.x[i]) * (s - w.v[i]) / (w.v[l] - w.v[i]);
      const std::size_t before = w.x.size();
      l = insert_node(w, i, xc, s);
      if (w.x.size() != before) {
        ++p;
        ++q;
      }
    }
    std::size_t r = q;
    while (r + 1 < w.v.size() && w.v[r + 1] > s) ++r;
    {
      const std::size_t i = r;
      const double xc = w.x[i] + (w.x[i + 1] - w.x[i]) * (w.v[i] - s) / (w.v[i] - w.v[i + 1]);
      r = insert_node(w, i, xc, s);
    }
    Hat hat;
    hat.alpha = w.x[l];
    hat.beta = w.x[r];
    hat.sign = sign;
    std::vector<double> hx;
    std::vector<double> hy;
    for (std::size_t k = l; k <= r; ++k) {
      if (!hx.empty() && w.x[k] <= hx.back()) continue;
      hx.push_back(w.x[k]);
      hy.push_back(k == l || k == r ? 0.0 : std::max(0.0, w.v[k] - s));
    }
    if (hx.size() >= 3 && h - s > 0.0) {
      hat.phi = Polyline(std::move(hx), std::move(hy));
      out.push_back(std::move(hat));
    }
    for (std::size_t k = l; k <= r; ++k) w.v[k] = std::min(w.v[k], s);
    top = *std::max_element(w.v.begin(), w.v.end());
  }
}

}  // namespace

HatDecomposition sigma_decompose(const Polyline& Psi) {
  require(Psi.size() >= 2, Errc::InvalidArgument, "Psi needs at least two nodes");
  const double scale = std::max(1.0, Psi.max_abs());
  require(std::abs(Psi.y.front()) <= 1e-12 * scale && std::abs(Psi.y.back()) <= 1e-12 * scale,
          Errc::NonzeroBoundary, "Psi must vanish at both ends");
  HatDecomposition d;
  d.source = Psi;
  Polyline P = Psi;
  for (double& v : P.y) {
    if (std::abs(v) <= 1e-14 * scale) v = 0.0;
  }
  P.y.front() = 0.0;
  P.y.back() = 0.0;
  P = P.with_crossings(0.0);
  std::vector<Hat> hats;
  std::size_t start = 0;
  for (std::size_t i = 1; i < P.size(); ++i) {
    if (P.y[i] != 0.0) continue;
    if (i - start >= 2) {
      Work w;
      int sign = 0;
      for (std::size_t k = start; k <= i; ++k) {
        w.x.push_back(P.x[k]);
        w.v.push_back(std::abs(P.y[k]));
        if (sign == 0 && P.y[k] != 0.0) sign = P.y[k] > 0 ? 1 : -1;
      }
      if (sign != 0) peel(std::move(w), sign, hats);
    }
    start = i;
  }
  std::stable_sort(hats.begin(), hats.end(), [](const Hat& a, const Hat& b) {
    return a.alpha < b.alpha || (a.alpha == b.alpha && a.beta > b.beta);
  });
  d.hats = std::move(hats);
  return d;
}

SigmaCheck check_sigma(const HatDecomposition& d) {
  SigmaCheck c{0.0, 0.0, 0.0, true};
  Polyline sum;
  double int_sum = 0.0;
  double var_sum = 0.0;
  for (const auto& h : d.hats) {
    // extend by zero to the whole domain so sums line up
    Polyline ext = h.phi;
    if (d.source.front() < ext.front()) {
      ext.x.insert(ext.x.begin(), d.source.front());
      ext.y.insert(ext.y.begin(), 0.0);
    }
    if (d.source.back() > ext.back()) {
      ext.x.push_back(d.source.back());
      ext.y.push_back(0.0);
    }
    sum = sum + ext;
    int_sum += h.phi.integral();
    var_sum += h.phi.variation();
  }
  const Polyline absPsi = d.source.abs();
  if (sum.empty()) {
    c.abs_sum_error = absPsi.max_abs();
  } else {
    const Polyline both = sum + absPsi;
    for (double x : both.x) c.abs_sum_error = std::max(c.abs_sum_error, std::abs(sum.eval(x) - absPsi.eval(x)));
  }
  c.integral_error = std::abs(int_sum - absPsi.integral());
  c.variation_error = std::abs(var_sum - d.source.variation());

  // strictly monotone pieces of distinct hats must not overlap
  struct Run {
    double l, r;
    std::size_t hat;
  };
  std::vector<Run> runs;
  for (std::size_t k = 0; k < d.hats.size(); ++k) {
    const auto& p = d.hats[k].phi;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (p.y[i] != p.y[i - 1]) runs.push_back({p.x[i - 1], p.x[i], k});
    }
  }
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.l < b.l; });
  for (std::size_t i = 1; i < runs.size(); ++i) {
    for (std::size_t j = i; j-- > 0;) {
      if (runs[j].r <= runs[i].l + 1e-12) continue;
      if (runs[j].hat != runs[i].hat) c.monotone_disjoint = false;
    }
  }
  return c;
}

Polyline sigma_rearrangement(const HatDecomposition& d) {
  const double L = d.source.back() - d.source.front();
  Polyline R({0.0, L}, {0.0, 0.0});
  for (const auto& h : d.hats) {
    Polyline r = hardy_rearrangement(h.phi);
    if (r.back() < L - 1e-15) {
      r.x.push_back(L);
      r.y.push_back(0.0);
    }
    R = R + r;
  }
  return R;
}

Polyline sigma_rearrangement(const Polyline& Psi) { return sigma_rearrangement(sigma_decompose(Psi)); }

double integral_r_domega(const Polyline& r, const Modulus& w) {
  double s = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double t0 = std::max(0.0, r.x[i - 1]);
    const double t1 = r.x[i];
    if (t1 <= t0) continue;
    const double r0 = r.eval(t0);
    const double sl = (r.y[i] - r.y[i - 1]) / (r.x[i] - r.x[i - 1]);
    // int (r0 + sl (t - t0)) w'(t) dt, by parts
    s += r0 * (w(t1) - w(t0)) + sl * ((t1 - t0) * w(t1) - w.primitive(t0, t1));
  }
  return s;
}

double integral_dr_omega(const Polyline& r, const Modulus& w) {
  double s = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double t0 = std::max(0.0, r.x[i - 1]);
    const double t1 = r.x[i];
    if (t1 <= t0) continue;
    s += (r.y[i] - r.y[i - 1]) / (r.x[i] - r.x[i - 1]) * w.primitive(t0, t1);
  }
  return std::abs(s);
}

RhoMap hat_rho(const Hat& h) {
  const Polyline& p = h.phi;
  const double top = p.max();
  std::size_t first = 0;
  while (p.y[first] < top) ++first;
  std::size_t last = p.size() - 1;
  while (p.y[last] < top) --last;
  Polyline F1(std::vector<double>(p.x.begin(), p.x.begin() + static_cast<std::ptrdiff_t>(first + 1)),
              std::vector<double>(p.y.begin(), p.y.begin() + static_cast<std::ptrdiff_t>(first + 1)));
  Polyline F2(std::vector<double>(p.x.begin() + static_cast<std::ptrdiff_t>(last), p.x.end()),
              std::vector<double>(p.y.begin() + static_cast<std::ptrdiff_t>(last), p.y.end()));
  return rho_from_primitives(F1, F2);
}

GeneralBound general_bound_forms(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w) {
  const double m1 = psi1.mass();
  const double m2 = psi2.mass();
  require(std::abs(m1 - m2) <= 1e-10 * std::max(1.0, std::max(m1, m2)), Errc::MassMismatch,
          "weights carry different mass");
  require(w.concave(), Errc::NonConcave, "ω not concave: the general estimate needs a concave modulus");
  GeneralBound out{0.0, 0.0, sigma_decompose(psi_primitive(psi1, psi2))};
  out.value = integral_r_domega(sigma_rearrangement(out.decomposition), w);
  for (const auto& h : out.decomposition.hats) out.hat_sum += ks_bound(hat_rho(h), w);
  return out;
}

double general_bound(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w) {
  return general_bound_forms(psi1, psi2, w).value;
}

GluedExtremal glue_extremal(const HatDecomposition& d, const Modulus& w, double a, double b, std::size_t N) {
  require(w.concave(), Errc::NonConcave, "ω not concave: sharpness unavailable, bound still valid");
  for (std::size_t k = 1; k < d.hats.size(); ++k) {
    require(d.hats[k].alpha >= d.hats[k - 1].beta - 1e-12, Errc::CannotCertify,
            "hat supports are nested; the gluing procedure needs ordered supports");
    require(d.hats[k].sign != d.hats[k - 1].sign, Errc::CannotCertify,
            "adjacent hats share a sign; gluing needs alternating signs");
  }
  struct Piece {
    double alpha, beta, orient, offset;
    KsExtremal g;
  };
  auto pieces = std::make_shared<std::vector<Piece>>();
  double level = 0.0;
  for (const auto& h : d.hats) {
    KsExtremal g(hat_rho(h), w);
    // same orientation as ks_extremal: rising over positive hats, falling over negative
    const double orient = h.sign > 0 ? 1.0 : -1.0;
    const double offset = level - orient * g(h.alpha);
    pieces->push_back({h.alpha, h.beta, orient, offset, std::move(g)});
    level = offset + orient * pieces->back().g(h.beta);
  }
  GluedExtremal out;
  out.g = [pieces](double t) {
    if (pieces->empty()) return 0.0;
    const Piece* cur = &pieces->front();
    if (t <= cur->alpha) return cur->offset + cur->orient * cur->g(cur->alpha);
    for (const auto& p : *pieces) {
      if (t < p.alpha) return cur->offset + cur->orient * cur->g(cur->beta);
      cur = &p;
      if (t <= p.beta) return p.offset + p.orient * p.g(t);
    }
    return cur->offset + cur->orient * cur->g(cur->beta);
  };
  out.unimodal_lengths = true;
  {
    std::size_t k = 1;
    const auto len = [&](std::size_t i) { return d.hats[i].beta - d.hats[i].alpha; };
    while (k < d.hats.size() && len(k) >= len(k - 1) - 1e-12) ++k;
    while (k < d.hats.size() && len(k) <= len(k - 1) + 1e-12) ++k;
    out.unimodal_lengths = k >= d.hats.size();
  }
  const GridFunction G = GridFunction::tabulate_real(a, b, N, out.g);
  out.membership = check_Homega(G, w);
  require(out.membership.member, Errc::CannotCertify,
          "glued extremal leaves the class (defect " + std::to_string(out.membership.defect) + ")");
  return out;
}

}  // namespace ksr
