#include "ksr/kscore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ksr/error.hpp"

namespace ksr {

namespace {

std::vector<double> numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    require(b != std::string::npos, Errc::ParseError, "empty number in weight spec");
    cell = cell.substr(b, e - b + 1);
    std::size_t used = 0;
    try {
      out.push_back(std::stod(cell, &used));
    } catch (const std::logic_error&) {
      fail(Errc::ParseError, "bad number '" + cell + "' in weight spec");
    }
    require(used == cell.size(), Errc::ParseError, "bad number '" + cell + "' in weight spec");
  }
  return out;
}

// smallest x with F(x) >= level, F nondecreasing
double first_ge(const Polyline& F, double level) {
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (F.y[i] >= level) {
      if (i == 0) return F.x[0];
      const double dy = F.y[i] - F.y[i - 1];
      return F.x[i - 1] + (F.x[i] - F.x[i - 1]) * (level - F.y[i - 1]) / dy;
    }
  }
  return F.back();
}

// largest x with F(x) <= level, F nondecreasing
double last_le(const Polyline& F, double level) {
  for (std::size_t k = F.size(); k-- > 0;) {
    if (F.y[k] <= level) {
      if (k + 1 == F.size()) return F.x[k];
      const double dy = F.y[k + 1] - F.y[k];
      return F.x[k] + (F.x[k + 1] - F.x[k]) * (level - F.y[k]) / dy;
    }
  }
  return F.front();
}

Polyline negated(const Polyline& F) { return F.scaled(-1.0); }

double segment_integral(const Modulus& w, double m0, double m1, double u0, double u1) {
  // integral over a level range on which the width u moves affinely from u0 to u1
  const double dm = m1 - m0;
  if (dm <= 0.0) return 0.0;
  u0 = std::max(u0, 0.0);
  u1 = std::max(u1, 0.0);
  const double du = u0 - u1;
  if (std::abs(du) <= 1e-15 * std::max(1.0, u0)) return dm * w(0.5 * (u0 + u1));
  return dm * (du > 0 ? w.primitive(u1, u0) : w.primitive(u0, u1)) / std::abs(du);
}

}  // namespace

StepWeight::StepWeight(double lo, double hi, std::vector<StepPiece> pieces)
    : lo_(lo), hi_(hi), pieces_(std::move(pieces)) {
  require(lo < hi, Errc::InvalidArgument, "weight support needs lo < hi");
  std::sort(pieces_.begin(), pieces_.end(), [](const StepPiece& p, const StepPiece& q) { return p.u < q.u; });
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    require(p.u < p.v, Errc::InvalidArgument, "weight piece needs u < v");
    require(p.w >= 0.0 && std::isfinite(p.w), Errc::InvalidArgument, "weights must be nonnegative");
    require(p.u >= lo - 1e-12 && p.v <= hi + 1e-12, Errc::InvalidArgument, "weight piece outside its support");
    if (i > 0) require(p.u >= pieces_[i - 1].v - 1e-12, Errc::InvalidArgument, "weight pieces overlap");
  }
}

StepWeight StepWeight::indicator(double u, double v, double height) { return StepWeight(u, v, {{u, v, height}}); }

StepWeight StepWeight::parse(const std::string& text) {
  std::vector<std::string> groups;
  std::stringstream ss(text);
  std::string g;
  while (std::getline(ss, g, ';')) {
    if (g.find_first_not_of(" \t") != std::string::npos) groups.push_back(g);
  }
  require(groups.size() >= 2, Errc::ParseError, "weight spec needs 'a,b; u,v,w; ...'");
  const auto sup = numbers(groups[0]);
  require(sup.size() == 2, Errc::ParseError, "weight support needs two numbers");
  std::vector<StepPiece> pieces;
  for (std::size_t i = 1; i < groups.size(); ++i) {
    const auto p = numbers(groups[i]);
    require(p.size() == 3, Errc::ParseError, "weight piece needs 'u,v,w'");
    pieces.push_back({p[0], p[1], p[2]});
  }
  return StepWeight(sup[0], sup[1], std::move(pieces));
}

double StepWeight::mass() const {
  double m = 0.0;
  for (const auto& p : pieces_) m += p.w * (p.v - p.u);
  return m;
}

double StepWeight::eval(double t) const {
  for (const auto& p : pieces_) {
    if (t >= p.u && t < p.v) return p.w;
  }
  return 0.0;
}

double StepWeight::primitive(double t) const {
  double m = 0.0;
  for (const auto& p : pieces_) {
    if (t <= p.u) break;
    m += p.w * (std::min(t, p.v) - p.u);
  }
  return m;
}

Polyline StepWeight::primitive_polyline() const {
  std::vector<double> xs{lo_};
  for (const auto& p : pieces_) {
    if (p.u > xs.back() + 1e-15) xs.push_back(p.u);
    if (p.v > xs.back() + 1e-15) xs.push_back(p.v);
  }
  if (hi_ > xs.back() + 1e-15) {
    xs.push_back(hi_);
  } else {
    xs.back() = hi_;
  }
  std::vector<double> ys;
  for (double x : xs) ys.push_back(primitive(x));
  return Polyline(std::move(xs), std::move(ys));
}

bool StepWeight::positive_ae() const {
  double cur = lo_;
  for (const auto& p : pieces_) {
    if (p.u > cur + 1e-12 || p.w <= 0.0) return false;
    cur = p.v;
  }
  return cur >= hi_ - 1e-12;
}

std::string StepWeight::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << lo_ << ',' << hi_;
  for (const auto& p : pieces_) os << "; " << p.u << ',' << p.v << ',' << p.w;
  return os.str();
}

double RhoMap::rho(double s) const {
  require(s >= a - 1e-12 && s <= c + 1e-12, Errc::OutOfDomain, "rho is defined on [a, c]");
  for (const auto& seg : segments) {
    if (s >= seg.s0 && s <= seg.s1 && seg.s1 > seg.s0) {
      return seg.r0 + (seg.r1 - seg.r0) * (s - seg.s0) / (seg.s1 - seg.s0);
    }
  }
  return s <= a ? b : c;
}

double RhoMap::rho_inverse(double t) const {
  require(t >= c - 1e-12 && t <= b + 1e-12, Errc::OutOfDomain, "rho^{-1} is defined on [c, b]");
  for (const auto& seg : segments) {
    if (t <= seg.r0 && t >= seg.r1 && seg.r0 > seg.r1) {
      return seg.s0 + (seg.s1 - seg.s0) * (seg.r0 - t) / (seg.r0 - seg.r1);
    }
  }
  return t >= b ? a : c;
}

RhoMap rho_from_primitives(const Polyline& F1in, const Polyline& F2in) {
  Polyline F1 = F1in;
  Polyline F2 = F2in;
  RhoMap out;
  out.a = F1.front();
  out.a1 = F1.back();
  out.b1 = F2.front();
  out.b = F2.back();
  require(out.a1 <= out.b1 + 1e-12, Errc::BadSupportOrder, "need a' <= b'");
  out.c = 0.5 * (out.a1 + out.b1);
  const double M = std::max(F1.y.back(), F2.y.front());
  F1.y.front() = 0.0;
  F2.y.back() = 0.0;
  F1.y.back() = M;
  F2.y.front() = M;

  // one shared set of levels so plateaus on both sides are matched exactly
  std::vector<double> levels(F1.y.begin(), F1.y.end());
  levels.insert(levels.end(), F2.y.begin(), F2.y.end());
  std::sort(levels.begin(), levels.end());
  const double tol = 1e-12 * std::max(1.0, M);
  std::vector<double> uniq;
  for (double v : levels) {
    if (uniq.empty() || v - uniq.back() > tol) uniq.push_back(v);
  }
  uniq.front() = 0.0;
  uniq.back() = M;
  auto snap = [&](double v) {
    auto it = std::lower_bound(uniq.begin(), uniq.end(), v - tol);
    return it == uniq.end() ? uniq.back() : *it;
  };
  for (double& v : F1.y) v = snap(v);
  for (double& v : F2.y) v = snap(v);
  // rounding may break monotonicity by one ulp after snapping
  for (std::size_t i = 1; i < F1.size(); ++i) F1.y[i] = std::max(F1.y[i], F1.y[i - 1]);
  for (std::size_t i = F2.size() - 1; i-- > 0;) F2.y[i] = std::max(F2.y[i], F2.y[i + 1]);
  const Polyline G2 = negated(F2);

  struct LevelSet {
    double s_lo, s_hi, t_lo, t_hi;
  };
  std::vector<LevelSet> sets;
  for (std::size_t j = 0; j < uniq.size(); ++j) {
    const double lv = uniq[j];
    LevelSet ls{};
    ls.s_lo = first_ge(F1, lv);
    ls.s_hi = last_le(F1, lv);
    ls.t_lo = first_ge(G2, -lv);
    ls.t_hi = last_le(G2, -lv);
    if (j + 1 == uniq.size()) {
      ls.s_hi = out.c;
      ls.t_lo = out.c;
    }
    if (j == 0) {
      ls.s_lo = out.a;
      ls.t_hi = out.b;
    }
    sets.push_back(ls);
  }
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (j > 0) {
      out.segments.push_back({sets[j - 1].s_hi, sets[j].s_lo, sets[j - 1].t_lo, sets[j].t_hi, uniq[j - 1], uniq[j]});
    }
    const auto& ls = sets[j];
    if ((ls.s_hi - ls.s_lo) + (ls.t_hi - ls.t_lo) > 0.0) {
      out.segments.push_back({ls.s_lo, ls.s_hi, ls.t_hi, ls.t_lo, uniq[j], uniq[j]});
    }
  }
  return out;
}

namespace {

void check_pair(const StepWeight& psi1, const StepWeight& psi2) {
  require(psi1.lo() < psi1.hi() && psi1.hi() <= psi2.lo() + 1e-12 && psi2.lo() < psi2.hi(), Errc::BadSupportOrder,
          "supports must satisfy a < a' <= b' < b");
  const double m1 = psi1.mass();
  const double m2 = psi2.mass();
  require(std::abs(m1 - m2) <= 1e-10 * std::max(1.0, std::max(m1, m2)), Errc::MassMismatch,
          "weights carry different mass");
}

Polyline tail_primitive(const StepWeight& psi) {
  // F2(t) = integral of psi over [t, hi]
  Polyline P = psi.primitive_polyline();
  const double M = P.y.back();
  for (double& v : P.y) v = M - v;
  return P;
}

}  // namespace

RhoMap solve_rho(const StepWeight& psi1, const StepWeight& psi2) {
  check_pair(psi1, psi2);
  require(psi1.positive_ae() && psi2.positive_ae(), Errc::InvalidArgument,
          "weights must be positive almost everywhere on their supports");
  return rho_from_primitives(psi1.primitive_polyline(), tail_primitive(psi2));
}

double ks_bound(const RhoMap& rho, const Modulus& w) {
  double s = 0.0;
  for (const auto& seg : rho.segments) s += segment_integral(w, seg.m0, seg.m1, seg.r0 - seg.s0, seg.r1 - seg.s1);
  return s;
}

KsBound ks_bound_forms(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w) {
  const RhoMap rho = solve_rho(psi1, psi2);
  KsBound out{ks_bound(rho, w), 0.0};

  // psi2 form, computed piece by piece along t with rho^{-1} from the psi1 primitive
  const Polyline F1 = psi1.primitive_polyline();
  const double M2 = psi2.mass();
  double acc = 0.0;
  for (const auto& p : psi2.pieces()) {
    if (p.w <= 0.0) continue;
    const double top = M2 - psi2.primitive(p.u);
    const double bottom = M2 - psi2.primitive(p.v);
    std::vector<double> ts{p.u};
    for (double lv : F1.y) {
      if (lv < top && lv > bottom) ts.push_back(p.u + (top - lv) / p.w);
    }
    ts.push_back(p.v);
    std::sort(ts.begin(), ts.end());
    for (std::size_t k = 1; k < ts.size(); ++k) {
      const double ta = ts[k - 1];
      const double tb = ts[k];
      if (tb <= ta) continue;
      const double la = top - p.w * (ta - p.u);
      const double lb = top - p.w * (tb - p.u);
      const double sa = first_ge(F1, la);
      const double sb = last_le(F1, lb);
      const double va = std::max(0.0, ta - sa);
      const double vb = std::max(0.0, tb - sb);
      const double dv = vb - va;
      if (std::abs(dv) <= 1e-15 * std::max(1.0, va)) {
        acc += p.w * (tb - ta) * w(0.5 * (va + vb));
      } else {
        acc += p.w * (tb - ta) * (dv > 0 ? w.primitive(va, vb) : w.primitive(vb, va)) / std::abs(dv);
      }
    }
  }
  out.psi2_form = acc;
  return out;
}

double ks_bound(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w) {
  return ks_bound_forms(psi1, psi2, w).psi1_form;
}

KsExtremal::KsExtremal(RhoMap rho, Modulus w) : rho_(std::move(rho)), w_(std::move(w)) {
  const std::size_t n = rho_.segments.size();
  g_left_.assign(n, 0.0);
  g_right_.assign(n, 0.0);
  double cl = 0.0;
  double cr = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const auto& seg = rho_.segments[k];
    const double u0 = std::max(0.0, seg.r0 - seg.s0);
    const double u1 = std::max(0.0, seg.r1 - seg.s1);
    const double du = u0 - u1;
    g_left_[k] = cl;
    g_right_[k] = cr;
    if (du <= 0.0) continue;
    const double dw = w_(u0) - w_(u1);
    cl -= dw * (seg.s1 - seg.s0) / du;
    cr += dw * (seg.r0 - seg.r1) / du;
  }
}

double KsExtremal::operator()(double t) const {
  const auto& segs = rho_.segments;
  if (t <= rho_.c) {
    t = std::max(t, rho_.a);
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const auto& seg = segs[k];
      if (seg.s1 <= seg.s0 || t < seg.s0 || t > seg.s1) continue;
      const double u0 = std::max(0.0, seg.r0 - seg.s0);
      const double u1 = std::max(0.0, seg.r1 - seg.s1);
      const double du = u0 - u1;
      if (du <= 0.0) return g_left_[k];
      const double u = std::max(0.0, u0 + (t - seg.s0) * (u1 - u0) / (seg.s1 - seg.s0));
      return g_left_[k] - (w_(u) - w_(u1)) * (seg.s1 - seg.s0) / du;
    }
    return 0.0;
  }
  t = std::min(t, rho_.b);
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const auto& seg = segs[k];
    if (seg.r0 <= seg.r1 || t > seg.r0 || t < seg.r1) continue;
    const double u0 = std::max(0.0, seg.r0 - seg.s0);
    const double u1 = std::max(0.0, seg.r1 - seg.s1);
    const double du = u0 - u1;
    if (du <= 0.0) return g_right_[k];
    const double v = std::max(0.0, u1 + (t - seg.r1) * (u0 - u1) / (seg.r0 - seg.r1));
    return g_right_[k] + (w_(v) - w_(u1)) * (seg.r0 - seg.r1) / du;
  }
  return 0.0;
}

KsExtremal ks_extremal(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w) {
  require(w.concave(), Errc::NonConcave, "ω not concave: sharpness unavailable, bound still valid");
  return KsExtremal(solve_rho(psi1, psi2), w);
}

Element weighted_integral(const StepWeight& psi, const GridFunction& f) {
  if (f.is_real()) {
    double s = 0.0;
    for (const auto& p : psi.pieces()) {
      if (p.w != 0.0) s += p.w * integrate_real(f, p.u, p.v);
    }
    return Element::real(s);
  }
  Element acc = scale(0.0, integrate(f, f.a(), f.a()));
  for (const auto& p : psi.pieces()) {
    if (p.w != 0.0) acc = add(acc, scale(p.w, integrate(f, p.u, p.v)));
  }
  return acc;
}

double ks_functional(const StepWeight& psi1, const StepWeight& psi2, const GridFunction& f) {
  return dist(weighted_integral(psi1, f), weighted_integral(psi2, f));
}

Polyline psi_primitive(const StepWeight& psi1, const StepWeight& psi2) {
  const double lo = std::min(psi1.lo(), psi2.lo());
  const double hi = std::max(psi1.hi(), psi2.hi());
  std::vector<double> xs{lo, hi};
  for (const auto* psi : {&psi1, &psi2}) {
    xs.push_back(psi->lo());
    xs.push_back(psi->hi());
    for (const auto& p : psi->pieces()) {
      xs.push_back(p.u);
      xs.push_back(p.v);
    }
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> ux;
  for (double x : xs) {
    if (ux.empty() || x - ux.back() > 1e-14) ux.push_back(x);
  }
  ux.back() = hi;
  std::vector<double> ys;
  for (double x : ux) ys.push_back(psi1.primitive(x) - psi2.primitive(x));
  return Polyline(std::move(ux), std::move(ys));
}

GridFunction hardy_rearrangement(const GridFunction& f) {
  require(f.is_real(), Errc::ModelMismatch, "rearrangement needs a real function");
  std::vector<double> xs;
  std::vector<double> ys = f.reals();
  for (double v : ys) require(v >= 0.0, Errc::NegativeArgument, "rearrangement needs f >= 0");
  for (std::size_t i = 0; i <= f.N(); ++i) xs.push_back(f.node(i));
  const Polyline r = hardy_rearrangement(Polyline(std::move(xs), std::move(ys)));
  return GridFunction::tabulate_real(0.0, f.b() - f.a(), f.N(), [&r](double t) { return r.eval(t); });
}

}  // namespace ksr
