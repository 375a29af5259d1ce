#include "ksr/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "ksr/error.hpp"

namespace ksr {

namespace {

// Convexified payload as a flat list of numbers; empty for the max space,
// whose only convex element is theta.
void channels(const Element& x, std::vector<double>& out) {
  out.clear();
  switch (x.model()) {
    case Model::Real: out.push_back(x.as<Real>().v); break;
    case Model::Vector: out = x.as<Vector>().v; break;
    case Model::Interval: {
      out.push_back(x.as<Interval>().lo);
      out.push_back(x.as<Interval>().hi);
      break;
    }
    case Model::IntervalUnion: {
      const auto& parts = x.as<IntervalUnion>().parts;
      out.push_back(parts.front().lo);
      out.push_back(parts.back().hi);
      break;
    }
    case Model::MaxSpace: break;
  }
}

Element from_channels(const Element& like, const std::vector<double>& c) {
  switch (like.model()) {
    case Model::Real: return Element::real(c[0]);
    case Model::Vector: return Element::vector(c);
    case Model::Interval:
    case Model::IntervalUnion: {
      // rounding can cross endpoints of degenerate intervals
      const double lo = std::min(c[0], c[1]);
      const double hi = std::max(c[0], c[1]);
      return Element::interval(lo, hi);
    }
    case Model::MaxSpace: return Element::max_scalar(0.0);
  }
  fail(Errc::ModelMismatch, "unreachable");
}

template <class Visit>
void for_pairs(std::size_t N, bool strict, Visit&& visit) {
  if (strict) {
    for (std::size_t i = 0; i <= N; ++i) {
      for (std::size_t j = i + 1; j <= N; ++j) visit(i, j, j - i);
    }
    return;
  }
  for (std::size_t span = 1; span <= N; span *= 2) {
    for (std::size_t i = 0; i + span <= N; ++i) visit(i, i + span, span);
  }
}

}  // namespace

GridFunction::GridFunction(double a, double b, std::vector<Element> values)
    : a_(a), b_(b), values_(std::move(values)) {
  require(a < b, Errc::InvalidArgument, "grid function needs a < b");
  require(values_.size() >= 3, Errc::InvalidArgument, "grid function needs N >= 2");
  const Model m = values_.front().model();
  for (const auto& v : values_) {
    const bool same = v.model() == m ||
                      ((v.model() == Model::Interval || v.model() == Model::IntervalUnion) &&
                       (m == Model::Interval || m == Model::IntervalUnion));
    require(same, Errc::ModelMismatch, "grid values must share one model");
  }
}

GridFunction GridFunction::tabulate(double a, double b, std::size_t N, const std::function<Element(double)>& f) {
  require(N >= 2, Errc::InvalidArgument, "grid needs N >= 2");
  std::vector<Element> v;
  v.reserve(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    const double t = i == N ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(N);
    v.push_back(f(t));
  }
  return GridFunction(a, b, std::move(v));
}

GridFunction GridFunction::tabulate_real(double a, double b, std::size_t N, const std::function<double(double)>& f) {
  return tabulate(a, b, N, [&f](double t) { return Element::real(f(t)); });
}

GridFunction GridFunction::from_reals(double a, double b, const std::vector<double>& v) {
  std::vector<Element> e;
  e.reserve(v.size());
  for (double x : v) e.push_back(Element::real(x));
  return GridFunction(a, b, std::move(e));
}

double GridFunction::node(std::size_t i) const {
  if (i == N()) return b_;
  return a_ + (b_ - a_) * static_cast<double>(i) / static_cast<double>(N());
}

std::vector<double> GridFunction::reals() const {
  std::vector<double> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v.real_value());
  return out;
}

Element GridFunction::eval(double t) const {
  require(t >= a_ - 1e-12 && t <= b_ + 1e-12, Errc::OutOfDomain, "evaluation point outside [a, b]");
  const double u = std::clamp((t - a_) / step(), 0.0, static_cast<double>(N()));
  const Model m = model();
  if (m == Model::IntervalUnion || m == Model::MaxSpace) {
    return values_[static_cast<std::size_t>(std::lround(u))];
  }
  std::size_t i = std::min(static_cast<std::size_t>(u), N() - 1);
  const double w = u - static_cast<double>(i);
  if (w == 0.0) return values_[i];
  return add(scale(1.0 - w, values_[i]), scale(w, values_[i + 1]));
}

MembershipReport check_Homega(const GridFunction& f, const Modulus& w, bool strict) {
  MembershipReport rep;
  rep.defect = -INFINITY;
  const double h = f.step();
  const bool real = f.is_real();
  std::vector<double> rv;
  if (real) rv = f.reals();
  double last_w = 0.0;
  std::size_t last_span = 0;
  for_pairs(f.N(), strict, [&](std::size_t i, std::size_t j, std::size_t span) {
    if (span != last_span) {
      last_w = w(h * static_cast<double>(span));
      last_span = span;
    }
    const double d = real ? std::abs(rv[i] - rv[j]) : dist(f[i], f[j]);
    const double defect = d - last_w;
    if (defect > rep.defect) {
      rep.defect = defect;
      rep.i = i;
      rep.j = j;
    }
  });
  rep.member = rep.defect <= kMembershipSlack;
  return rep;
}

double omega_seminorm(const GridFunction& f, const Modulus& w, bool strict) {
  const double h = f.step();
  const bool real = f.is_real();
  std::vector<double> rv;
  if (real) rv = f.reals();
  double best = 0.0;
  double last_w = 0.0;
  std::size_t last_span = 0;
  for_pairs(f.N(), strict, [&](std::size_t i, std::size_t j, std::size_t span) {
    if (span != last_span) {
      last_w = w(h * static_cast<double>(span));
      last_span = span;
    }
    const double d = real ? std::abs(rv[i] - rv[j]) : dist(f[i], f[j]);
    if (last_w > 0.0) best = std::max(best, d / last_w);
  });
  return best;
}

double integrate_real(const GridFunction& f, double c, double d) {
  require(c >= f.a() - 1e-12 && d <= f.b() + 1e-12 && c <= d, Errc::OutOfDomain,
          "integration range outside the domain");
  if (c == d) return 0.0;
  const double h = f.step();
  const double uc = std::clamp((c - f.a()) / h, 0.0, static_cast<double>(f.N()));
  const double ud = std::clamp((d - f.a()) / h, 0.0, static_cast<double>(f.N()));
  auto val = [&](double u) {
    std::size_t i = std::min(static_cast<std::size_t>(u), f.N() - 1);
    const double w = u - static_cast<double>(i);
    return (1.0 - w) * f[i].as<Real>().v + w * f[i + 1].as<Real>().v;
  };
  const std::size_t i0 = static_cast<std::size_t>(std::ceil(uc));
  const std::size_t i1 = static_cast<std::size_t>(std::floor(ud));
  if (i0 > i1) return 0.5 * (val(uc) + val(ud)) * (ud - uc) * h;
  double s = 0.5 * (val(uc) + f[i0].as<Real>().v) * (static_cast<double>(i0) - uc);
  for (std::size_t i = i0; i < i1; ++i) s += 0.5 * (f[i].as<Real>().v + f[i + 1].as<Real>().v);
  s += 0.5 * (f[i1].as<Real>().v + val(ud)) * (ud - static_cast<double>(i1));
  return s * h;
}

Element integrate(const GridFunction& f, double c, double d) {
  if (f.is_real()) return Element::real(integrate_real(f, c, d));
  require(c >= f.a() - 1e-12 && d <= f.b() + 1e-12 && c <= d, Errc::OutOfDomain,
          "integration range outside the domain");
  const double h = f.step();
  const double uc = std::clamp((c - f.a()) / h, 0.0, static_cast<double>(f.N()));
  const double ud = std::clamp((d - f.a()) / h, 0.0, static_cast<double>(f.N()));
  std::vector<double> ch0;
  std::vector<double> ch1;
  channels(f[0], ch0);
  std::vector<double> acc(ch0.size(), 0.0);
  auto val = [&](double u, std::vector<double>& out) {
    std::size_t i = std::min(static_cast<std::size_t>(u), f.N() - 1);
    const double w = u - static_cast<double>(i);
    channels(f[i], out);
    std::vector<double> nxt;
    channels(f[i + 1], nxt);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (1.0 - w) * out[k] + w * nxt[k];
  };
  auto add_piece = [&](double u0, double u1) {
    if (u1 <= u0) return;
    val(u0, ch0);
    val(u1, ch1);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += 0.5 * (ch0[k] + ch1[k]) * (u1 - u0) * h;
  };
  double u = uc;
  while (u < ud) {
    const double next = std::min(ud, std::floor(u) + 1.0);
    add_piece(u, next);
    u = next;
  }
  return from_channels(f[0], acc);
}

Element integrate(const GridFunction& f) { return integrate(f, f.a(), f.b()); }

GridFunction lift(const GridFunction& f, const Element& x) {
  require(is_convex(x) && is_invertible(x), Errc::NotInvertible, "lifting needs a convex invertible element");
  require(std::abs(norm(x) - 1.0) <= 1e-12, Errc::InvalidArgument, "lifting element must have norm 1");
  std::vector<Element> v;
  v.reserve(f.N() + 1);
  for (std::size_t i = 0; i <= f.N(); ++i) v.push_back(lift_real(f[i].real_value(), x));
  return GridFunction(f.a(), f.b(), std::move(v));
}

GridFunction hukuhara_derivative(const GridFunction& f) {
  require(is_isotropic(f.model()) || f.model() == Model::IntervalUnion, Errc::NonIsotropic,
          "Hukuhara derivative needs an isotropic model");
  const std::size_t N = f.N();
  const double h = f.step();
  std::vector<Element> v;
  v.reserve(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i == N ? N : i + 1;
    const double span = h * static_cast<double>(hi - lo);
    v.push_back(scale(1.0 / span, hukuhara_diff(f[hi], f[lo])));
  }
  return GridFunction(f.a(), f.b(), std::move(v));
}

GridFunction antiderivative(const GridFunction& phi, const Element& x0) {
  require(is_convex(x0), Errc::InvalidArgument, "base element must be convex");
  const double h = phi.step();
  std::vector<double> prev;
  std::vector<double> cur;
  std::vector<double> base;
  channels(convexify(phi[0]), prev);
  channels(x0, base);
  require(base.size() == prev.size(), Errc::ModelMismatch, "base element and derivative differ in model");
  std::vector<double> acc = base;
  std::vector<Element> out;
  out.reserve(phi.N() + 1);
  out.push_back(from_channels(x0, acc));
  for (std::size_t i = 1; i <= phi.N(); ++i) {
    channels(phi[i], cur);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += 0.5 * (prev[k] + cur[k]) * h;
    out.push_back(from_channels(x0, acc));
    std::swap(prev, cur);
  }
  return GridFunction(phi.a(), phi.b(), std::move(out));
}

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, norm(v));
  return m;
}

double sup_dist(const GridFunction& f, const GridFunction& g) {
  require(f.N() == g.N(), Errc::InvalidArgument, "grids differ");
  double m = 0.0;
  for (std::size_t i = 0; i <= f.N(); ++i) m = std::max(m, dist(f[i], g[i]));
  return m;
}

double grid_eps(const Modulus& w, double length, std::size_t N) {
  return w(2.0 * length / static_cast<double>(N)) + 1e-9;
}

void write_csv(std::ostream& os, const GridFunction& f) {
  const Model m = f.model();
  require(m == Model::Real || m == Model::Interval || m == Model::IntervalUnion, Errc::ModelMismatch,
          "CSV holds real or interval functions; use JSON");
  os << std::setprecision(17);
  if (m == Model::Real) {
    os << "t,v\n";
    for (std::size_t i = 0; i <= f.N(); ++i) os << f.node(i) << ',' << f[i].as<Real>().v << '\n';
    return;
  }
  os << "t,lo,hi\n";
  for (std::size_t i = 0; i <= f.N(); ++i) {
    const Element c = convexify(f[i]);
    os << f.node(i) << ',' << c.as<Interval>().lo << ',' << c.as<Interval>().hi << '\n';
  }
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), Errc::ParseError, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const bool interval = line == "t,lo,hi";
  require(interval || line == "t,v", Errc::ParseError, "CSV header must be 't,v' or 't,lo,hi'");
  std::vector<double> ts;
  std::vector<Element> vals;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        cols.push_back(std::stod(cell, &used));
        require(used == cell.size(), Errc::ParseError, "bad CSV number '" + cell + "'");
      } catch (const std::logic_error&) {
        fail(Errc::ParseError, "bad CSV number '" + cell + "'");
      }
    }
    require(cols.size() == (interval ? 3u : 2u), Errc::ParseError, "wrong CSV column count");
    ts.push_back(cols[0]);
    vals.push_back(interval ? Element::interval(cols[1], cols[2]) : Element::real(cols[1]));
  }
  require(ts.size() >= 3, Errc::ParseError, "CSV needs at least three rows");
  const double h = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    require(std::abs(ts[i] - (ts.front() + h * static_cast<double>(i))) <= 1e-9 * std::max(1.0, std::abs(h)),
            Errc::ParseError, "CSV nodes must be uniform");
  }
  return GridFunction(ts.front(), ts.back(), std::move(vals));
}

nlohmann::json to_json(const GridFunction& f) {
  nlohmann::json j;
  j["a"] = f.a();
  j["b"] = f.b();
  j["N"] = f.N();
  j["model"] = std::string(model_name(f.model()));
  auto vals = nlohmann::json::array();
  for (const auto& v : f.values()) vals.push_back(to_json(v)["payload"]);
  j["values"] = vals;
  return j;
}

GridFunction gridfn_from_json(const nlohmann::json& j) {
  try {
    const std::string model = j.at("model").get<std::string>();
    std::vector<Element> vals;
    for (const auto& p : j.at("values")) vals.push_back(element_from_json({{"model", model}, {"payload", p}}));
    return GridFunction(j.at("a").get<double>(), j.at("b").get<double>(), std::move(vals));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("bad grid function json: ") + e.what());
  }
}

}  // namespace ksr
