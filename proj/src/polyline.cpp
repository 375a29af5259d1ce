#include "ksr/polyline.hpp"

#include <algorithm>
#include <cmath>

#include "ksr/error.hpp"

namespace ksr {

Polyline::Polyline(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
  require(x.size() == y.size() && !x.empty(), Errc::InvalidArgument, "polyline needs matching nodes");
  for (std::size_t i = 1; i < x.size(); ++i) {
    require(x[i] > x[i - 1], Errc::InvalidArgument, "polyline abscissae must increase");
  }
}

double Polyline::eval(double t) const {
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + w * (y[i] - y[i - 1]);
}

double Polyline::slope(double t) const {
  if (x.size() < 2 || t < x.front() || t >= x.back()) return 0.0;
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  return (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
}

double Polyline::integral() const {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

double Polyline::integral(double l, double r) const {
  if (r <= l) return 0.0;
  double s = 0.0;
  // end-value extension outside the node range
  if (l < x.front()) {
    s += y.front() * (std::min(r, x.front()) - l);
  }
  if (r > x.back()) {
    s += y.back() * (r - std::max(l, x.back()));
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double lo = std::max(l, x[i - 1]);
    const double hi = std::min(r, x[i]);
    if (hi <= lo) continue;
    s += 0.5 * (eval(lo) + eval(hi)) * (hi - lo);
  }
  return s;
}

double Polyline::integral_abs() const { return abs().integral(); }

double Polyline::variation() const {
  double v = 0.0;
  for (std::size_t i = 1; i < y.size(); ++i) v += std::abs(y[i] - y[i - 1]);
  return v;
}

double Polyline::max() const { return *std::max_element(y.begin(), y.end()); }
double Polyline::min() const { return *std::min_element(y.begin(), y.end()); }

double Polyline::max_abs() const {
  double m = 0.0;
  for (double v : y) m = std::max(m, std::abs(v));
  return m;
}

Polyline Polyline::with_crossings(double level) const {
  Polyline out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) {
      const double a = y[i - 1] - level;
      const double b = y[i] - level;
      if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
        const double xc = x[i - 1] + (x[i] - x[i - 1]) * (a / (a - b));
        if (xc > out.x.back() && xc < x[i]) {
          out.x.push_back(xc);
          out.y.push_back(level);
        }
      }
    }
    out.x.push_back(x[i]);
    out.y.push_back(y[i]);
  }
  return out;
}

Polyline Polyline::restricted(double l, double r) const {
  require(l < r, Errc::InvalidArgument, "empty restriction");
  Polyline out;
  out.x.push_back(l);
  out.y.push_back(eval(l));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > l && x[i] < r) {
      out.x.push_back(x[i]);
      out.y.push_back(y[i]);
    }
  }
  out.x.push_back(r);
  out.y.push_back(eval(r));
  return out;
}

Polyline Polyline::abs() const {
  Polyline out = with_crossings(0.0);
  for (double& v : out.y) v = std::abs(v);
  return out;
}

Polyline Polyline::scaled(double c) const {
  Polyline out = *this;
  for (double& v : out.y) v *= c;
  return out;
}

Polyline Polyline::simplified(double tol) const {
  Polyline out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!out.x.empty() && x[i] - out.x.back() <= tol) {
      out.y.back() = y[i];
      continue;
    }
    out.x.push_back(x[i]);
    out.y.push_back(y[i]);
  }
  Polyline res;
  for (std::size_t i = 0; i < out.x.size(); ++i) {
    if (res.x.size() >= 2) {
      const std::size_t n = res.x.size();
      const double s1 = (res.y[n - 1] - res.y[n - 2]) / (res.x[n - 1] - res.x[n - 2]);
      const double s2 = (out.y[i] - res.y[n - 1]) / (out.x[i] - res.x[n - 1]);
      if (std::abs(s1 - s2) <= 1e-13 * std::max({1.0, std::abs(s1), std::abs(s2)})) {
        res.x.back() = out.x[i];
        res.y.back() = out.y[i];
        continue;
      }
    }
    res.x.push_back(out.x[i]);
    res.y.push_back(out.y[i]);
  }
  return res;
}

Polyline operator+(const Polyline& p, const Polyline& q) {
  if (p.empty()) return q;
  if (q.empty()) return p;
  std::vector<double> xs;
  xs.reserve(p.size() + q.size());
  std::merge(p.x.begin(), p.x.end(), q.x.begin(), q.x.end(), std::back_inserter(xs));
  std::vector<double> ux;
  for (double v : xs) {
    if (ux.empty() || v - ux.back() > 1e-15) ux.push_back(v);
  }
  std::vector<double> uy(ux.size());
  for (std::size_t i = 0; i < ux.size(); ++i) uy[i] = p.eval(ux[i]) + q.eval(ux[i]);
  return Polyline(std::move(ux), std::move(uy));
}

double distribution(const Polyline& p, double level) {
  double m = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double y0 = p.y[i - 1];
    const double y1 = p.y[i];
    const double dx = p.x[i] - p.x[i - 1];
    if (y0 > level && y1 > level) {
      m += dx;
    } else if (y0 > level) {
      m += dx * (y0 - level) / (y0 - y1);
    } else if (y1 > level) {
      m += dx * (y1 - level) / (y1 - y0);
    }
  }
  return m;
}

Polyline hardy_rearrangement(const Polyline& p) {
  require(!p.empty(), Errc::InvalidArgument, "rearrangement of an empty function");
  for (double v : p.y) require(v >= -1e-14, Errc::NegativeArgument, "rearrangement needs f >= 0");
  const double L = p.back() - p.front();
  if (p.size() == 1 || L <= 0.0) return Polyline({0.0}, {std::max(0.0, p.y.front())});

  std::vector<double> levels(p.y.begin(), p.y.end());
  for (double& v : levels) v = std::max(v, 0.0);
  std::sort(levels.begin(), levels.end(), std::greater<double>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  Polyline q = p;
  for (double& v : q.y) v = std::max(v, 0.0);

  std::vector<double> rx;
  std::vector<double> ry;
  auto push = [&](double m, double y) {
    m = std::clamp(m, 0.0, L);
    if (!rx.empty() && m <= rx.back()) {
      // coincident abscissa: keep the lower value so r stays nonincreasing
      ry.back() = std::min(ry.back(), y);
      return;
    }
    rx.push_back(m);
    ry.push_back(y);
  };
  for (double lv : levels) {
    double plateau = 0.0;
    for (std::size_t i = 1; i < q.size(); ++i) {
      if (q.y[i - 1] == lv && q.y[i] == lv) plateau += q.x[i] - q.x[i - 1];
    }
    const double gt = distribution(q, lv);
    push(gt, lv);
    if (plateau > 0.0) push(gt + plateau, lv);
  }
  // the minimum level is attained on a set of full remaining measure
  if (rx.back() < L) {
    rx.push_back(L);
    ry.push_back(levels.back());
  } else {
    rx.back() = L;
  }
  return Polyline(std::move(rx), std::move(ry));
}

}  // namespace ksr
