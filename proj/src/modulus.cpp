#include "ksr/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ksr/error.hpp"

namespace ksr {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double to_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(Errc::ParseError, "not a number: '" + s + "'");
  }
  require(used == s.size(), Errc::ParseError, "not a number: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::map<std::string, double> key_values(const std::string& body) {
  std::map<std::string, double> kv;
  for (const auto& item : split(body, ',')) {
    const auto eq = item.find('=');
    require(eq != std::string::npos, Errc::ParseError, "expected key=value, got '" + item + "'");
    kv[trim(item.substr(0, eq))] = to_number(trim(item.substr(eq + 1)));
  }
  return kv;
}

}  // namespace

Modulus Modulus::power(double K, double alpha) {
  require(K > 0.0 && std::isfinite(K), Errc::InvalidArgument, "power modulus needs K > 0");
  require(alpha > 0.0 && alpha <= 1.0, Errc::InvalidArgument, "power modulus needs 0 < alpha <= 1");
  Modulus m;
  m.family_ = Family::Power;
  m.K_ = K;
  m.alpha_ = alpha;
  m.concave_ = true;
  m.spec_ = "power:K=" + fmt(K) + ",alpha=" + fmt(alpha);
  return m;
}

Modulus Modulus::min_linear(double K, double C) {
  require(K > 0.0 && C > 0.0, Errc::InvalidArgument, "minlin modulus needs K > 0 and C > 0");
  Modulus m;
  m.family_ = Family::MinLinear;
  m.K_ = K;
  m.C_ = C;
  m.concave_ = true;
  m.spec_ = "minlin:K=" + fmt(K) + ",C=" + fmt(C);
  return m;
}

Modulus Modulus::piecewise_linear(std::vector<std::pair<double, double>> pts, bool require_concave) {
  require(pts.size() >= 2, Errc::InvalidArgument, "piecewise-linear modulus needs two breakpoints");
  require(pts.front().first == 0.0 && pts.front().second == 0.0, Errc::InvalidArgument,
          "piecewise-linear modulus must start at (0, 0)");
  std::vector<double> slopes;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double dx = pts[i].first - pts[i - 1].first;
    require(dx > 0.0, Errc::InvalidArgument, "breakpoints must be strictly increasing");
    const double s = (pts[i].second - pts[i - 1].second) / dx;
    require(s >= 0.0, Errc::InvalidArgument, "modulus must be nondecreasing");
    slopes.push_back(s);
  }
  require(slopes.front() > 0.0, Errc::InvalidArgument, "modulus must not vanish near 0");
  bool concave = true;
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    if (slopes[i] > slopes[i - 1] + 1e-12) concave = false;
  }
  if (require_concave) {
    require(concave, Errc::NonConcave, "plconcave breakpoints have increasing slopes");
  }
  Modulus m;
  m.family_ = Family::PiecewiseLinear;
  m.pts_ = std::move(pts);
  m.concave_ = concave;
  std::string body;
  for (std::size_t i = 0; i < m.pts_.size(); ++i) {
    body += (i ? ";" : "") + fmt(m.pts_[i].first) + "," + fmt(m.pts_[i].second);
  }
  m.spec_ = std::string(require_concave ? "plconcave:" : "pl:") + body;
  m.validate();
  return m;
}

void Modulus::validate() {
  if (family_ != Family::PiecewiseLinear) return;
  const double T = 2.0 * pts_.back().first;
  const auto w = subadditivity_witness([this](double t) { return eval(t); }, T);
  if (w) {
    fail(Errc::NotSubadditive, "omega(" + fmt(w->first + w->second) + ") > omega(" + fmt(w->first) +
                                   ") + omega(" + fmt(w->second) + ")");
  }
  // breakpoints themselves are the likeliest witnesses for a PL function
  for (const auto& [s, ws] : pts_) {
    for (const auto& [t, wt] : pts_) {
      require(eval(s + t) <= ws + wt + 1e-10, Errc::NotSubadditive,
              "omega(" + fmt(s + t) + ") > omega(" + fmt(s) + ") + omega(" + fmt(t) + ")");
    }
  }
}

Modulus Modulus::parse(const std::string& raw) {
  const std::string spec = trim(raw);
  const auto colon = spec.find(':');
  require(colon != std::string::npos, Errc::ParseError, "modulus spec needs 'family:params'");
  const std::string fam = trim(spec.substr(0, colon));
  const std::string body = spec.substr(colon + 1);
  if (fam == "power") {
    auto kv = key_values(body);
    require(kv.count("alpha") == 1, Errc::ParseError, "power modulus needs alpha");
    const double K = kv.count("K") ? kv["K"] : 1.0;
    return power(K, kv["alpha"]);
  }
  if (fam == "minlin") {
    auto kv = key_values(body);
    require(kv.count("C") == 1, Errc::ParseError, "minlin modulus needs C");
    const double K = kv.count("K") ? kv["K"] : 1.0;
    return min_linear(K, kv["C"]);
  }
  if (fam == "plconcave" || fam == "pl") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& item : split(body, ';')) {
      const auto xy = split(item, ',');
      require(xy.size() == 2, Errc::ParseError, "breakpoint needs 'x,y', got '" + item + "'");
      pts.emplace_back(to_number(xy[0]), to_number(xy[1]));
    }
    return piecewise_linear(std::move(pts), fam == "plconcave");
  }
  fail(Errc::ParseError, "unknown modulus family '" + fam + "'");
}

double Modulus::eval(double t) const {
  if (!(t >= 0.0)) fail(Errc::NegativeArgument, "omega evaluated at negative argument " + fmt(t));
  switch (family_) {
    case Family::Power: return alpha_ == 1.0 ? K_ * t : K_ * std::pow(t, alpha_);
    case Family::MinLinear: return std::min(K_ * t, C_);
    case Family::PiecewiseLinear: {
      if (t >= pts_.back().first) return pts_.back().second;
      auto it = std::upper_bound(pts_.begin(), pts_.end(), t,
                                 [](double v, const std::pair<double, double>& p) { return v < p.first; });
      const auto& hi = *it;
      const auto& lo = *std::prev(it);
      return lo.second + (hi.second - lo.second) * (t - lo.first) / (hi.first - lo.first);
    }
  }
  return 0.0;
}

double Modulus::derivative(double t) const {
  if (!(t >= 0.0)) fail(Errc::NegativeArgument, "omega' evaluated at negative argument " + fmt(t));
  switch (family_) {
    case Family::Power:
      if (alpha_ == 1.0) return K_;
      require(t > 0.0, Errc::Unbounded, "omega'(0) is infinite for alpha < 1");
      return K_ * alpha_ * std::pow(t, alpha_ - 1.0);
    case Family::MinLinear: return K_ * t < C_ ? K_ : 0.0;
    case Family::PiecewiseLinear: {
      if (t >= pts_.back().first) return 0.0;
      auto it = std::upper_bound(pts_.begin(), pts_.end(), t,
                                 [](double v, const std::pair<double, double>& p) { return v < p.first; });
      const auto& hi = *it;
      const auto& lo = *std::prev(it);
      return (hi.second - lo.second) / (hi.first - lo.first);
    }
  }
  return 0.0;
}

double Modulus::primitive(double alpha, double beta) const {
  require(alpha >= 0.0, Errc::NegativeArgument, "I(alpha, beta) needs alpha >= 0");
  require(alpha <= beta, Errc::InvalidArgument, "I(alpha, beta) needs alpha <= beta");
  if (alpha == beta) return 0.0;
  switch (family_) {
    case Family::Power: {
      const double p = alpha_ + 1.0;
      return K_ / p * (std::pow(beta, p) - std::pow(alpha, p));
    }
    case Family::MinLinear: {
      const double knee = C_ / K_;
      auto F = [&](double t) { return t <= knee ? 0.5 * K_ * t * t : 0.5 * C_ * knee + C_ * (t - knee); };
      return F(beta) - F(alpha);
    }
    case Family::PiecewiseLinear: {
      double acc = 0.0;
      auto piece = [&](double l, double r) {
        if (r > l) acc += 0.5 * (eval(l) + eval(r)) * (r - l);
      };
      double cur = alpha;
      for (const auto& [x, y] : pts_) {
        if (x <= cur) continue;
        if (x >= beta) break;
        piece(cur, x);
        cur = x;
      }
      piece(cur, beta);
      return acc;
    }
  }
  return 0.0;
}

std::optional<std::pair<double, double>> subadditivity_witness(const std::function<double(double)>& w,
                                                               double T, int grid) {
  for (int i = 1; i <= grid; ++i) {
    const double s = T * i / grid;
    for (int j = i; i + j <= grid; ++j) {
      const double t = T * j / grid;
      if (w(s + t) > w(s) + w(t) + 1e-10) return std::make_pair(s, t);
    }
  }
  return std::nullopt;
}

}  // namespace ksr
