#pragma once

#include <string>

#include "ksr/gridfn.hpp"
#include "ksr/kscore.hpp"
#include "ksr/modulus.hpp"

namespace ksr {

/// Inner window [t - g1, t + g2] inside outer window [t - h1, t + h2].
struct WindowConfig {
  double t;
  double g1, g2;
  double h1, h2;
  double H() const { return h1 + h2; }
};

/// Throws WindowViolation. With allow_point the inner window may be {t}.
void check_window(const WindowConfig& c, double a, double b, bool allow_point = false);
/// g_i = min(gamma, distance to the end), h_i likewise.
WindowConfig clamped_windows(double t, double gamma, double h, double a, double b);

/// (f(t + g2) -H f(t - g1)) / (g1 + g2)
Element divided_difference(const GridFunction& f, double t, double g1, double g2);

/// Sharp constant for dist(inner quotient, outer quotient); 0 when the windows coincide.
double K_value(const WindowConfig& c, const Modulus& w);
/// (I(h1) + I(h2)) / (h1 + h2)
double derivative_constant(double h1, double h2, const Modulus& w);

enum class LandauVariant { B, C, D, E };
LandauVariant parse_variant(const std::string& s);
std::string variant_name(LandauVariant v);

/// Right-hand side. `second` is |outer quotient at t| for b/c and ||f||_C for d/e.
double landau_rhs(LandauVariant v, const WindowConfig& c, const Modulus& w, double seminorm, double second);

struct LandauExtremal {
  GridFunction g;  // derivative
  GridFunction f;  // the extremal itself
  double xi = 0.0;
  double lhs = 0.0;     // |inner quotient| or |f'(t)|
  double rhs = 0.0;     // right-hand side with seminorm 1
  double norm_C = 0.0;  // sup |f|
};

/// Real extremal on [a, b] sampled with N cells; b and d need a concave modulus.
LandauExtremal landau_extremal(LandauVariant v, const WindowConfig& c, const Modulus& w, double a, double b,
                               std::size_t N = 4096);

enum class StechkinTarget { Derivative, Divided };
StechkinTarget parse_target(const std::string& s);

double stechkin_value(StechkinTarget target, const WindowConfig& c, const Modulus& w);

struct StechkinCertificate {
  double value;
  double min_gap;  // min over the operator family of |A f - T f| on the extremal
  bool norm_ok;    // outer quotient has norm <= 2 / H on random bounded inputs
};
StechkinCertificate stechkin_certificate(StechkinTarget target, const WindowConfig& c, const Modulus& w, double a,
                                         double b, std::size_t N = 4096, unsigned seed = 1);

struct DeltaRecovery {
  double delta;
  double value;
};
DeltaRecovery delta_recovery_value(double t, double h, const Modulus& w, double a, double b);

}  // namespace ksr
