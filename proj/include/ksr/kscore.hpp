#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ksr/gridfn.hpp"
#include "ksr/modulus.hpp"
#include "ksr/polyline.hpp"

namespace ksr {

using RealFn = std::function<double(double)>;

struct StepPiece {
  double u;
  double v;
  double w;
};

/// Nonnegative piecewise-constant weight. Zero on the support outside the pieces.
class StepWeight {
 public:
  StepWeight(double lo, double hi, std::vector<StepPiece> pieces);
  static StepWeight indicator(double u, double v, double height);
  /// "a,b; u1,v1,w1; u2,v2,w2; ..."
  static StepWeight parse(const std::string& text);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<StepPiece>& pieces() const { return pieces_; }
  double mass() const;
  double eval(double t) const;
  /// Integral over [lo, t].
  double primitive(double t) const;
  Polyline primitive_polyline() const;
  /// True when the pieces cover the support with positive heights.
  bool positive_ae() const;
  std::string to_string() const;

 private:
  double lo_;
  double hi_;
  std::vector<StepPiece> pieces_;
};

/// rho on one affine piece: s in [s0, s1] maps to [r1, r0] decreasingly; m is
/// the common mass level (constant on plateau pieces).
struct RhoSegment {
  double s0, s1;
  double r0, r1;
  double m0, m1;
};

class RhoMap {
 public:
  double a = 0, a1 = 0, b1 = 0, b = 0, c = 0;  // a, a', b', b and c = (a' + b') / 2
  std::vector<RhoSegment> segments;            // ordered by level, outermost first

  double rho(double s) const;
  double rho_inverse(double t) const;
};

/// Equal-mass weights psi1 on [a, a'], psi2 on [b', b], both positive a.e.
RhoMap solve_rho(const StepWeight& psi1, const StepWeight& psi2);
/// Same map from the mass primitives F1 (nondecreasing on [a, a'], from 0)
/// and F2 (nonincreasing on [b', b], down to 0). Plateaus are allowed.
RhoMap rho_from_primitives(const Polyline& F1, const Polyline& F2);

struct KsBound {
  double psi1_form;
  double psi2_form;
};
KsBound ks_bound_forms(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w);
double ks_bound(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w);
/// integral of omega(rho(s) - s) dF1(s) over the map.
double ks_bound(const RhoMap& rho, const Modulus& w);

/// g(t) = -int_t^c w'(rho - s) ds on [a, c], int_c^t w'(s - rho^{-1}) ds on [c, b];
/// extended by constants outside [a, b]. Evaluated exactly.
class KsExtremal {
 public:
  KsExtremal(RhoMap rho, Modulus w);
  double operator()(double t) const;
  double a() const { return rho_.a; }
  double b() const { return rho_.b; }
  const RhoMap& rho() const { return rho_; }

 private:
  RhoMap rho_;
  Modulus w_;
  std::vector<double> g_left_;   // g at s1 of each segment
  std::vector<double> g_right_;  // g at r1 of each segment
};

KsExtremal ks_extremal(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w);

/// dist(int psi1 f, int psi2 f)
double ks_functional(const StepWeight& psi1, const StepWeight& psi2, const GridFunction& f);
/// sum of w * integral over the pieces
Element weighted_integral(const StepWeight& psi, const GridFunction& f);

/// Psi(t) = int_a^t (psi1 - psi2) on [min lo, max hi].
Polyline psi_primitive(const StepWeight& psi1, const StepWeight& psi2);

/// Rearrangement of a nonnegative real grid function (exact for its
/// piecewise-linear interpolant).
GridFunction hardy_rearrangement(const GridFunction& f);

struct Hat {
  double alpha;
  double beta;
  int sign;      // +1 or -1
  Polyline phi;  // |phi_k| on [alpha, beta], zero at both ends
  double height() const { return phi.max(); }
};

struct HatDecomposition {
  Polyline source;
  std::vector<Hat> hats;
};

struct SigmaCheck {
  double abs_sum_error;       // sup | sum |phi_k| - |Psi| |
  double integral_error;      // | sum int |phi_k| - int |Psi| |
  double variation_error;     // | sum Var phi_k - Var Psi |
  bool monotone_disjoint;     // strict monotonicity intervals pairwise disjoint
};

/// Persistence-style peeling of Psi into hats. Psi(a) = Psi(b) = 0 required.
HatDecomposition sigma_decompose(const Polyline& Psi);
SigmaCheck check_sigma(const HatDecomposition& d);
/// R(Psi; t) = sum_k r(|phi_k|, t) on [0, b - a].
Polyline sigma_rearrangement(const HatDecomposition& d);
Polyline sigma_rearrangement(const Polyline& Psi);

/// int_0^L r(t) w'(t) dt, exact for piecewise-linear r.
double integral_r_domega(const Polyline& r, const Modulus& w);
/// |int_0^L r'(t) w(t) dt|
double integral_dr_omega(const Polyline& r, const Modulus& w);

/// Rho map of one hat; F1 is the rising part, F2 the falling part.
RhoMap hat_rho(const Hat& h);

struct GeneralBound {
  double value;     // int R w'
  double hat_sum;   // sum of per-hat rho-form bounds
  HatDecomposition decomposition;
};
GeneralBound general_bound_forms(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w);
double general_bound(const StepWeight& psi1, const StepWeight& psi2, const Modulus& w);

struct GluedExtremal {
  RealFn g;
  bool unimodal_lengths;  // the paper's sufficient condition on support lengths
  MembershipReport membership;
};

/// Glues the per-hat extremals; throws CannotCertify when the candidate
/// leaves H^omega on [a, b] (checked on a grid of N cells).
GluedExtremal glue_extremal(const HatDecomposition& d, const Modulus& w, double a, double b, std::size_t N = 4096);

}  // namespace ksr
