#pragma once

#include <string>

#include "ksr/gridfn.hpp"
#include "ksr/kscore.hpp"
#include "ksr/modulus.hpp"

namespace ksr {

enum class OstrowskiCase { Nested, Overlap, Disjoint };
std::string case_name(OstrowskiCase c);

struct TwoIntervalConfig {
  double a, b, c, d;  // normalized: a <= c, and [c,d] inside [a,b] when a == c
  double M, m;
  OstrowskiCase kind;
};

/// Swaps the intervals when needed and tags the geometry.
TwoIntervalConfig make_config(double a, double b, double c, double d);

/// sup dist(mean over [a,b], mean over [c,d]) over the class.
double two_interval_bound(const TwoIntervalConfig& cfg, const Modulus& w);
/// Glued extremal on [min(a,c), max(b,d)]; needs concave w.
GluedExtremal two_interval_extremal(const TwoIntervalConfig& cfg, const Modulus& w, std::size_t N = 4096);
/// dist of the two means for a sampled function.
double two_interval_functional(const TwoIntervalConfig& cfg, const GridFunction& f);

/// Same midpoint: bound on dist(int_a^b f, (b-a)/(d-c) int_c^d f).
double symmetric_bound(double a, double b, double c, double d, const Modulus& w);

/// dist(P f(t), mean over [c,d]).
double point_vs_mean_bound(double t, double c, double d, const Modulus& w);
RealFn point_vs_mean_extremal(double t, const Modulus& w);
double point_vs_mean_functional(double t, double c, double d, const GridFunction& f);

/// dist((P f(t) + P f(a+b-t)) / 2, mean over [a,b]) for t in [a, (a+b)/2).
double symmetrized_pair_bound(double t, double a, double b, const Modulus& w);
RealFn symmetrized_pair_extremal(double t, double a, double b, const Modulus& w);
double symmetrized_pair_functional(double t, double a, double b, const GridFunction& f);

}  // namespace ksr
