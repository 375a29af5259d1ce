#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ksr/gridfn.hpp"
#include "ksr/modulus.hpp"

namespace ksr {

enum class ClassTag { Homega, W1Homega };

struct SampleSpec {
  ClassTag cls = ClassTag::Homega;
  std::optional<Model> model;  // empty: cycle through real, vector, interval, union
  Modulus w = Modulus::power(1.0, 1.0);
  double a = 0.0;
  double b = 1.0;
  std::size_t N = 4096;
  std::size_t trials = 1000;
  std::uint64_t seed = 7;
};

struct Sample {
  GridFunction f;
  GridFunction phi;  // derivative for W1 samples (convexified), empty otherwise
  std::string generator;
};

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of sample i; depends on nothing but (seed, i).
std::uint64_t sample_seed(std::uint64_t seed, std::size_t i);

/// Real member of H^omega on [a, b], tabulated on N cells.
std::vector<double> sample_real(const Modulus& w, double a, double b, std::size_t N, std::uint64_t seed,
                                std::string* generator = nullptr);
Sample draw(const SampleSpec& spec, std::size_t i);

/// KSR_THREADS if set, else hardware concurrency.
std::size_t worker_count();

struct SupResult {
  double value = 0.0;
  std::size_t argmax = 0;
};
/// max of eval(i) over i < trials; parallel, reduced in index order.
SupResult empirical_sup(std::size_t trials, const std::function<double(std::size_t)>& eval);

}  // namespace ksr
