// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>

#include "dronenet/rng.hpp"

namespace dronenet {

struct Rayleigh {
  double sigma;
};
struct Exponential {
  double mean;
};
struct Erlang {
  int shape;
  double stage_mean;
};
struct Deterministic {
  double value;
};
struct Uniform {
  double lo;
  double hi;
};

// Scalar law for flight lengths, hover times and speeds.
class ScalarDistribution {
 public:
  using Variant = std::variant<Rayleigh, Exponential, Erlang, Deterministic, Uniform>;

  explicit ScalarDistribution(Variant v);

  static ScalarDistribution rayleigh_sigma(double sigma);
  static ScalarDistribution rayleigh_mean(double mean);
  static ScalarDistribution exponential(double mean);
  static ScalarDistribution erlang(int shape, double stage_mean);
  static ScalarDistribution deterministic(double value);
  static ScalarDistribution uniform(double lo, double hi);

  const Variant& variant() const { return v_; }
  template <class T>
  bool is() const { return std::holds_alternative<T>(v_); }
  template <class T>
  const T& as() const { return std::get<T>(v_); }

  // Zero for Deterministic, which has no density.
  double pdf(double x) const;
  // Right-continuous.
  double cdf(double x) const;
  double ccdf(double x) const { return 1.0 - cdf(x); }
  double mean() const;
  double second_moment() const;
  double variance() const;
  bool has_density() const { return !is<Deterministic>(); }
  double support_lo() const;
  double support_hi() const;
  // Upper point beyond which the tail mass is below eps.
  double upper_quantile(double eps) const;

  double sample(Rng& rng) const;

  std::string describe() const;

 private:
  Variant v_;
};

double sample_scalar(const ScalarDistribution& dist, Rng& rng);

// Gamma(m, 1/m) power fading, mean 1, as a sum of m exponentials.
double sample_gamma_fading(int m, Rng& rng);

// Rayleigh closed forms in terms of sigma.
double rayleigh_pdf(double x, double sigma);
double rayleigh_cdf(double x, double sigma);

}  // namespace dronenet
