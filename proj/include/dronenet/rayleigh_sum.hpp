// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dronenet/rng.hpp"

namespace dronenet {

// b = sigma^2 ((2n-1)!!)^(1/n) / n.
double rayleigh_sum_b(int n, double sigma);

// Closed-form approximation to the density of x = S_n / sqrt(n), where S_n is a sum of n
// i.i.d. Rayleigh(sigma) lengths. Constants are in the units of sigma (b in sigma^2).
double rayleigh_sum_shape_pdf(double x, int n, double a0, double a1, double a2, double b);
// Exact antiderivative of rayleigh_sum_shape_pdf from 0.
double rayleigh_sum_shape_cdf(double x, int n, double a0, double a1, double a2, double b);

struct RayleighSumFit {
  int n = 0;
  double sigma = 0.0;
  double a0 = 0.0;
  double a1 = 1.0;
  double a2 = 0.0;
  double b = 0.0;
  double rms_residual = 0.0;

  // Density and cdf of S_n itself.
  double pdf(double s) const;
  double cdf(double s) const;
  double mean() const;
};

struct RayleighSumFitOptions {
  long samples = 1'000'000;
  int bins = 200;
};

// Least-squares fit of (a0, a1, a2) against a Monte Carlo histogram of S_n / sqrt(n).
RayleighSumFit fit_rayleigh_sum(int n, double sigma, Rng& rng, RayleighSumFitOptions opts = {});

}  // namespace dronenet
