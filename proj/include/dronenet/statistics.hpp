// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace dronenet {

// Kolmogorov-Smirnov distance between the empirical cdf of `samples` and `cdf`.
// Ties are grouped; `cdf_left` gives F(x-) and defaults to cdf evaluated just below x.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left = {});

// Pearson chi-square p-value for uniformity of angles on [0, 2 pi).
double chi_square_uniformity(const std::vector<double>& angles, int bins);

struct DispersionSummary {
  std::vector<double> mean;       // per cell
  std::vector<double> variance;   // per cell, unbiased
  std::vector<double> ratio;      // variance / mean
  std::vector<double> std_error;  // standard error of the mean
};

// counts[r][i]: count of cell i in realization r.
DispersionSummary dispersion(const std::vector<std::vector<long>>& counts);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long count = 0;
};

MeanEstimate mean_estimate(const std::vector<double>& x);

}  // namespace dronenet
