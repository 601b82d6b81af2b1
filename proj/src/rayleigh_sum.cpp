// SPDX-License-Identifier: Apache-2.0
#include "dronenet/rayleigh_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>
#include <boost/math/special_functions/gamma.hpp>

#include "dronenet/error.hpp"
#include "dronenet/quadrature.hpp"

namespace dronenet {

namespace {

double log_double_factorial_odd(int n) {
  // log((2n-1)!!) = log((2n)!) - n log 2 - log(n!)
  return std::lgamma(2.0 * n + 1.0) - n * std::log(2.0) - std::lgamma(n + 1.0);
}

// log of 2^(n-1) (n-1)!
double log_norm(int n) { return (n - 1) * std::log(2.0) + std::lgamma(static_cast<double>(n)); }

// Correction term a0 * d/dx [x (x-a2)^(2n-1) exp(-a1 (x-a2)^2 / (2b))] / (2^(n-1) (b/a1)^n (n-1)!) without a0.
double correction_density(double x, int n, double a1, double a2, double b) {
  const double y = x - a2;
  if (y == 0.0) return 0.0;
  const double log_mag = (2 * n - 2) * std::log(std::abs(y)) - a1 * y * y / (2.0 * b) -
                         n * std::log(b / a1) - log_norm(n);
  const double bracket = 2.0 * n * x - a2 - a1 * x * y * y / b;
  return std::exp(log_mag) * bracket;
}

double correction_integral(double x, int n, double a1, double a2, double b) {
  const double y = x - a2;
  if (y == 0.0 || x == 0.0) return 0.0;
  const double log_mag = std::log(x) + (2 * n - 1) * std::log(std::abs(y)) - a1 * y * y / (2.0 * b) -
                         n * std::log(b / a1) - log_norm(n);
  return (y > 0.0 ? 1.0 : -1.0) * std::exp(log_mag);
}

double main_density(double x, int n, double b) {
  if (x <= 0.0) return 0.0;
  return std::exp((2 * n - 1) * std::log(x) - x * x / (2.0 * b) - n * std::log(b) - log_norm(n));
}

struct Histogram {
  std::vector<double> centers;
  std::vector<double> density;
};

struct FitFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const Histogram* h;
  int n;
  double b;

  int inputs() const { return 2; }
  int values() const { return static_cast<int>(h->centers.size()); }

  // Optimal a0 for fixed (a1, a2) by linear least squares.
  double best_a0(double a1, double a2) const {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < h->centers.size(); ++i) {
      const double d = correction_density(h->centers[i], n, a1, a2, b);
      num += (main_density(h->centers[i], n, b) - h->density[i]) * d;
      den += d * d;
    }
    return den > 0.0 ? num / den : 0.0;
  }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
    const double a1 = std::exp(p[0]);
    const double a2 = p[1];
    const double a0 = best_a0(a1, a2);
    for (std::size_t i = 0; i < h->centers.size(); ++i) {
      const double x = h->centers[i];
      r[static_cast<Eigen::Index>(i)] =
          main_density(x, n, b) - a0 * correction_density(x, n, a1, a2, b) - h->density[i];
    }
    return 0;
  }
};

double rms(const Eigen::VectorXd& r) { return std::sqrt(r.squaredNorm() / static_cast<double>(r.size())); }

}  // namespace

double rayleigh_sum_b(int n, double sigma) {
  if (n < 1) throw ParameterError("n must be >= 1");
  return sigma * sigma * std::exp(log_double_factorial_odd(n) / n) / n;
}

double rayleigh_sum_shape_pdf(double x, int n, double a0, double a1, double a2, double b) {
  if (x <= 0.0) return 0.0;
  return main_density(x, n, b) - a0 * correction_density(x, n, a1, a2, b);
}

double rayleigh_sum_shape_cdf(double x, int n, double a0, double a1, double a2, double b) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(static_cast<double>(n), x * x / (2.0 * b)) -
         a0 * correction_integral(x, n, a1, a2, b);
}

double RayleighSumFit::pdf(double s) const {
  const double rn = std::sqrt(static_cast<double>(n));
  return rayleigh_sum_shape_pdf(s / rn, n, a0, a1, a2, b) / rn;
}

double RayleighSumFit::cdf(double s) const {
  const double rn = std::sqrt(static_cast<double>(n));
  return std::clamp(rayleigh_sum_shape_cdf(s / rn, n, a0, a1, a2, b), 0.0, 1.0);
}

double RayleighSumFit::mean() const {
  const double hi = n * sigma * std::sqrt(std::numbers::pi / 2.0) + 12.0 * sigma * std::sqrt(n);
  return integrate_adaptive([this](double s) { return s * pdf(s); }, 0.0, hi, 1e-12).value;
}

RayleighSumFit fit_rayleigh_sum(int n, double sigma, Rng& rng, RayleighSumFitOptions opts) {
  if (n < 2) throw ParameterError("Rayleigh-sum fit needs n >= 2");
  if (!(sigma > 0.0)) throw ParameterError("Rayleigh sigma must be positive");
  if (opts.samples < 1000 || opts.bins < 10) throw ParameterError("fit needs >= 1000 samples and >= 10 bins");

  // Work in sigma = 1 units; x = S_n / sqrt(n).
  const double rn = std::sqrt(static_cast<double>(n));
  const double mean_x = rn * std::sqrt(std::numbers::pi / 2.0);
  const double sd_x = std::sqrt(2.0 - std::numbers::pi / 2.0);
  const double lo = std::max(0.0, mean_x - 7.0 * sd_x);
  const double hi = mean_x + 7.0 * sd_x;
  const double width = (hi - lo) / opts.bins;
  std::vector<long> counts(static_cast<std::size_t>(opts.bins), 0);
  for (long i = 0; i < opts.samples; ++i) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += std::sqrt(2.0 * rng.exponential());
    const double x = s / rn;
    const long bin = static_cast<long>(std::floor((x - lo) / width));
    if (bin >= 0 && bin < opts.bins) ++counts[static_cast<std::size_t>(bin)];
  }
  Histogram h;
  for (int i = 0; i < opts.bins; ++i) {
    h.centers.push_back(lo + (i + 0.5) * width);
    h.density.push_back(static_cast<double>(counts[static_cast<std::size_t>(i)]) /
                        (static_cast<double>(opts.samples) * width));
  }

  const double b1 = rayleigh_sum_b(n, 1.0);
  FitFunctor f{&h, n, b1};
  Eigen::VectorXd r(f.values());

  // Coarse grid for a starting point.
  Eigen::VectorXd best(2);
  double best_rms = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      Eigen::VectorXd p(2);
      p << -3.0 + 6.0 * i / 40.0, -2.0 + (mean_x + 4.0) * j / 40.0;
      f(p, r);
      const double e = rms(r);
      if (std::isfinite(e) && e < best_rms) {
        best_rms = e;
        best = p;
      }
    }
  }
  if (!std::isfinite(best_rms)) throw NumericalError("Rayleigh-sum fit: no finite starting point", best_rms);

  Eigen::NumericalDiff<FitFunctor> nd(f);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<FitFunctor>> lm(nd);
  Eigen::VectorXd p = best;
  const auto status = lm.minimize(p);
  f(p, r);
  double final_rms = rms(r);
  if (!std::isfinite(final_rms) || final_rms > best_rms) {
    p = best;
    final_rms = best_rms;
  }
  if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters) {
    throw NumericalError("Rayleigh-sum fit did not converge", final_rms);
  }

  RayleighSumFit out;
  out.n = n;
  out.sigma = sigma;
  out.a1 = std::exp(p[0]);
  out.a2 = p[1] * sigma;
  out.a0 = f.best_a0(std::exp(p[0]), p[1]);
  out.b = rayleigh_sum_b(n, sigma);
  out.rms_residual = final_rms / sigma;
  return out;
}

}  // namespace dronenet
