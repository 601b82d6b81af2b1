// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "dronenet/distributions.hpp"
#include "dronenet/rayleigh_sum.hpp"

namespace dronenet {

// How the joint law of (S_n, Z_n) is approximated for n >= 3.
enum class JointApprox {
  Independent,            // f_S(s) f_Z(z), restricted to z <= s
  IndependentConditioned  // f_S(s) f_Z(z) / F_Z(s) on z <= s
};

struct WalkLawOptions {
  JointApprox approx = JointApprox::IndependentConditioned;
  RayleighSumFitOptions fit{};
  std::uint64_t fit_seed = 0x5EEDF17ULL;
  // Largest total path length needed by grid-based laws (non-Rayleigh, non-exponential flights).
  double s_max = 0.0;
  int theta_nodes = 24;
};

// Piecewise-linear density on a uniform grid, produced by repeated convolution.
struct GridDensity {
  double step = 0.0;
  std::vector<double> pdf;  // pdf at k * step
  std::vector<double> cdf;  // cdf at k * step (trapezoid)
  double pdf_at(double x) const;
  double cdf_at(double x) const;
};

// Total length S_n, net displacement Z_n and their joint law for walks of n flights.
class FlightWalkLaw {
 public:
  explicit FlightWalkLaw(ScalarDistribution flight, WalkLawOptions opts = {});

  const ScalarDistribution& flight() const { return flight_; }
  const WalkLawOptions& options() const { return opts_; }

  double pdf_S(int n, double s) const;
  double cdf_S(int n, double s) const;
  // Rayleigh parameter of Z_n (exact for Rayleigh flights, asymptotic otherwise).
  double sigma_Z(int n) const;
  double pdf_Z(int n, double z) const;
  double cdf_Z(int n, double z) const;

  // Joint density of (S_n, Z_n) for n >= 2; zero for z > s.
  double joint(int n, double s, double z) const;
  // n = 2 joint by direct quadrature over the turn angle, valid for any flight law with a density.
  double joint2_quadrature(double s, double z) const;
  // n = 1 has all mass on the line s = z with density f_R.
  double line_density(double s) const { return flight_.pdf(s); }

  // Fitted constants for Rayleigh flights; null for other laws.
  const RayleighSumFit* rayleigh_fit(int n) const;

 private:
  ScalarDistribution flight_;
  WalkLawOptions opts_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<RayleighSumFit>> fits_;
  mutable std::map<int, std::unique_ptr<GridDensity>> grids_;
  mutable std::array<std::atomic<const RayleighSumFit*>, 256> fit_ready_{};
  mutable std::array<std::atomic<const GridDensity*>, 256> grid_ready_{};

  const GridDensity& grid_S(int n) const;
};

double joint_sz(const FlightWalkLaw& law, int n, double s, double z);

// Aggregate hover W_n = T_0 + ... + T_n.
class WaitLaw {
 public:
  WaitLaw(ScalarDistribution hover, double t_max);

  const ScalarDistribution& hover() const { return hover_; }
  double pdf_W(int n, double w) const;
  double cdf_W(int n, double w) const;

 private:
  ScalarDistribution hover_;
  double t_max_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<GridDensity>> grids_;
  mutable std::array<std::atomic<const GridDensity*>, 256> grid_ready_{};

  const GridDensity& grid_W(int n) const;
};

// Grid densities of sums of k i.i.d. copies, k = 1..k_max, step = mean / 200, up to x_max.
std::vector<GridDensity> convolution_powers(const ScalarDistribution& d, int k_max, double x_max);

}  // namespace dronenet
