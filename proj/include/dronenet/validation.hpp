// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dronenet {

// Sample sizes for the acceptance checks. `full` uses the sizes stated by the criteria.
struct ValidationScale {
  std::string name = "full";
  long trajectories = 100000;          // displacement Monte Carlo per (model, t)
  long density_realizations = 20000;   // density oracle per (model, t)
  long closure_samples = 100000;       // Z_5, Psi_5
  long dispersion_realizations = 20000;
  long rate_realizations = 20000;      // SIR Monte Carlo per t

  static ValidationScale full();
  static ValidationScale quick();
  static ValidationScale from_name(const std::string& name);
};

struct CheckResult {
  int criterion = 0;
  std::string id;       // e.g. "4b"
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation; // "<=" or ">=" or "in"
  bool pass = false;
  std::string detail;
};

using CheckSink = std::function<void(const CheckResult&)>;

std::vector<CheckResult> check_displacement_laws(const ValidationScale& s, std::uint64_t seed);     // 1
std::vector<CheckResult> check_rayleigh_asymptotics(const ValidationScale& s, std::uint64_t seed);  // 2
std::vector<CheckResult> check_density_profiles(const ValidationScale& s, std::uint64_t seed);      // 3
std::vector<CheckResult> check_exact_closures(const ValidationScale& s, std::uint64_t seed);        // 4
std::vector<CheckResult> check_theorem1_ordering(const ValidationScale& s, std::uint64_t seed);     // 5
std::vector<CheckResult> check_boundary_limits(const ValidationScale& s, std::uint64_t seed);       // 6
std::vector<CheckResult> check_rate_cross_validation(const ValidationScale& s, std::uint64_t seed); // 7
std::vector<CheckResult> check_rate_trends(const ValidationScale& s, std::uint64_t seed);           // 8
std::vector<CheckResult> check_normalization(const ValidationScale& s, std::uint64_t seed);         // 9
// 10, in-process: serial and parallel kernels agree bit for bit and a repeated table is identical.
std::vector<CheckResult> check_kernel_determinism(const ValidationScale& s, std::uint64_t seed);

// Criteria 1-9 plus the in-process determinism check, in order.
std::vector<CheckResult> run_validation(const ValidationScale& s, std::uint64_t seed, const CheckSink& sink = {});

}  // namespace dronenet
