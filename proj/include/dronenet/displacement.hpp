// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dronenet/distributions.hpp"
#include "dronenet/mobility.hpp"
#include "dronenet/walk_laws.hpp"

namespace dronenet {

struct Atom {
  double at = 0.0;
  double mass = 0.0;
};

// Continuous density on [0, vt) stored in u = sqrt(1 - l / vt) over uniform cells,
// with g(u) = f(l) |dl/du| sampled at Gauss-Legendre nodes of each cell.
class TabulatedContinuous {
 public:
  TabulatedContinuous(double vt, int cells, int order, std::vector<double> g_values);

  // Positions l of the nodes, in storage order (cell-major).
  static std::vector<double> node_positions(double vt, int cells, int order);
  // |dl/du| at each node.
  static std::vector<double> node_jacobians(double vt, int cells, int order);

  double vt() const { return vt_; }
  double pdf(double l) const;
  // Integral of the density over [0, l].
  double mass_below(double l) const;
  double total() const { return total_; }
  // Integral of f(l) k(l) over [a, b]; k is assumed smooth inside (a, b).
  double integrate(double a, double b, const std::function<double(double)>& k) const;
  void scale(double c);

 private:
  double vt_;
  int cells_;
  int order_;
  double du_;
  std::vector<double> g_;        // cells * order node values
  std::vector<double> coef_;     // cells * order Legendre coefficients
  std::vector<double> mass_up_;  // mass of cells c..cells-1, i.e. l below the cell's top
  double total_ = 0.0;

  double g_at(int cell, double x) const;
  double g_integral_from_left(int cell, double x) const;
  double u_of(double l) const;
};

// Mixed law of the net displacement L(t): atoms plus a continuous density on [0, vt).
class NetDisplacementDistribution {
 public:
  using Evaluator = std::function<double(double)>;

  static NetDisplacementDistribution point_mass(double v, double t, double at, std::string label);
  // `mass_below(l)` is the integral of `pdf` over [0, min(l, vt)].
  static NetDisplacementDistribution analytic(double v, double t, std::vector<Atom> atoms, Evaluator pdf,
                                              Evaluator mass_below, std::string label);
  static NetDisplacementDistribution tabulated(double v, double t, std::vector<Atom> atoms,
                                               TabulatedContinuous continuous, std::string label,
                                               int series_terms, double raw_total);

  double t() const { return t_; }
  double v() const { return v_; }
  double vt() const { return v_ * t_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  // Mass sitting exactly at l = vt.
  double atom_mass() const;
  double pdf(double l) const;
  // Right-continuous cdf; equals 1 for l >= vt.
  double cdf(double l) const;
  // P[L < l].
  double cdf_left(double l) const;
  double continuous_mass() const;
  // Atom mass plus continuous mass before renormalization of a tabulated series.
  double raw_total_mass() const { return raw_total_; }
  // Integral of f_L(l) k(l) over [a, b] for the continuous part only; k smooth inside (a, b).
  double integrate_pdf(double a, double b, const Evaluator& k) const;
  int series_terms() const { return series_terms_; }
  const std::string& label() const { return label_; }

 private:
  double v_ = 0.0;
  double t_ = 0.0;
  std::vector<Atom> atoms_;
  Evaluator pdf_;
  Evaluator mass_below_;
  std::shared_ptr<const TabulatedContinuous> table_;
  double raw_total_ = 1.0;
  int series_terms_ = 0;
  std::string label_;
};

struct SeriesOptions {
  int cells = 64;
  int order = 4;
  int s_nodes = 32;      // per piece of the completed-path integral
  int phi_nodes = 16;
  int theta_nodes = 24;
  int m_nodes = 24;      // RWP flight-start integral
  int hover_nodes = 32;  // RWP hover-term integral
  double tail = 1e-4;
  int max_terms = 200;
  bool normalize = true;
};

NetDisplacementDistribution sl_displacement(double v, double t);
NetDisplacementDistribution rs_displacement(const ScalarDistribution& flight, double v, double t);
// Constant-speed motion on a circle of the given radius: L = 2 rho sin(vt / (2 rho)).
NetDisplacementDistribution arc_displacement(double radius, double v, double t);
NetDisplacementDistribution rw_displacement(const FlightWalkLaw& law, double v, double t,
                                            const SeriesOptions& opts = {});
NetDisplacementDistribution rwp_displacement(const FlightWalkLaw& law, const WaitLaw& waits, double v, double t,
                                             const SeriesOptions& opts = {});

// Number of walk terms needed at path length vt (first k with F_{S_k}(vt) < tail).
int series_length(const FlightWalkLaw& law, double vt, double tail, int max_terms);

// Pointwise RW density on (0, vt) from the series (used to fill tables and in tests).
double rw_pdf_point(const FlightWalkLaw& law, double vt, double l, int terms, const SeriesOptions& opts);
// Pointwise RWP density on (0, vt).
double rwp_pdf_point(const FlightWalkLaw& law, const WaitLaw& waits, double v, double t, double l, int terms,
                     const SeriesOptions& opts);

// Builds and caches L(t) laws of one mobility model.
class DisplacementModel {
 public:
  explicit DisplacementModel(MobilityModelSpec spec, SeriesOptions opts = {}, WalkLawOptions walk = {},
                             double t_max = 0.0);

  const MobilityModelSpec& spec() const { return spec_; }
  std::shared_ptr<const NetDisplacementDistribution> at(double t) const;

 private:
  MobilityModelSpec spec_;
  SeriesOptions opts_;
  std::unique_ptr<FlightWalkLaw> law_;
  std::unique_ptr<WaitLaw> waits_;
  mutable std::mutex mu_;
  mutable std::map<double, std::shared_ptr<const NetDisplacementDistribution>> cache_;
};

}  // namespace dronenet
