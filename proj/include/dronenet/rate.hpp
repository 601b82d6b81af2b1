// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "dronenet/density.hpp"
#include "dronenet/displacement.hpp"
#include "dronenet/mobility.hpp"
#include "dronenet/walk_laws.hpp"

namespace dronenet {

struct ChannelParams {
  double h = 100.0;      // meters
  double alpha = 3.0;    // path-loss exponent, > 2
  int m0 = 1;            // serving Nakagami shape
  int mx = 1;            // interferer Nakagami shape
  double power = 1.0;    // watts; cancels in the SIR
  void validate() const;
};

struct RateQuery {
  ServiceModel service = ServiceModel::UDM;
  MobilityModelSpec model;
  double lambda0 = 1e-6;
  ChannelParams channel;
  double t = 0.0;
};

struct RateOptions {
  double rel_tol = 1e-4;         // outer and inner adaptive quadrature
  double u0_tail = 1e-10;        // serving-distance truncation: exp(-pi lambda0 u0^2) below this
  double ccdf_floor = 1e-8;      // gamma truncation
  int ux_nodes = 48;             // Gauss-Legendre nodes per smooth piece of the density
  SeriesOptions series;
  WalkLawOptions walk;
};

struct RateResult {
  double value = 0.0;   // nats per channel use
  double error = 0.0;   // quadrature error estimate
  double u0_max = 0.0;  // serving-distance truncation point
  double gamma_max = 0.0;
  long evaluations = 0;
};

// Quadrature representation of the exponent g(s) of the conditional Laplace transform,
// L(s) = exp(-g(s)), with g(s) = sum_i w_i (1 - (1 + c_i s)^-m).
class InterferenceField {
 public:
  InterferenceField(const InterfererDensity& density, const ChannelParams& ch, int nodes = 48);

  // g^(j)(s) for j = 0..k_max.
  std::vector<double> exponent_derivatives(double s, int k_max) const;
  double exponent(double s) const { return exponent_derivatives(s, 0)[0]; }
  // P[SIR >= gamma | serving] at s = m0 gamma r0^alpha.
  double conditional_ccdf(double s, int m0) const;
  std::size_t size() const { return weight_.size(); }

 private:
  std::vector<double> weight_;
  std::vector<double> c_;
  double m_ = 1.0;
};

// L^(k)(s) for k = 0..k_max from the exponent derivatives by the composition recursion.
std::vector<double> laplace_from_exponent(const std::vector<double>& g);

// Derivatives of the conditional Laplace transform of interference for the given density.
std::vector<double> conditional_laplace(double s, const InterfererDensity& density, const ChannelParams& ch,
                                        int k_max);

// Interferer density and serving distance as functions of the initial serving distance u0 and time t.
class DensityProvider {
 public:
  DensityProvider(ServiceModel service, MobilityModelSpec model, double lambda0, double t_max,
                  SeriesOptions series = {}, WalkLawOptions walk = {});

  InterfererDensity at(double u0, double t) const;
  double serving_distance(double u0, double t) const;
  ServiceModel service() const { return service_; }
  const MobilityModelSpec& model() const { return model_; }
  double lambda0() const { return lambda0_; }

 private:
  ServiceModel service_;
  MobilityModelSpec model_;
  double lambda0_;
  std::unique_ptr<DisplacementModel> disp_;
};

class RateEvaluator {
 public:
  RateEvaluator(ServiceModel service, MobilityModelSpec model, double lambda0, ChannelParams ch, double t_max,
                RateOptions opts = {});

  RateResult average_rate(double t) const;
  RateResult session_rate(double T) const;
  const DensityProvider& provider() const { return provider_; }

 private:
  DensityProvider provider_;
  ChannelParams ch_;
  RateOptions opts_;
};

RateResult average_rate(const RateQuery& q, const RateOptions& opts = {});
RateResult session_rate(const RateQuery& q, double T, const RateOptions& opts = {});

}  // namespace dronenet
