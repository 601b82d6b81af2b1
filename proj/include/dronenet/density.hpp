// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dronenet/displacement.hpp"
#include "dronenet/distributions.hpp"
#include "dronenet/mobility.hpp"
#include "dronenet/rng.hpp"

namespace dronenet {

enum class ServiceModel { UIM, UDM };

std::string to_string(ServiceModel s);
ServiceModel service_model_from_string(const std::string& name);

// Fraction of the circle of radius l around a point at distance ux from o' that lies in b(o', u0).
double circle_fraction_inside(double l, double ux, double u0);

// Intensity lambda(t; ux, u0) of the interferer process.
class InterfererDensity {
 public:
  enum class Form { Uniform, UimExclusion, General, StraightLine, RandomStop };

  static InterfererDensity homogeneous(double lambda0);
  static InterfererDensity uim(double lambda0, double u0_t);
  static InterfererDensity udm_general(double lambda0, double u0, double t,
                                       std::shared_ptr<const NetDisplacementDistribution> disp);
  static InterfererDensity sl(double lambda0, double u0, double v, double t);
  static InterfererDensity rs(double lambda0, double u0, double v, double t, ScalarDistribution flight);

  double operator()(double ux) const { return lambda0_ * ratio(ux); }
  // lambda / lambda0.
  double ratio(double ux) const;
  // The beta factor of the exclusion-zone construction (UDM forms only).
  double beta(double ux) const;

  ServiceModel service() const { return form_ == Form::Uniform || form_ == Form::UimExclusion ? ServiceModel::UIM : ServiceModel::UDM; }
  Form form() const { return form_; }
  double lambda0() const { return lambda0_; }
  double u0() const { return u0_; }
  double t() const { return t_; }
  double vt() const { return vt_; }
  // Points where the evaluator may be non-smooth, sorted.
  std::vector<double> breakpoints() const;
  // Radius beyond which the density equals lambda0.
  double homogeneous_beyond() const;

 private:
  Form form_ = Form::Uniform;
  double lambda0_ = 0.0;
  double u0_ = 0.0;
  double t_ = 0.0;
  double vt_ = 0.0;
  std::shared_ptr<const NetDisplacementDistribution> disp_;
  std::optional<ScalarDistribution> flight_;

  double beta_general(double ux) const;
  double beta_sl(double ux) const;
  double beta_rs(double ux) const;
};

InterfererDensity uim_density(double lambda0, double u0_t);
InterfererDensity udm_density_general(double lambda0, double u0, double t,
                                      std::shared_ptr<const NetDisplacementDistribution> disp);
InterfererDensity sl_density(double lambda0, double u0, double v, double t);
InterfererDensity rs_density(double lambda0, double u0, double v, double t, const ScalarDistribution& flight);

// Expected number of interferers in b(o', radius).
double intensity_measure(const InterfererDensity& density, double radius);

// Bin-averaged lambda / lambda0 over annuli [edges[i], edges[i+1]).
std::vector<double> binned_ratio(const InterfererDensity& density, const std::vector<double>& edges);

struct RadialHistogram {
  std::vector<double> edges;
  std::vector<double> ratio;      // estimated lambda / lambda0 per annulus
  std::vector<double> std_error;  // per annulus
  long realizations = 0;
};

enum class OracleConstruction {
  Complement,  // displace points of b(o', u0) and subtract their density from lambda0
  Direct       // displace points outside b(o', u0) sampled on a padded window
};

struct OracleOptions {
  long realizations = 20000;
  int bins = 50;
  OracleConstruction construction = OracleConstruction::Complement;
  bool parallel = true;
};

// Monte Carlo estimate of lambda(t; ux, u0) / lambda0 on [0, u0 + vt].
RadialHistogram empirical_density_oracle(const MobilityModelSpec& model, double lambda0, double u0, double t,
                                         const OracleOptions& opts, const Rng& rng);

}  // namespace dronenet
