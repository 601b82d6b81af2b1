// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dronenet {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule of order n on [-1, 1]; n in {2, 4, 6, 8, 12, 16, 20, 24, 32, 48, 64}.
const QuadratureRule& gauss_legendre(int n);

// Fixed-order Gauss-Legendre on [a, b].
template <class F>
double integrate_gl(const F& f, double a, double b, int n) {
  const QuadratureRule& r = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
  return acc * half;
}

// Fixed-order rule on [a, b] with nodes graded towards both ends (x = a + (b-a) q^p / (q^p + (1-q)^p)).
template <class F>
double integrate_graded(const F& f, double a, double b, int n, int p = 3) {
  if (!(b > a)) return 0.0;
  const QuadratureRule& r = gauss_legendre(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double q = 0.5 * (r.nodes[i] + 1.0);
    const double qp = std::pow(q, p);
    const double rp = std::pow(1.0 - q, p);
    const double den = qp + rp;
    const double w = qp / den;
    const double dw = p * (std::pow(q, p - 1) * rp + qp * std::pow(1.0 - q, p - 1)) / (den * den);
    acc += r.weights[i] * f(a + (b - a) * w) * dw;
  }
  return acc * 0.5 * (b - a);
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod (31 points) on [a, b]; b may be +infinity.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double tol = 1e-10,
                                    unsigned max_depth = 15) {
  QuadratureResult r;
  if (a == b) return r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol,
                                                                           &r.error);
  return r;
}

}  // namespace dronenet
