// SPDX-License-Identifier: Apache-2.0
#include "dronenet/quadrature.hpp"

#include <map>

#include <boost/math/quadrature/gauss.hpp>

#include "dronenet/error.hpp"

namespace dronenet {

namespace {

template <unsigned N>
QuadratureRule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  QuadratureRule r;
  // Boost stores the non-negative half; a zero node appears first for odd N.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.nodes.push_back(0.0);
      r.weights.push_back(w[i]);
    } else {
      r.nodes.push_back(-x[i]);
      r.weights.push_back(w[i]);
      r.nodes.push_back(x[i]);
      r.weights.push_back(w[i]);
    }
  }
  return r;
}

QuadratureRule build(int n) {
  switch (n) {
    case 2: return make_rule<2>();
    case 4: return make_rule<4>();
    case 6: return make_rule<6>();
    case 8: return make_rule<8>();
    case 12: return make_rule<12>();
    case 16: return make_rule<16>();
    case 20: return make_rule<20>();
    case 24: return make_rule<24>();
    case 32: return make_rule<32>();
    case 48: return make_rule<48>();
    case 64: return make_rule<64>();
    default: throw ParameterError("unsupported Gauss-Legendre order " + std::to_string(n));
  }
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static const std::map<int, QuadratureRule> cache = [] {
    std::map<int, QuadratureRule> m;
    for (int k : {2, 4, 6, 8, 12, 16, 20, 24, 32, 48, 64}) m.emplace(k, build(k));
    return m;
  }();
  auto it = cache.find(n);
  if (it == cache.end()) throw ParameterError("unsupported Gauss-Legendre order " + std::to_string(n));
  return it->second;
}

}  // namespace dronenet
