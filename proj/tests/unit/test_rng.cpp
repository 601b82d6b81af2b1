// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <set>

#include "dronenet/rng.hpp"

using namespace dronenet;

TEST_CASE("philox4x64-10 known-answer vectors") {
  // Random123 reference: zero counter, zero key.
  CHECK(philox4x64({0, 0, 0, 0}, {0, 0}) ==
        Block4{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL, 0x7e68b68aec7ba23bULL});
  // numpy.random.Philox increments before generating, so its counter c maps to block c + 1.
  CHECK(philox4x64({1, 0, 0, 0}, {0, 0}) ==
        Block4{0x2f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL, 0x907d7a052fd5b4dcULL});
  CHECK(philox4x64({2, 0, 0, 0}, {0, 0}) ==
        Block4{0x809bf322883987c3ULL, 0x471128b9e807f7ddULL, 0xf250ba0dbec065b7ULL, 0xfc6ed66767a457bcULL});
  const Key2 key{0x0123456789abcdefULL, 0xfedcba9876543210ULL};
  CHECK(philox4x64({6, 0, 0, 0}, key) ==
        Block4{0xd0bba8f1bcf6f692ULL, 0xe3473c643c54e623ULL, 0xeded168e9338e0d9ULL, 0xc20bc8d6143b0f29ULL});
  CHECK(philox4x64({7, 0, 0, 0}, key) ==
        Block4{0x1d3f9b580a7a91e2ULL, 0x80b9e338b9d2a202ULL, 0x113bc5c237869222ULL, 0x8494d117fc180028ULL});
}

TEST_CASE("generator output follows successive counter blocks") {
  Rng r(0, 0);
  const Block4 b1 = philox4x64({0, 0, 0, 0}, {0, 0});
  const Block4 b2 = philox4x64({1, 0, 0, 0}, {0, 0});
  for (auto x : b1) CHECK(r() == x);
  for (auto x : b2) CHECK(r() == x);
}

TEST_CASE("same seed and stream reproduce the sequence") {
  Rng a(42, 3);
  Rng b(42, 3);
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
  Rng c(42, 4);
  Rng d(42, 3);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += c() == d();
  CHECK(equal == 0);
}

TEST_CASE("split streams are reproducible and distinct") {
  const Rng root(7);
  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng a = root.split(i);
    Rng b = root.split(i);
    const auto x = a();
    REQUIRE(x == b());
    firsts.insert(x);
  }
  CHECK(firsts.size() == 1000);
}

TEST_CASE("uniform and exponential moments") {
  Rng r(11);
  const int n = 1000000;
  double su = 0.0;
  double se = 0.0;
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    su += u;
    se += r.exponential();
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.002));
  CHECK(se / n == doctest::Approx(1.0).epsilon(0.005));
}
