// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "relaybf/rng.hpp"

using relaybf::RandomStream;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Reference vectors from the Random123 test suite.
  auto out = RandomStream::philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);

  out = RandomStream::philox4x32(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(out[0] == 0x408f276du);
  CHECK(out[1] == 0x41c83b0eu);
  CHECK(out[2] == 0xa20bc7c6u);
  CHECK(out[3] == 0x6d5451fdu);

  out = RandomStream::philox4x32(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(out[0] == 0xd16cfe09u);
  CHECK(out[1] == 0x94fdccebu);
  CHECK(out[2] == 0x5001e420u);
  CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  RandomStream c(42, 8);
  RandomStream d(43, 7);
  bool same_ab = true, same_ac = true, same_ad = true;
  for (int i = 0; i < 256; ++i) {
    const auto va = a.next_u32();
    same_ab &= va == b.next_u32();
    same_ac &= va == c.next_u32();
    same_ad &= va == d.next_u32();
  }
  CHECK(same_ab);
  CHECK_FALSE(same_ac);
  CHECK_FALSE(same_ad);
}

TEST_CASE("substream derivation is deterministic and tuple-sensitive") {
  using relaybf::derive_stream;
  CHECK(derive_stream(1, 2, 3) == derive_stream(1, 2, 3));
  CHECK(derive_stream(1, 2, 3) != derive_stream(1, 3, 2));
  CHECK(derive_stream(1, 2, 3) != derive_stream(2, 1, 3));
  CHECK(derive_stream(0, 0, 0) != derive_stream(0, 0, 1));

  auto s1 = relaybf::substream(99, 1, 5, 17);
  auto s2 = relaybf::substream(99, 1, 5, 17);
  for (int i = 0; i < 64; ++i) CHECK(s1.next_u32() == s2.next_u32());
}

TEST_CASE("uniform lies in [0,1) with the right mean") {
  RandomStream rng(2024, 0);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("normal moments") {
  RandomStream rng(7, 0);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
  }
  CHECK(std::abs(s1 / n) < 0.02);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(s3 / n) < 0.05);
}

TEST_CASE("complex normal has unit total variance") {
  RandomStream rng(11, 3);
  const int n = 100000;
  double p = 0.0, re = 0.0, im = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto z = rng.complex_normal();
    p += std::norm(z);
    re += z.real();
    im += z.imag();
  }
  CHECK(p / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(re / n) < 0.01);
  CHECK(std::abs(im / n) < 0.01);
}

TEST_CASE("below produces in-range, roughly uniform draws") {
  RandomStream rng(5, 5);
  std::vector<int> counts(5, 0);
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.below(5);
    REQUIRE(v < 5);
    ++counts[static_cast<int>(v)];
  }
  for (int c : counts) CHECK(c == doctest::Approx(n / 5.0).epsilon(0.05));
}
