#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "splitedge/rng.hpp"

using namespace splitedge;

TEST_CASE("xoshiro256** reproduces the published reference sequence") {
  // Seeded through splitmix64(0) per the authors' recommended setup; the
  // outputs below come from an independent implementation of the published
  // algorithm.
  Xoshiro256StarStar rng(0);
  const std::uint64_t expected[] = {11091344671253066420ULL, 13793997310169335082ULL,
                                    1900383378846508768ULL, 7684712102626143532ULL};
  for (const auto value : expected) CHECK(rng.next() == value);

  Xoshiro256StarStar rng42(42);
  CHECK(rng42.next() == 1546998764402558742ULL);
  CHECK(rng42.next() == 6990951692964543102ULL);
}

TEST_CASE("same seed gives identical streams") {
  Xoshiro256StarStar a(12345), b(12345);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next() == b.next());
  }
}

TEST_CASE("uniform() stays in [0,1) and looks flat") {
  Xoshiro256StarStar rng(7);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("gaussian() has roughly unit moments") {
  Xoshiro256StarStar rng(11);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.gaussian();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
}
