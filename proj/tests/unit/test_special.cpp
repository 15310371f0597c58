#include <cmath>
#include <numbers>

#include "doctest.h"
#include "epiq/common/error.hpp"
#include "epiq/gfun/special.hpp"
#include "oracles/series.hpp"

using namespace epiq;
using namespace epiq::gfun;

TEST_CASE("zeta closed forms") {
  const double pi = std::numbers::pi;
  CHECK(zeta(2.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-13));
  CHECK(zeta(4.0) == doctest::Approx(std::pow(pi, 4) / 90.0).epsilon(1e-13));
  CHECK(zeta(3.0) == doctest::Approx(1.2020569031595942).epsilon(1e-13));
}

TEST_CASE("zeta against brute-force partial sums") {
  for (double s : {1.1, 1.5, 2.0, 2.5, 3.0, 3.7, 6.0, 12.0}) {
    CAPTURE(s);
    CHECK(std::abs(zeta(s) - oracle::zeta_bruteforce(s)) < 1e-10);
  }
}

TEST_CASE("zeta rejects s <= 1") {
  CHECK_THROWS_AS(zeta(1.0), DomainError);
  CHECK_THROWS_AS(zeta(0.5), DomainError);
}

TEST_CASE("zeta_any continuation spot values") {
  CHECK(detail::zeta_any(0.0) == doctest::Approx(-0.5));
  CHECK(detail::zeta_any(-1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-12));
  CHECK(detail::zeta_any(-2.0) == 0.0);
  CHECK(detail::zeta_any(0.5) == doctest::Approx(-1.4603545088095868).epsilon(1e-11));
}

TEST_CASE("polylog boundary identities") {
  CHECK(polylog(1.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(polylog(2.0, 1.0) == doctest::Approx(zeta(2.0)).epsilon(1e-14));
  CHECK(polylog(3.0, 0.0) == 0.0);
  CHECK_THROWS_AS(polylog(1.0, 1.0), DivergenceError);
  CHECK_THROWS_AS(polylog(0.5, 0.5), DomainError);
  CHECK_THROWS_AS(polylog(2.0, 1.5), DomainError);
}

TEST_CASE("polylog against direct series") {
  for (double s : {1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
    for (double z : {0.1, 0.4, 0.5, 0.6, 0.8, 0.9, 0.95, 0.99, 0.999}) {
      CAPTURE(s);
      CAPTURE(z);
      CHECK(std::abs(polylog(s, z) - oracle::polylog_bruteforce(s, z)) < 1e-10);
    }
  }
}

TEST_CASE("polylog continuity across the series switch") {
  for (double s : {1.0, 2.0, 3.0, 2.5}) {
    const double below = polylog(s, 0.5 - 1e-12);
    const double above = polylog(s, 0.5 + 1e-12);
    CHECK(std::abs(below - above) < 1e-10);
  }
}

TEST_CASE("polylog of lower order via unchecked entry") {
  // Li_0(z) = z/(1-z), Li_-1(z) = z/(1-z)^2
  for (double z : {0.2, 0.7, 0.95}) {
    CHECK(detail::polylog_unchecked(0.0, z) == doctest::Approx(z / (1 - z)).epsilon(1e-11));
    CHECK(detail::polylog_unchecked(-1.0, z) == doctest::Approx(z / ((1 - z) * (1 - z))).epsilon(1e-10));
  }
}
