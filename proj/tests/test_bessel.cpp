#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "maxlab/bessel.hpp"

using namespace maxlab;

namespace {
struct Oracle {
  double nu, x, j;
};
// mpmath besselj at 30 dps, rounded to 17 significant digits.
const Oracle kOracle[] = {
    {0, 0.5, 0.93846980724081291},
    {0, 1, 0.76519768655796655},
    {0, 5, -0.17759677131433830},
    {0, 12, 0.047689310796833537},
    {0, 13, 0.20692610237706781},
    {0, 20, 0.16702466434058315},
    {0, 50, 0.055812327669251815},
    {0, 200, -0.015437439930565092},
    {0, 1000, 0.024786686152420175},
    {0.5, 1, 0.67139670714180309},
    {0.5, 10, -0.13726373575505048},
    {0.5, 30, -0.14392965337039989},
    {1, 1, 0.44005058574493352},
    {1, 5, -0.32757913759146522},
    {1, 12.5, -0.16548380461475972},
    {1, 40, 0.12603831803758500},
    {1.5, 2, 0.49129377868716235},
    {1.5, 25, -0.15901789538603658},
    {2, 7, -0.30141722008594012},
    {2.5, 14, -0.21425563673110613},
    {3.5, 17, 0.014610413435308015},
    {5, 3, 0.043028434877047584},
    {5, 20, 0.15116976798239497},
    {10, 4, 0.00019504055466003451},
    {10, 12, 0.30047603527126931},
    {10, 60, 0.097177143328071092},
    {20, 10, 1.1513369247813398e-05},
    {20, 100, 0.062217458498338753},
};
}  // namespace

TEST_CASE("bessel_j oracle table") {
  for (const auto& o : kOracle) {
    double got = bessel_j(o.nu, o.x);
    INFO("nu=" << o.nu << " x=" << o.x);
    CHECK(got == Catch::Approx(o.j).epsilon(1e-12).margin(1e-15));
  }
}

TEST_CASE("bessel_j special values") {
  CHECK(bessel_j(0, 0) == 1.0);
  CHECK(bessel_j(1, 0) == 0.0);
  CHECK(bessel_j(2.5, 0) == 0.0);
  CHECK_THROWS_AS(bessel_j(-1, 1), std::domain_error);
  CHECK_THROWS_AS(bessel_j(1, -1), std::domain_error);
}

TEST_CASE("half-integer closed forms") {
  // J_{1/2}(x) = sqrt(2/(pi x)) sin x, J_{3/2}(x) = sqrt(2/(pi x))(sin x / x - cos x)
  for (double x : {0.1, 0.7, 3.0, 9.0, 15.0, 40.0, 123.0}) {
    double c = std::sqrt(2.0 / (M_PI * x));
    CHECK(bessel_j(0.5, x) == Catch::Approx(c * std::sin(x)).epsilon(1e-12).margin(1e-16));
    CHECK(bessel_j(1.5, x) ==
          Catch::Approx(c * (std::sin(x) / x - std::cos(x))).epsilon(1e-11).margin(1e-15));
  }
}

TEST_CASE("three-term recurrence consistency") {
  // J_{nu-1}(x) + J_{nu+1}(x) = (2 nu / x) J_nu(x)
  for (double nu : {1.0, 2.5, 6.0, 14.0})
    for (double x : {0.5, 4.0, 11.0, 13.0, 27.0, 80.0}) {
      double lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x);
      double rhs = 2.0 * nu / x * bessel_j(nu, x);
      double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-10});
      CHECK(std::abs(lhs - rhs) / scale < 1e-10);
    }
}

TEST_CASE("derivative identity") {
  // check against central differences
  for (double nu : {0.0, 1.0, 2.5})
    for (double x : {1.0, 6.0, 20.0}) {
      double h = 1e-6;
      double fd = (bessel_j(nu, x + h) - bessel_j(nu, x - h)) / (2 * h);
      CHECK(bessel_j_prime(nu, x) == Catch::Approx(fd).epsilon(1e-6).margin(1e-9));
    }
}
