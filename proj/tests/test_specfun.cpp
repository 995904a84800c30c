#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "hypcensus/errors.hpp"
#include "hypcensus/specfun.hpp"
#include "testutil.hpp"

using namespace hypcensus;
using testutil::kPi;

namespace {

// Fourier series Lambda(theta) = 1/2 sum_{k>=1} sin(2 k theta) / k^2,
// truncated; tail bounded by 1/(2K).
double lobachevsky_series(double theta, int terms) {
  double sum = 0;
  for (int k = terms; k >= 1; --k)
    sum += std::sin(2.0 * k * theta) / (static_cast<double>(k) * k);
  return 0.5 * sum;
}

}  // namespace

TEST_CASE("lobachevsky matches its Fourier series") {
  const int terms = 4000000;  // tail < 1.3e-7
  for (double theta : {0.1, 0.3, kPi / 6, kPi / 4, kPi / 3, 1.2, 1.5, 2.9}) {
    CHECK(lobachevsky(theta) ==
          doctest::Approx(lobachevsky_series(theta, terms)).epsilon(1e-6));
  }
}

TEST_CASE("lobachevsky oddness, periodicity, zeros") {
  CHECK(lobachevsky(0.0) == 0.0);
  CHECK(std::abs(lobachevsky(kPi)) < 1e-12);
  CHECK(std::abs(lobachevsky(kPi / 2)) < 1e-12);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double x = dist(rng);
    CHECK(lobachevsky(-x) == doctest::Approx(-lobachevsky(x)).epsilon(1e-12));
    CHECK(lobachevsky(x + kPi) == doctest::Approx(lobachevsky(x)).epsilon(1e-12));
  }
}

TEST_CASE("lobachevsky duplication identity") {
  // Lambda(2x) = 2 Lambda(x) + 2 Lambda(x + pi/2)
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.01, 3.1);
  for (int i = 0; i < 200; ++i) {
    const double x = dist(rng);
    CHECK(lobachevsky(2 * x) ==
          doctest::Approx(2 * lobachevsky(x) + 2 * lobachevsky(x + kPi / 2))
              .epsilon(1e-11));
  }
}

TEST_CASE("regular ideal octahedron volume") {
  CHECK(8.0 * lobachevsky(kPi / 4) == doctest::Approx(3.66386).epsilon(1e-5));
}

TEST_CASE("dilog on the unit circle") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(0.05, 2 * kPi - 0.05);
  for (int i = 0; i < 100; ++i) {
    const double z = dist(rng);
    const std::complex<double> li = dilog_unit_circle(z);
    CHECK(li.real() ==
          doctest::Approx(kPi * kPi / 6 - z * (2 * kPi - z) / 4).epsilon(1e-12));
    CHECK(li.imag() == doctest::Approx(2 * lobachevsky(z / 2)).epsilon(1e-12));
  }
}

TEST_CASE("adaptive integration") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(integrate([](double x) { return x * x; }, -1.0, 2.0) ==
        doctest::Approx(3.0).epsilon(1e-10));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
  CHECK_THROWS_AS(
      integrate([](double x) { return std::sin(1.0 / x) / x; }, 1e-12, 1.0,
                1e-14, 100),
      NonConvergence);
}
