#include <doctest.h>

#include <cmath>
#include <random>

#include "skfb/numerics.hpp"
#include "skfb/rng.hpp"
#include "skfb/verify.hpp"

using namespace skfb;
using namespace skfb::verify;

namespace {

// Effective power of the converse context at the desk parameters.
const double kPPrime = 1.0 / (1.0 - 1e-5);
const double kSigmaEta2 = 30.0;

}  // namespace

TEST_SUITE_BEGIN("verify");

TEST_CASE("d_tilted_information closed form") {
  const double d = 0.3, sigma_s2 = 1.7;
  const double r = numerics::rate_distortion(d, sigma_s2);
  CHECK(d_tilted_information(0.0, d, sigma_s2) ==
        doctest::Approx(r - 0.5).epsilon(1e-15));
  CHECK(d_tilted_information(std::sqrt(sigma_s2), d, sigma_s2) ==
        doctest::Approx(r).epsilon(1e-14));
  CHECK_THROWS_AS(d_tilted_information(0.0, 2.0, 1.7), std::domain_error);
}

TEST_CASE("mean d-tilted information recovers the rate-distortion value") {
  const double d = 0.4, sigma_s2 = 1.0;
  const double r = numerics::rate_distortion(d, sigma_s2);
  const std::uint64_t trials = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double s = rng::Stream(8, t, 0).normal() * std::sqrt(sigma_s2);
    const double j = d_tilted_information(s, d, sigma_s2);
    sum += j;
    sum2 += j * j;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
  CHECK(std::abs(mean - r) <= 5.0 * se);
}

TEST_CASE("information density closed forms") {
  const double c = numerics::gaussian_capacity(kPPrime, kSigmaEta2);
  CHECK(information_density(0.0, 0.0, kPPrime, kSigmaEta2) ==
        doctest::Approx(c).epsilon(1e-14));
  const double x = 1.3;
  CHECK(information_density(x, x, kPPrime, kSigmaEta2) ==
        doctest::Approx(c + x * x / (2.0 * (kPPrime + kSigmaEta2)))
            .epsilon(1e-14));
}

TEST_CASE("mean information density equals the capacity") {
  const std::uint64_t trials = 1000000;
  const double sigma_eta = std::sqrt(kSigmaEta2);
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    rng::Stream stream(9, t, 0);
    const double x = std::sqrt(kPPrime) * stream.normal();
    const double y = x + sigma_eta * stream.normal();
    const double v = information_density(x, y, kPPrime, kSigmaEta2);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
  CHECK(std::abs(mean - numerics::gaussian_capacity(kPPrime, kSigmaEta2)) <=
        5.0 * se);
}

TEST_CASE("psi: zero at y = x, algebraic identity, conditional mean") {
  CHECK(psi(2.7, 2.7, kPPrime, kSigmaEta2) == 0.0);

  // iota = C + x^2/(2(P'+sigma_eta2)) + Psi pointwise.
  const double c = numerics::gaussian_capacity(kPPrime, kSigmaEta2);
  std::mt19937_64 gen(51);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = normal(gen);
    const double y = normal(gen);
    const double lhs = information_density(x, y, kPPrime, kSigmaEta2);
    const double rhs = c + x * x / (2.0 * (kPPrime + kSigmaEta2)) +
                       psi(x, y, kPPrime, kSigmaEta2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }

  // E_eta[Psi(x, x+eta)] = -P'/(2(P'+sigma_eta2)) for any fixed x.
  const double x_fixed = 0.8;
  const std::uint64_t trials = 2000000;
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double eta = std::sqrt(kSigmaEta2) * rng::Stream(10, t, 0).normal();
    const double v = psi(x_fixed, x_fixed + eta, kPPrime, kSigmaEta2);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
  CHECK(std::abs(mean + kPPrime / (2.0 * (kPPrime + kSigmaEta2))) <= 5.0 * se);
}

TEST_CASE("sample_T pointwise values and mean") {
  AuxiliaryGaussians aux{0.0, {0.0, 0.0, 0.0}};
  CHECK(sample_T(aux, kPPrime, kSigmaEta2) == 0.0);
  aux.g = 1.0;
  CHECK(sample_T(aux, kPPrime, kSigmaEta2) == doctest::Approx(0.5).epsilon(1e-15));

  const std::int64_t n_prime = 7;
  const std::uint64_t trials = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    AuxiliaryGaussians draw;
    draw.g = rng::Stream(11, t, 0).normal();
    draw.k.resize(n_prime);
    for (std::int64_t i = 1; i <= n_prime; ++i) {
      draw.k[static_cast<std::size_t>(i - 1)] =
          rng::Stream(11, t, static_cast<std::uint64_t>(i)).normal();
    }
    const double v = sample_T(draw, kPPrime, kSigmaEta2);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
  const double expected =
      0.5 + n_prime * kPPrime / (2.0 * (kPPrime + kSigmaEta2));
  CHECK(std::abs(mean - expected) <= 5.0 * se);
}

TEST_CASE("mgf closed form: normalization, derivative, poles") {
  CHECK(mgf_closed_form(0.0, 20, kPPrime, kSigmaEta2) == 1.0);

  // Central difference at 0 recovers E[T].
  const double h = 1e-5;
  const double derivative = (mgf_closed_form(h, 20, kPPrime, kSigmaEta2) -
                             mgf_closed_form(-h, 20, kPPrime, kSigmaEta2)) /
                            (2.0 * h);
  const double expected_mean =
      0.5 + 20.0 * kPPrime / (2.0 * (kPPrime + kSigmaEta2));
  CHECK(std::abs(derivative - expected_mean) <= 1e-6);
  CHECK(expected_mean == doctest::Approx(0.8225837669396801).epsilon(1e-14));

  // Frozen spot value.
  CHECK(mgf_closed_form(0.3, 20, kPPrime, kSigmaEta2) ==
        doctest::Approx(1.3552073512989427).epsilon(1e-13));

  CHECK_THROWS_WITH_AS(mgf_closed_form(1.0, 20, kPPrime, kSigmaEta2),
                       doctest::Contains("t < 1"), std::domain_error);
  // The Gaussian-integral pole P' + sigma_eta2 - P' t equals
  // P'(1-t) + sigma_eta2, so t < 1 already keeps it positive; values just
  // under 1 must therefore evaluate even at small noise.
  CHECK(std::isfinite(mgf_closed_form(0.999, 20, 10.0, 0.5)));
}

TEST_CASE("moment_sums identities") {
  const auto sums1 = moment_sums(1, kPPrime, kSigmaEta2);
  CHECK(sums1.mean == 0.0);
  CHECK(sums1.variance ==
        doctest::Approx(0.5 + numerics::dispersion(kPPrime, kSigmaEta2))
            .epsilon(1e-14));

  // 2A^2 + B^2 = V(P') as a polynomial identity.
  std::mt19937_64 gen(52);
  std::uniform_real_distribution<double> log_p(std::log(1e-3), std::log(1e3));
  for (int i = 0; i < 100; ++i) {
    const double p_prime = std::exp(log_p(gen));
    const double denom = p_prime + kSigmaEta2;
    const double a = p_prime / (2.0 * denom);
    const double b = std::sqrt(p_prime * kSigmaEta2) / denom;
    CHECK(2.0 * a * a + b * b ==
          doctest::Approx(numerics::dispersion(p_prime, kSigmaEta2))
              .epsilon(1e-12));
  }
}

TEST_CASE("mgf monte carlo matches the closed form" * doctest::timeout(600)) {
  for (const double t : {-1.0, 0.3}) {
    const auto chk = mgf_check(t, 20, kPPrime, kSigmaEta2, 1000000, 13);
    CHECK(chk.pass);
    CHECK(chk.trials == 1000000);
  }
}

TEST_CASE("mgf grid shares draws deterministically") {
  const double ts[] = {-1.0, 0.3};
  const auto grid = mgf_check_grid(ts, 5, kPPrime, kSigmaEta2, 50000, 17, 1);
  const auto grid4 = mgf_check_grid(ts, 5, kPPrime, kSigmaEta2, 50000, 17, 4);
  REQUIRE(grid.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(grid[i].mc_estimate == grid4[i].mc_estimate);
    CHECK(grid[i].mc_halfwidth == grid4[i].mc_halfwidth);
  }
  // Single-t call reproduces the grid entry.
  const auto single = mgf_check(-1.0, 5, kPPrime, kSigmaEta2, 50000, 17);
  CHECK(single.mc_estimate == grid[0].mc_estimate);
}

TEST_CASE("moment monte carlo matches mean and variance" *
          doctest::timeout(600)) {
  const auto chk = moment_check(50, kPPrime, kSigmaEta2, 1000000, 19);
  CHECK(chk.pass);
  CHECK(std::abs(chk.mc_mean) <= 5.0 * chk.mean_se);
  CHECK(std::abs(chk.mc_variance - chk.expected_variance) <=
        5.0 * chk.variance_se);
  CHECK(chk.rho0_mc <= 3.5);
  CHECK(chk.rho1_mc <= chk.rho1_bound);

  const auto chk1 = moment_check(1, kPPrime, kSigmaEta2, 400000, 20);
  CHECK(chk1.expected_variance ==
        doctest::Approx(0.5 + numerics::dispersion(kPPrime, kSigmaEta2))
            .epsilon(1e-14));
  CHECK(chk1.pass);
}

TEST_CASE("berry-esseen gap containment" * doctest::timeout(600)) {
  // Threshold at zero: the normal tail is exactly one half.
  const auto zero = berry_esseen_gap(50, kPPrime, kSigmaEta2, 0.0, 200000, 23);
  CHECK(zero.normal_tail == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(zero.pass);

  // Far threshold: both tails effectively vanish.
  const auto far =
      berry_esseen_gap(50, kPPrime, kSigmaEta2, 1e6, 100000, 23);
  CHECK(far.empirical_tail == 0.0);
  CHECK(far.normal_tail < 1e-12);
  CHECK(far.pass);

  // The documented spot check.
  const auto spot =
      berry_esseen_gap(50, kPPrime, kSigmaEta2, 1.0, 1000000, 29);
  CHECK(spot.pass);
  CHECK(spot.bound > 0.0);
}

TEST_SUITE_END();
