#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "skfb/bounds.hpp"
#include "skfb/leakage.hpp"
#include "skfb/numerics.hpp"

using namespace skfb;
using namespace skfb::bounds;

namespace {

const ChannelParams kDesk{1.0, 30.0, 30.0, 40.0, 1.0};
const TargetSpec kDeskTargets{0.5, 1e-5, 0.01};

// Unit-SNR parameters where the converse already bites at N' = 2.
const ChannelParams kUnitSnr{1.0, 1.0, 1.0, 1.0, 1.0};

ChannelParams random_params(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> log_var(std::log(0.1), std::log(100.0));
  std::uniform_real_distribution<double> log_p(std::log(0.1), std::log(10.0));
  return {std::exp(log_var(gen)), std::exp(log_var(gen)),
          std::exp(log_var(gen)), std::exp(log_var(gen)),
          std::exp(log_p(gen))};
}

TargetSpec random_targets(std::mt19937_64& gen, const ChannelParams& params) {
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  std::uniform_real_distribution<double> log_eps(std::log(1e-8), std::log(0.2));
  std::uniform_real_distribution<double> log_delta(std::log(1e-4), std::log(1.0));
  return {frac(gen) * params.sigma_s2, std::exp(log_eps(gen)),
          std::exp(log_delta(gen))};
}

}  // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("classic lower-bound ceiling formula") {
  // ln Q^{-1}(eps/2) vanishes at eps = 2Q(1).
  const double eps = 2.0 * numerics::q_function(1.0);
  const TargetSpec targets{0.5, eps, 0.01};
  const auto res = classic_lower(kDesk, targets);
  const double expected =
      (numerics::rate_distortion(0.5, 1.0) +
       0.5 * std::log1p(kDesk.sigma_eta2 / kDesk.power)) /
      numerics::gaussian_capacity(kDesk.power, kDesk.sigma_eta2);
  CHECK(res.ntilde1 == static_cast<std::int64_t>(std::ceil(expected)));

  // Golden values at the desk parameters (d = 0.5, eps = 1e-5, delta = 0.01).
  const auto desk = classic_lower(kDesk, kDeskTargets);
  CHECK(desk.ntilde1 == 217);
  CHECK(desk.ntilde2 == 3);
}

TEST_CASE("modified lower-bound ceiling formula and clamping") {
  const auto desk = modified_lower(kDesk, kDeskTargets);
  CHECK(desk.n2 == 112);
  CHECK(desk.n3 == 85);

  // Zero numerator: R(d) + ln Qinv(eps/2) = 0 at d = sigma_s2 Qinv(eps/2)^2,
  // which is a valid distortion whenever eps > 2Q(1) so that Qinv < 1.
  const double eps = 0.5;
  const double qi = numerics::q_inverse(eps / 2.0);
  REQUIRE(qi < 1.0);
  const TargetSpec boundary{kDesk.sigma_s2 * qi * qi, eps, 0.01};
  CHECK(modified_lower(kDesk, boundary).n2 == 1);
}

TEST_CASE("ntilde1 dominates n2 on random targets") {
  std::mt19937_64 gen(41);
  for (int rep = 0; rep < 1000; ++rep) {
    const ChannelParams params = random_params(gen);
    const TargetSpec targets = random_targets(gen, params);
    const auto classic = classic_lower(params, targets);
    const auto modified = modified_lower(params, targets);
    CHECK(modified.n2 <= classic.ntilde1);
  }
}

TEST_CASE("b_star explicit moment bounds") {
  const double p_prime = kDesk.power / (1.0 - kDeskTargets.epsilon);
  const double got = b_star(p_prime, kDesk.sigma_eta2);
  CHECK(got == doctest::Approx(3714.0557312853974).epsilon(1e-12));
  CHECK(std::isfinite(got));
  CHECK(got > 0.0);

  // V(P') < V_d always, so the denominator is V(P')^{3/2}.
  const double v = numerics::dispersion(p_prime, kDesk.sigma_eta2);
  const double a = p_prime / (2.0 * (p_prime + kDesk.sigma_eta2));
  const double b = std::sqrt(p_prime * kDesk.sigma_eta2) /
                   (p_prime + kDesk.sigma_eta2);
  const double rho1 = 224.0 * a * a * a +
                      16.0 * b * b * b * std::sqrt(2.0 / std::numbers::pi);
  CHECK(got == doctest::Approx(6.0 * std::max(3.5, rho1) / std::pow(v, 1.5))
                   .epsilon(1e-13));

  // Domain floor.
  CHECK_THROWS_AS(b_star(1e-10, kDesk.sigma_eta2), std::domain_error);
}

TEST_CASE("converse context pins gamma and zeta per candidate blocklength") {
  const auto ctx = make_converse_context(kDesk, kDeskTargets, 100);
  CHECK(ctx.n_prime == 100);
  CHECK(ctx.gamma == doctest::Approx(0.5 * std::log(100.0)).epsilon(1e-15));
  CHECK(ctx.p_prime ==
        doctest::Approx(kDesk.power / (1.0 - kDeskTargets.epsilon))
            .epsilon(1e-15));
  CHECK(ctx.zeta ==
        doctest::Approx(std::sqrt(99.0) *
                        (2.0 / 10.0 + ctx.b_star / std::sqrt(101.0)))
            .epsilon(1e-14));
  CHECK(ctx.epsilon_prime ==
        doctest::Approx(1.0 - ctx.zeta / std::sqrt(99.0)).epsilon(1e-12));

  // The B* terms cancel inside the Q^{-1} argument: it equals 1 - 1/sqrt(N').
  const double q_arg = ctx.epsilon_prime + std::exp(-ctx.gamma) +
                       ctx.b_star / std::sqrt(101.0);
  CHECK(q_arg == doctest::Approx(1.0 - 0.1).epsilon(1e-9));

  CHECK_THROWS_AS(make_converse_context(kDesk, kDeskTargets, 1),
                  std::domain_error);
}

TEST_CASE("converse_feasible: vacuous tail bound is feasible") {
  ConverseContext ctx = make_converse_context(kDesk, kDeskTargets, 10);
  ctx.epsilon_prime = 2.0;  // drives the Q^{-1} argument past one
  CHECK(converse_feasible(ctx, kDesk, kDeskTargets));
}

TEST_CASE("converse becomes feasible and stays feasible") {
  const std::int64_t n1 =
      converse_upper(kDesk, kDeskTargets, UpperBoundMode::kExact);
  CHECK(n1 == 3);  // desk parameters, d = 0.5
  for (std::int64_t n = 2; n < n1; ++n) {
    CHECK_FALSE(converse_feasible(make_converse_context(kDesk, kDeskTargets, n),
                                  kDesk, kDeskTargets));
  }
  for (std::int64_t n = n1; n < n1 + 50; ++n) {
    CHECK(converse_feasible(make_converse_context(kDesk, kDeskTargets, n),
                            kDesk, kDeskTargets));
  }
}

TEST_CASE("converse exact-mode golden transitions across the d grid") {
  // Frozen from the first verified build (high-precision recomputation).
  const std::int64_t expected[] = {9, 6, 5, 5, 4, 4, 4, 4, 3, 3,
                                   3, 3, 3, 3, 3, 3, 3, 3, 3};
  for (int i = 0; i < 19; ++i) {
    const TargetSpec targets{0.05 * (i + 1), 1e-5, 0.01};
    CHECK(converse_upper(kDesk, targets, UpperBoundMode::kExact) ==
          expected[i]);
  }
}

TEST_CASE("converse upper bound boundary and monotonicity") {
  // d -> sigma_s2: R -> 0 and the smallest admissible blocklength wins at
  // unit SNR in both modes.
  const TargetSpec loose{0.999999, 1e-3, 0.01};
  CHECK(converse_upper(kUnitSnr, loose, UpperBoundMode::kExact) == 2);
  CHECK(converse_upper(kUnitSnr, loose, UpperBoundMode::kAsymptoticF1) == 2);

  // Larger d (smaller R) never increases n1.
  for (const auto mode :
       {UpperBoundMode::kExact, UpperBoundMode::kAsymptoticF1}) {
    std::int64_t prev = converse_upper(kDesk, {0.05, 1e-5, 0.01}, mode);
    for (double d = 0.10; d < 1.0; d += 0.05) {
      const std::int64_t cur = converse_upper(kDesk, {d, 1e-5, 0.01}, mode);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("converse scan overflow raises instead of truncating") {
  CHECK_THROWS_AS(
      converse_upper(kDesk, kDeskTargets, UpperBoundMode::kExact, 2),
      ScanOverflowError);
}

TEST_CASE("f1 evaluation, domain and monotonicity") {
  CHECK_THROWS_AS(f1(1.5, kDesk, 1e-5), std::domain_error);
  CHECK(f1(100.0, kDesk, 1e-5) ==
        doctest::Approx(5.752718775724761).epsilon(1e-13));

  // F1 exceeds every rate-distortion value on the grid eventually.
  CHECK(f1(1e8, kDesk, 1e-5) >
        numerics::rate_distortion(1e-3 * kDesk.sigma_s2, kDesk.sigma_s2));

  for (const double o_coeff : {0.0, 1.0}) {
    double prev = f1(2.0, kDesk, 1e-5, o_coeff);
    for (double x = 3.0; x <= 10000.0; x *= 1.37) {
      const double cur = f1(x, kDesk, 1e-5, o_coeff);
      CHECK(cur > prev);
      prev = cur;
    }
    // Dense integer check near the origin where the crossing happens.
    prev = f1(2.0, kDesk, 1e-5, o_coeff);
    for (double x = 3.0; x <= 200.0; x += 1.0) {
      const double cur = f1(x, kDesk, 1e-5, o_coeff);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("bracket assembles the report with binding constraints") {
  const auto report = bracket(kDesk, kDeskTargets);
  CHECK(report.ntilde1 == 217);
  CHECK(report.ntilde2 == 3);
  CHECK(report.n2 == 112);
  CHECK(report.n3 == 85);
  CHECK(report.n1 == 3);
  CHECK(report.rate_lower_classic == doctest::Approx(1.0 / 217.0));
  CHECK(report.rate_lower_modified == doctest::Approx(1.0 / 112.0));
  CHECK(report.rate_upper == doctest::Approx(0.5));
  CHECK(report.binding_classic == Binding::kDistortion);
  CHECK(report.binding_modified == Binding::kDistortion);

  // delta -> huge: secrecy never binds, the modified rate is 1/n2.
  const auto loose = bracket(kDesk, {0.5, 1e-5, 100.0});
  CHECK(loose.n3 == 1);
  CHECK(loose.rate_lower_modified == doctest::Approx(1.0 / 112.0));
  CHECK(loose.binding_modified == Binding::kDistortion);

  // d -> 0: distortion binds for both schemes.
  const auto tight = bracket(kDesk, {1e-4, 1e-5, 0.01});
  CHECK(tight.binding_classic == Binding::kDistortion);
  CHECK(tight.binding_modified == Binding::kDistortion);

  // Tiny delta with loose distortion: secrecy binds.
  const auto secrecy = bracket(kDesk, {0.9, 0.05, 1e-4});
  CHECK(secrecy.n3 > secrecy.n2);
  CHECK(secrecy.binding_modified == Binding::kSecrecy);
}

TEST_CASE("rate ordering across the desk d grid") {
  for (double d = 0.05; d < 1.0; d += 0.05) {
    const auto report = bracket(kDesk, {d, 1e-5, 0.01});
    CHECK(report.rate_lower_modified >= report.rate_lower_classic);
    CHECK(report.rate_upper >= report.rate_lower_modified);
    CHECK(report.rate_upper <= 1.0);
    CHECK(report.rate_upper > 0.0);
    CHECK(report.n1 >= 2);
    CHECK(report.ntilde1 >= 1);
    CHECK(report.ntilde2 >= 1);
    CHECK(report.n2 >= 1);
    CHECK(report.n3 >= 1);
  }
}

TEST_SUITE_END();
