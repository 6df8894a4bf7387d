#pragma once

#include <cstdint>
#include <vector>

#include "skfb/types.hpp"

namespace skfb::schemes {

// Per-step state of an SK-type scheme. `error == estimate - source` holds
// bit-for-bit: the error is always recomputed from the estimate.
struct SchemeState {
  std::int64_t step;  // time index i >= 1
  double estimate;    // receiver estimate of the source at this step
  double error;       // estimate - source
  double alpha;       // Var(error) for the current step
  double source;      // realized source value held by the transmitter
};

struct MonteCarloReport {
  std::uint64_t trials;
  std::uint64_t hits;
  Probability estimate;
  double ci_halfwidth;  // 3-sigma binomial half-width
  std::uint64_t seed;
};

struct StepPower {
  double mean_sq;  // sample mean of X_i^2
  double std_error;  // standard error of that mean
};

// Channel input at time 1, X_1 = sqrt(P / sigma_s2) * s (both variants).
double first_input(const ChannelParams& params, double s);

// Channel input the transmitter sends from a step-i state, i.e. the input
// of step i+1: X = sqrt(P / alpha_i) * error_i.
double next_input(const SchemeState& state, const ChannelParams& params);

// First-step encode/decode. Classic zero-forces (alpha_1 =
// sigma_eta2*sigma_s2/P); Modified estimates by MMSE (alpha_1 =
// sigma_eta2*sigma_s2/(P+sigma_eta2)).
SchemeState initialize(SchemeVariant variant, const ChannelParams& params,
                       double s, double eta1);

// One iteration shared by both variants: X_i = sqrt(P/alpha_{i-1}) e_{i-1},
// Y_i = X_i + eta_i, beta_i = sqrt(P alpha_{i-1})/(P+sigma_eta2),
// estimate_i = estimate_{i-1} - beta_i Y_i,
// alpha_i = alpha_{i-1} sigma_eta2/(P+sigma_eta2).
SchemeState step(const SchemeState& state, const ChannelParams& params,
                 double eta_i);

// Closed-form alpha_n: Classic (sigma_eta2 sigma_s2/P) kappa^{n-1};
// Modified sigma_s2 kappa^n, with kappa = sigma_eta2/(P+sigma_eta2).
double alpha_closed_form(SchemeVariant variant, const ChannelParams& params,
                         std::int64_t n);

// 2 Q(sqrt(d / alpha_N)); the two tail events are disjoint, so this is the
// exact excess-distortion probability, not only an upper bound.
Probability exact_excess_probability(SchemeVariant variant,
                                     const ChannelParams& params,
                                     std::int64_t n, double d);

// Simulates `trials` independent runs of the scheme and counts
// (S - Shat_N)^2 >= d. Deterministic given the seed for any thread count.
MonteCarloReport monte_carlo_excess_probability(SchemeVariant variant,
                                                const ChannelParams& params,
                                                std::int64_t n, double d,
                                                std::uint64_t trials,
                                                std::uint64_t seed,
                                                unsigned threads = 0);

// Sample mean of X_i^2 for each step i in [1, n].
std::vector<StepPower> empirical_power(SchemeVariant variant,
                                       const ChannelParams& params,
                                       std::int64_t n, std::uint64_t trials,
                                       std::uint64_t seed,
                                       unsigned threads = 0);

}  // namespace skfb::schemes
