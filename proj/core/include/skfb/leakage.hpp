#pragma once

#include <cstdint>
#include <vector>

#include "skfb/types.hpp"

namespace skfb::leakage {

// Channel input X_i written as an explicit linear combination of the source
// and the legitimate-channel noises eta_1 .. eta_{i-1}. The per-step power
// identity sigma_s2*s_coeff^2 + sigma_eta2*sum(noise_coeffs^2) == P holds
// for every step.
struct LinearForm {
  double s_coeff;
  std::vector<double> noise_coeffs;

  double variance(const ChannelParams& params) const;
};

struct LeakageProfile {
  std::int64_t n_max;
  std::vector<Nats> exact;  // exact[i] = L_{i+1}, nats per channel use
  std::vector<Nats> f2;     // f2[i] = F2(i+1)
};

struct LeakageResult {
  Nats nats_per_use;
  double condition;  // conditioning of the joint covariance factorization
};

// Linear forms of X_1..X_N obtained by propagating the estimation-error
// recursion through the coefficient representation.
std::vector<LinearForm> input_linear_forms(SchemeVariant variant,
                                           const ChannelParams& params,
                                           std::int64_t n);

// L_N = I(S; Z^N, Ztilde^N) / N computed from the (1+2N)-dimensional joint
// Gaussian covariance; exact up to linear-algebra roundoff.
LeakageResult exact_leakage_detailed(SchemeVariant variant,
                                     const ChannelParams& params,
                                     std::int64_t n);

Nats exact_leakage(SchemeVariant variant, const ChannelParams& params,
                   std::int64_t n);

// F2(N) = (1/2N) ((P+sigma_eta2)(sigma_e2+sigma_e2_tilde)/(sigma_e2
// sigma_e2_tilde)) (1 - kappa^N); strictly positive, strictly decreasing.
Nats f2_bound(const ChannelParams& params, std::int64_t n);

// Smallest N >= 1 with F2(N) <= delta (linear scan; F2 is decreasing).
std::int64_t n3_search(const ChannelParams& params, double delta);

// ceil((1/2 delta) ln((1+P/sigma_e2)(1+P/sigma_e2_tilde))), clamped at 1.
std::int64_t ntilde2_classic(const ChannelParams& params, double delta);

// Convenience sweep for the CLI: exact leakage and F2 for N = 1..n_max.
LeakageProfile leakage_profile(SchemeVariant variant,
                               const ChannelParams& params,
                               std::int64_t n_max);

}  // namespace skfb::leakage
