#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "skfb/types.hpp"

namespace skfb::verify {

// One standard normal draw G and N' draws K_1..K_{N'}.
struct AuxiliaryGaussians {
  double g;
  std::vector<double> k;
};

struct MgfCheck {
  double t;
  double closed_form;
  double mc_estimate;
  double mc_halfwidth;  // standard error of the Monte Carlo mean
  std::uint64_t trials;
  bool pass;  // |closed_form - mc_estimate| <= max(3 hw, 0.01 closed_form)
};

struct MomentCheck {
  double mc_mean;
  double mc_variance;
  double expected_variance;  // V_d + N' V(P')
  double mean_se;
  double variance_se;
  double rho0_mc;     // MC estimate of E|T*_0|^3
  double rho1_mc;     // MC estimate of E|T*_1|^3
  double rho0_bound;  // 3.5
  double rho1_bound;  // 224|A|^3 + 16|B|^3 sqrt(2/pi)
  std::uint64_t trials;
  bool pass;
};

struct TailGapCheck {
  double empirical_tail;
  double normal_tail;
  double bound;     // B*/sqrt(N'+1)
  double mc_sigma;  // binomial standard error of the empirical tail
  std::uint64_t trials;
  bool pass;  // |empirical - normal| <= bound + 3 mc_sigma
};

// j_S(s, d) = R(d) - 1/2 + s^2/(2 sigma_s2).
Nats d_tilted_information(double s, double d, double sigma_s2);

// iota(x; y) against the capacity-achieving output N(0, P'+sigma_eta2):
// C(P') + (-(P'/sigma_eta2)(y-x)^2 + x^2 + 2x(y-x)) / (2(P'+sigma_eta2)).
Nats information_density(double x, double y, double p_prime,
                         double sigma_eta2);

// Psi(x, y) = (-(P'/sigma_eta2)(y-x)^2 + 2x(y-x)) / (2(P'+sigma_eta2));
// iota(x;y) = C(P') + x^2/(2(P'+sigma_eta2)) + Psi(x,y) identically.
double psi(double x, double y, double p_prime, double sigma_eta2);

// T = G^2/2 + sum_i (P'/(2(P'+sigma_eta2)) K_i^2
//                    - sqrt(P' sigma_eta2)/(P'+sigma_eta2) K_i).
double sample_T(const AuxiliaryGaussians& aux, double p_prime,
                double sigma_eta2);

// E[e^{tT}] = ((P'+s)/(P'+s-P't))^{N'/2}
//             exp(s t^2 N' P' / (2(P'+s)(P'+s-P't))) (1-t)^{-1/2},
// with s = sigma_eta2; requires t < 1 and P'+s-P't > 0.
double mgf_closed_form(double t, std::int64_t n_prime, double p_prime,
                       double sigma_eta2);

struct MomentSums {
  double mean;       // 0 exactly
  double variance;   // V_d + N' V(P')
  double rho_bound;  // 3.5 + N' (224|A|^3 + 16|B|^3 sqrt(2/pi))
};
MomentSums moment_sums(std::int64_t n_prime, double p_prime,
                       double sigma_eta2);

// Monte Carlo estimate of E[e^{tT}] against the closed form. The grid
// variant samples T once per trial and serves every t from the same draws.
MgfCheck mgf_check(double t, std::int64_t n_prime, double p_prime,
                   double sigma_eta2, std::uint64_t trials, std::uint64_t seed,
                   unsigned threads = 0);
std::vector<MgfCheck> mgf_check_grid(std::span<const double> ts,
                                     std::int64_t n_prime, double p_prime,
                                     double sigma_eta2, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads = 0);

// MC mean/variance of sum_i T*_i against (0, V_d + N' V(P')) at five
// standard errors, plus third-absolute-moment bounds.
MomentCheck moment_check(std::int64_t n_prime, double p_prime,
                         double sigma_eta2, std::uint64_t trials,
                         std::uint64_t seed, unsigned threads = 0);

// Empirical tail P[sum T*_i >= threshold] vs the Gaussian tail, contained
// within B*/sqrt(N'+1) + 3 MC sigma. The grid variant counts every
// threshold from one shared set of draws.
TailGapCheck berry_esseen_gap(std::int64_t n_prime, double p_prime,
                              double sigma_eta2, double threshold,
                              std::uint64_t trials, std::uint64_t seed,
                              unsigned threads = 0);
std::vector<TailGapCheck> berry_esseen_gap_grid(
    std::int64_t n_prime, double p_prime, double sigma_eta2,
    std::span<const double> thresholds, std::uint64_t trials,
    std::uint64_t seed, unsigned threads = 0);

}  // namespace skfb::verify
