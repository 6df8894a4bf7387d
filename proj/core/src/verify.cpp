#include "skfb/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "skfb/bounds.hpp"
#include "skfb/numerics.hpp"
#include "skfb/parallel.hpp"
#include "skfb/rng.hpp"

namespace skfb::verify {
namespace {

void require_channel(double p_prime, double sigma_eta2) {
  if (!(p_prime > 0.0)) {
    throw std::domain_error("p_prime must be > 0");
  }
  if (!(sigma_eta2 > 0.0)) {
    throw std::domain_error("sigma_eta2 must be > 0");
  }
}

struct TCoefficients {
  double a;  // P'/(2(P'+sigma_eta2)), weight of K_i^2
  double b;  // -sqrt(P' sigma_eta2)/(P'+sigma_eta2), weight of K_i
};

TCoefficients t_coefficients(double p_prime, double sigma_eta2) {
  const double denom = p_prime + sigma_eta2;
  return {p_prime / (2.0 * denom), -std::sqrt(p_prime * sigma_eta2) / denom};
}

// sum_i T*_i = T - 1/2 - N' P'/(2(P'+sigma_eta2)) for one trial's draws.
double sample_centered_sum(rng::Stream g_stream, std::uint64_t seed,
                           std::uint64_t trial, std::int64_t n_prime,
                           const TCoefficients& c) {
  const double g = g_stream.normal();
  double w = 0.5 * (g * g - 1.0);
  for (std::int64_t i = 1; i <= n_prime; ++i) {
    const double k =
        rng::Stream(seed, trial, static_cast<std::uint64_t>(i)).normal();
    w += c.a * (k * k - 1.0) + c.b * k;
  }
  return w;
}

}  // namespace

Nats d_tilted_information(double s, double d, double sigma_s2) {
  const double r = numerics::rate_distortion(d, sigma_s2);
  return r - 0.5 + s * s / (2.0 * sigma_s2);
}

Nats information_density(double x, double y, double p_prime,
                         double sigma_eta2) {
  require_channel(p_prime, sigma_eta2);
  const double c = numerics::gaussian_capacity(p_prime, sigma_eta2);
  const double w = y - x;
  return c + (-(p_prime / sigma_eta2) * w * w + x * x + 2.0 * x * w) /
                 (2.0 * (p_prime + sigma_eta2));
}

double psi(double x, double y, double p_prime, double sigma_eta2) {
  require_channel(p_prime, sigma_eta2);
  const double w = y - x;
  return (-(p_prime / sigma_eta2) * w * w + 2.0 * x * w) /
         (2.0 * (p_prime + sigma_eta2));
}

double sample_T(const AuxiliaryGaussians& aux, double p_prime,
                double sigma_eta2) {
  require_channel(p_prime, sigma_eta2);
  if (aux.k.empty()) {
    throw std::domain_error("sample_T: need at least one K draw");
  }
  const TCoefficients c = t_coefficients(p_prime, sigma_eta2);
  double t = 0.5 * aux.g * aux.g;
  for (const double k : aux.k) {
    t += c.a * k * k + c.b * k;
  }
  return t;
}

double mgf_closed_form(double t, std::int64_t n_prime, double p_prime,
                       double sigma_eta2) {
  require_channel(p_prime, sigma_eta2);
  if (n_prime < 1) {
    throw std::domain_error("mgf_closed_form: n_prime must be >= 1");
  }
  if (!(t < 1.0)) {
    throw std::domain_error("mgf_closed_form: pole violated, need t < 1");
  }
  const double denom = p_prime + sigma_eta2 - p_prime * t;
  if (!(denom > 0.0)) {
    throw std::domain_error(
        "mgf_closed_form: pole violated, need P' + sigma_eta2 - P' t > 0");
  }
  const double total = p_prime + sigma_eta2;
  const auto np = static_cast<double>(n_prime);
  return std::pow(total / denom, 0.5 * np) *
         std::exp(sigma_eta2 * t * t * np * p_prime / (2.0 * total * denom)) /
         std::sqrt(1.0 - t);
}

MomentSums moment_sums(std::int64_t n_prime, double p_prime,
                       double sigma_eta2) {
  require_channel(p_prime, sigma_eta2);
  if (n_prime < 1) {
    throw std::domain_error("moment_sums: n_prime must be >= 1");
  }
  const TCoefficients c = t_coefficients(p_prime, sigma_eta2);
  const auto np = static_cast<double>(n_prime);
  MomentSums sums{};
  sums.mean = 0.0;
  sums.variance = numerics::kSourceDispersion +
                  np * numerics::dispersion(p_prime, sigma_eta2);
  const double abs_b = std::abs(c.b);
  sums.rho_bound =
      3.5 + np * (224.0 * c.a * c.a * c.a +
                  16.0 * abs_b * abs_b * abs_b *
                      std::sqrt(2.0 / std::numbers::pi));
  return sums;
}

std::vector<MgfCheck> mgf_check_grid(std::span<const double> ts,
                                     std::int64_t n_prime, double p_prime,
                                     double sigma_eta2, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads) {
  require_channel(p_prime, sigma_eta2);
  if (n_prime < 1 || trials == 0 || ts.empty()) {
    throw std::domain_error("mgf_check_grid: bad arguments");
  }
  const TCoefficients c = t_coefficients(p_prime, sigma_eta2);
  const std::size_t nt = ts.size();

  // acc layout: [sum e^{tT}, sum e^{2tT}] per t value.
  const auto sums = parallel::reduce_blocks(
      trials, threads, 2 * nt,
      [&](std::uint64_t begin, std::uint64_t end, double* acc) {
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          const double g = rng::Stream(seed, trial, 0).normal();
          double t_value = 0.5 * g * g;
          for (std::int64_t i = 1; i <= n_prime; ++i) {
            const double k =
                rng::Stream(seed, trial, static_cast<std::uint64_t>(i))
                    .normal();
            t_value += c.a * k * k + c.b * k;
          }
          for (std::size_t j = 0; j < nt; ++j) {
            const double v = std::exp(ts[j] * t_value);
            acc[2 * j] += v;
            acc[2 * j + 1] += v * v;
          }
        }
      });

  std::vector<MgfCheck> checks(nt);
  const double inv_trials = 1.0 / static_cast<double>(trials);
  for (std::size_t j = 0; j < nt; ++j) {
    MgfCheck& chk = checks[j];
    chk.t = ts[j];
    chk.closed_form = mgf_closed_form(ts[j], n_prime, p_prime, sigma_eta2);
    chk.mc_estimate = sums[2 * j] * inv_trials;
    const double second = sums[2 * j + 1] * inv_trials;
    const double var = std::max(second - chk.mc_estimate * chk.mc_estimate, 0.0);
    chk.mc_halfwidth = std::sqrt(var * inv_trials);
    chk.trials = trials;
    chk.pass = std::abs(chk.closed_form - chk.mc_estimate) <=
               std::max(3.0 * chk.mc_halfwidth, 0.01 * chk.closed_form);
  }
  return checks;
}

MgfCheck mgf_check(double t, std::int64_t n_prime, double p_prime,
                   double sigma_eta2, std::uint64_t trials, std::uint64_t seed,
                   unsigned threads) {
  const double ts[] = {t};
  return mgf_check_grid(ts, n_prime, p_prime, sigma_eta2, trials, seed,
                        threads)[0];
}

MomentCheck moment_check(std::int64_t n_prime, double p_prime,
                         double sigma_eta2, std::uint64_t trials,
                         std::uint64_t seed, unsigned threads) {
  require_channel(p_prime, sigma_eta2);
  if (n_prime < 1 || trials == 0) {
    throw std::domain_error("moment_check: bad arguments");
  }
  const TCoefficients c = t_coefficients(p_prime, sigma_eta2);

  // acc layout: [w, w^2, w^4, |T*_0|^3, |T*_1|^3].
  const auto sums = parallel::reduce_blocks(
      trials, threads, 5,
      [&](std::uint64_t begin, std::uint64_t end, double* acc) {
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          const double g = rng::Stream(seed, trial, 0).normal();
          const double t0 = 0.5 * (g * g - 1.0);
          double w = t0;
          double t1 = 0.0;
          for (std::int64_t i = 1; i <= n_prime; ++i) {
            const double k =
                rng::Stream(seed, trial, static_cast<std::uint64_t>(i))
                    .normal();
            const double term = c.a * (k * k - 1.0) + c.b * k;
            w += term;
            if (i == 1) {
              t1 = term;
            }
          }
          acc[0] += w;
          acc[1] += w * w;
          acc[2] += w * w * w * w;
          acc[3] += std::abs(t0 * t0 * t0);
          acc[4] += std::abs(t1 * t1 * t1);
        }
      });

  const double inv_trials = 1.0 / static_cast<double>(trials);
  const double mean = sums[0] * inv_trials;
  const double m2 = sums[1] * inv_trials;
  const double m4 = sums[2] * inv_trials;
  const double variance = std::max(m2 - mean * mean, 0.0);

  const MomentSums expected = moment_sums(n_prime, p_prime, sigma_eta2);
  const TCoefficients cc = t_coefficients(p_prime, sigma_eta2);
  const double abs_b = std::abs(cc.b);

  MomentCheck chk{};
  chk.mc_mean = mean;
  chk.mc_variance = variance;
  chk.expected_variance = expected.variance;
  chk.mean_se = std::sqrt(variance * inv_trials);
  chk.variance_se =
      std::sqrt(std::max(m4 - variance * variance, 0.0) * inv_trials);
  chk.rho0_mc = sums[3] * inv_trials;
  chk.rho1_mc = sums[4] * inv_trials;
  chk.rho0_bound = 3.5;
  chk.rho1_bound = 224.0 * cc.a * cc.a * cc.a +
                   16.0 * abs_b * abs_b * abs_b *
                       std::sqrt(2.0 / std::numbers::pi);
  chk.trials = trials;
  chk.pass = std::abs(chk.mc_mean) <= 5.0 * chk.mean_se &&
             std::abs(chk.mc_variance - chk.expected_variance) <=
                 5.0 * chk.variance_se &&
             chk.rho0_mc <= chk.rho0_bound && chk.rho1_mc <= chk.rho1_bound;
  return chk;
}

std::vector<TailGapCheck> berry_esseen_gap_grid(
    std::int64_t n_prime, double p_prime, double sigma_eta2,
    std::span<const double> thresholds, std::uint64_t trials,
    std::uint64_t seed, unsigned threads) {
  require_channel(p_prime, sigma_eta2);
  if (n_prime < 1 || trials == 0 || thresholds.empty()) {
    throw std::domain_error("berry_esseen_gap: bad arguments");
  }
  const TCoefficients c = t_coefficients(p_prime, sigma_eta2);
  const std::size_t nk = thresholds.size();

  const auto sums = parallel::reduce_blocks(
      trials, threads, nk,
      [&](std::uint64_t begin, std::uint64_t end, double* acc) {
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          const double w = sample_centered_sum(rng::Stream(seed, trial, 0),
                                               seed, trial, n_prime, c);
          for (std::size_t j = 0; j < nk; ++j) {
            if (w >= thresholds[j]) {
              acc[j] += 1.0;
            }
          }
        }
      });

  const double inv_trials = 1.0 / static_cast<double>(trials);
  const double sd = std::sqrt(numerics::kSourceDispersion +
                              static_cast<double>(n_prime) *
                                  numerics::dispersion(p_prime, sigma_eta2));
  const double bound = bounds::b_star(p_prime, sigma_eta2) /
                       std::sqrt(static_cast<double>(n_prime) + 1.0);

  std::vector<TailGapCheck> checks(nk);
  for (std::size_t j = 0; j < nk; ++j) {
    TailGapCheck& chk = checks[j];
    chk.empirical_tail = sums[j] * inv_trials;
    chk.normal_tail = numerics::q_function(thresholds[j] / sd);
    chk.bound = bound;
    chk.mc_sigma = std::sqrt(chk.empirical_tail * (1.0 - chk.empirical_tail) *
                             inv_trials);
    chk.trials = trials;
    chk.pass = std::abs(chk.empirical_tail - chk.normal_tail) <=
               chk.bound + 3.0 * chk.mc_sigma;
  }
  return checks;
}

TailGapCheck berry_esseen_gap(std::int64_t n_prime, double p_prime,
                              double sigma_eta2, double threshold,
                              std::uint64_t trials, std::uint64_t seed,
                              unsigned threads) {
  const double thresholds[] = {threshold};
  return berry_esseen_gap_grid(n_prime, p_prime, sigma_eta2, thresholds,
                               trials, seed, threads)[0];
}

}  // namespace skfb::verify
