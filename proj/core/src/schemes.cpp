#include "skfb/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "skfb/numerics.hpp"
#include "skfb/parallel.hpp"
#include "skfb/rng.hpp"

namespace skfb::schemes {
namespace {

void require_blocklength(std::int64_t n) {
  if (n < 1) {
    throw std::domain_error("blocklength must be >= 1");
  }
}

// Runs one full transmission and returns the final state. Lane 0 of the
// trial's stream family is the source draw, lane i the step-i noise.
SchemeState run_trial(SchemeVariant variant, const ChannelParams& params,
                      std::int64_t n, std::uint64_t seed, std::uint64_t trial,
                      double sigma_s, double sigma_eta) {
  const double s = sigma_s * rng::Stream(seed, trial, 0).normal();
  SchemeState state = initialize(
      variant, params, s, sigma_eta * rng::Stream(seed, trial, 1).normal());
  for (std::int64_t i = 2; i <= n; ++i) {
    state = step(state, params,
                 sigma_eta * rng::Stream(seed, trial,
                                         static_cast<std::uint64_t>(i))
                                 .normal());
  }
  return state;
}

}  // namespace

double first_input(const ChannelParams& params, double s) {
  return std::sqrt(params.power / params.sigma_s2) * s;
}

double next_input(const SchemeState& state, const ChannelParams& params) {
  if (!(state.alpha > 0.0)) {
    throw std::domain_error("next_input: corrupted state, alpha <= 0");
  }
  return std::sqrt(params.power / state.alpha) * state.error;
}

SchemeState initialize(SchemeVariant variant, const ChannelParams& params,
                       double s, double eta1) {
  params.validate();
  SchemeState state{};
  state.step = 1;
  state.source = s;
  switch (variant) {
    case SchemeVariant::kClassic:
      // Shat_1 = Y_1 / sqrt(P/sigma_s2) = s + eta1 * sqrt(sigma_s2/P);
      // written in the second form so that eta1 == 0 reproduces s exactly.
      state.estimate = s + eta1 * std::sqrt(params.sigma_s2 / params.power);
      state.alpha = params.sigma_eta2 * params.sigma_s2 / params.power;
      break;
    case SchemeVariant::kModified: {
      const double y1 = first_input(params, s) + eta1;
      const double mmse_gain = std::sqrt(params.power * params.sigma_s2) /
                               (params.power + params.sigma_eta2);
      state.estimate = mmse_gain * y1;
      state.alpha = params.sigma_eta2 * params.sigma_s2 /
                    (params.power + params.sigma_eta2);
      break;
    }
  }
  state.error = state.estimate - state.source;
  return state;
}

SchemeState step(const SchemeState& state, const ChannelParams& params,
                 double eta_i) {
  if (state.step < 1) {
    throw std::domain_error("step: state.step must be >= 1");
  }
  if (!(state.alpha > 0.0)) {
    throw std::domain_error("step: corrupted state, alpha <= 0");
  }
  const double x = next_input(state, params);
  const double y = x + eta_i;
  const double beta = std::sqrt(params.power * state.alpha) /
                      (params.power + params.sigma_eta2);

  SchemeState next = state;
  next.step = state.step + 1;
  next.estimate = state.estimate - beta * y;
  next.error = next.estimate - next.source;
  next.alpha =
      state.alpha * params.sigma_eta2 / (params.power + params.sigma_eta2);
  return next;
}

double alpha_closed_form(SchemeVariant variant, const ChannelParams& params,
                         std::int64_t n) {
  params.validate();
  require_blocklength(n);
  const double kappa =
      params.sigma_eta2 / (params.power + params.sigma_eta2);
  switch (variant) {
    case SchemeVariant::kClassic:
      return params.sigma_eta2 * params.sigma_s2 / params.power *
             std::pow(kappa, static_cast<double>(n - 1));
    case SchemeVariant::kModified:
      return params.sigma_s2 * std::pow(kappa, static_cast<double>(n));
  }
  throw std::logic_error("alpha_closed_form: unreachable");
}

Probability exact_excess_probability(SchemeVariant variant,
                                     const ChannelParams& params,
                                     std::int64_t n, double d) {
  // Validates 0 < d < sigma_s2.
  (void)numerics::rate_distortion(d, params.sigma_s2);
  const double alpha = alpha_closed_form(variant, params, n);
  return 2.0 * numerics::q_function(std::sqrt(d / alpha));
}

MonteCarloReport monte_carlo_excess_probability(SchemeVariant variant,
                                                const ChannelParams& params,
                                                std::int64_t n, double d,
                                                std::uint64_t trials,
                                                std::uint64_t seed,
                                                unsigned threads) {
  params.validate();
  require_blocklength(n);
  if (trials == 0) {
    throw std::domain_error("monte_carlo_excess_probability: trials >= 1");
  }
  const double sigma_s = std::sqrt(params.sigma_s2);
  const double sigma_eta = std::sqrt(params.sigma_eta2);

  const auto sums = parallel::reduce_blocks(
      trials, threads, 1,
      [&](std::uint64_t begin, std::uint64_t end, double* acc) {
        double hits = 0.0;
        for (std::uint64_t t = begin; t < end; ++t) {
          const SchemeState fin =
              run_trial(variant, params, n, seed, t, sigma_s, sigma_eta);
          if (fin.error * fin.error >= d) {
            hits += 1.0;
          }
        }
        acc[0] = hits;
      });

  MonteCarloReport report{};
  report.trials = trials;
  report.hits = static_cast<std::uint64_t>(sums[0]);
  report.estimate = sums[0] / static_cast<double>(trials);
  report.ci_halfwidth =
      3.0 * std::sqrt(report.estimate * (1.0 - report.estimate) /
                      static_cast<double>(trials));
  report.seed = seed;
  return report;
}

std::vector<StepPower> empirical_power(SchemeVariant variant,
                                       const ChannelParams& params,
                                       std::int64_t n, std::uint64_t trials,
                                       std::uint64_t seed, unsigned threads) {
  params.validate();
  require_blocklength(n);
  if (trials == 0) {
    throw std::domain_error("empirical_power: trials >= 1");
  }
  const double sigma_s = std::sqrt(params.sigma_s2);
  const double sigma_eta = std::sqrt(params.sigma_eta2);
  const auto width = static_cast<std::size_t>(2 * n);

  // acc layout: [sum x_i^2, sum x_i^4] per step.
  const auto sums = parallel::reduce_blocks(
      trials, threads, width,
      [&](std::uint64_t begin, std::uint64_t end, double* acc) {
        for (std::uint64_t t = begin; t < end; ++t) {
          const double s = sigma_s * rng::Stream(seed, t, 0).normal();
          double x = first_input(params, s);
          acc[0] += x * x;
          acc[1] += x * x * x * x;
          SchemeState state = initialize(
              variant, params, s,
              sigma_eta * rng::Stream(seed, t, 1).normal());
          for (std::int64_t i = 2; i <= n; ++i) {
            x = next_input(state, params);
            const std::size_t base = static_cast<std::size_t>(i - 1) * 2;
            acc[base] += x * x;
            acc[base + 1] += x * x * x * x;
            state = step(state, params,
                         sigma_eta *
                             rng::Stream(seed, t,
                                         static_cast<std::uint64_t>(i))
                                 .normal());
          }
        }
      });

  std::vector<StepPower> result(static_cast<std::size_t>(n));
  const double inv_trials = 1.0 / static_cast<double>(trials);
  for (std::size_t i = 0; i < result.size(); ++i) {
    const double mean = sums[2 * i] * inv_trials;
    const double mean4 = sums[2 * i + 1] * inv_trials;
    const double var = std::max(mean4 - mean * mean, 0.0);
    result[i].mean_sq = mean;
    result[i].std_error = std::sqrt(var * inv_trials);
  }
  return result;
}

}  // namespace skfb::schemes
