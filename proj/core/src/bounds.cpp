#include "skfb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "skfb/leakage.hpp"
#include "skfb/numerics.hpp"

namespace skfb::bounds {
namespace {

std::int64_t clamped_ceiling(double value) {
  const auto n = static_cast<std::int64_t>(std::ceil(value));
  return std::max<std::int64_t>(n, 1);
}

double distortion_blocklength(const ChannelParams& params,
                              const TargetSpec& targets, bool classic) {
  const double r = numerics::rate_distortion(targets.d, params.sigma_s2);
  const double c = numerics::gaussian_capacity(params.power, params.sigma_eta2);
  double numerator =
      r + std::log(numerics::q_inverse(targets.epsilon / 2.0));
  if (classic) {
    numerator += 0.5 * std::log1p(params.sigma_eta2 / params.power);
  }
  return numerator / c;
}

}  // namespace

const char* to_string(Binding binding) {
  switch (binding) {
    case Binding::kDistortion:
      return "distortion";
    case Binding::kSecrecy:
      return "secrecy";
  }
  return "unknown";
}

ClassicLower classic_lower(const ChannelParams& params,
                           const TargetSpec& targets) {
  targets.validate(params);
  return {clamped_ceiling(distortion_blocklength(params, targets, true)),
          leakage::ntilde2_classic(params, targets.delta)};
}

ModifiedLower modified_lower(const ChannelParams& params,
                             const TargetSpec& targets) {
  targets.validate(params);
  return {clamped_ceiling(distortion_blocklength(params, targets, false)),
          leakage::n3_search(params, targets.delta)};
}

double b_star(double p_prime, double sigma_eta2) {
  if (!(p_prime >= 1e-9)) {
    throw std::domain_error("b_star: p_prime below the 1e-9 domain floor");
  }
  if (!(sigma_eta2 > 0.0)) {
    throw std::domain_error("b_star: noise variance must be > 0");
  }
  const double denom = p_prime + sigma_eta2;
  const double a = p_prime / (2.0 * denom);
  const double b = std::sqrt(p_prime * sigma_eta2) / denom;
  const double rho0 = 3.5;
  const double rho1 = 224.0 * a * a * a +
                      16.0 * b * b * b * std::sqrt(2.0 / std::numbers::pi);
  const double v = std::min(numerics::kSourceDispersion,
                            numerics::dispersion(p_prime, sigma_eta2));
  return 6.0 * std::max(rho0, rho1) / (v * std::sqrt(v));
}

ConverseContext make_converse_context(const ChannelParams& params,
                                      const TargetSpec& targets,
                                      std::int64_t n_prime) {
  targets.validate(params);
  if (n_prime < 2) {
    throw std::domain_error("make_converse_context: n_prime must be >= 2");
  }
  const auto np = static_cast<double>(n_prime);
  ConverseContext ctx{};
  ctx.n_prime = n_prime;
  ctx.gamma = 0.5 * std::log(np);
  ctx.p_prime = params.power / (1.0 - targets.epsilon);
  ctx.b_star = b_star(ctx.p_prime, params.sigma_eta2);
  ctx.zeta = std::sqrt(np - 1.0) *
             (2.0 / std::sqrt(np) + ctx.b_star / std::sqrt(np + 1.0));
  ctx.epsilon_prime = 1.0 - ctx.zeta / std::sqrt(np - 1.0);
  return ctx;
}

bool converse_feasible(const ConverseContext& ctx, const ChannelParams& params,
                       const TargetSpec& targets) {
  const auto np = static_cast<double>(ctx.n_prime);
  const double q_arg = ctx.epsilon_prime + std::exp(-ctx.gamma) +
                       ctx.b_star / std::sqrt(np + 1.0);
  if (q_arg >= 1.0) {
    // The tail bound exceeds one: the chain excludes nothing at this N'.
    return true;
  }
  if (q_arg <= 0.0) {
    throw std::logic_error(
        "converse_feasible: nonpositive Q^{-1} argument (epsilon_prime > 0 "
        "should rule this out)");
  }
  const double c = numerics::gaussian_capacity(ctx.p_prime, params.sigma_eta2);
  const double v = numerics::dispersion(ctx.p_prime, params.sigma_eta2);
  const double r = numerics::rate_distortion(targets.d, params.sigma_s2);
  const double lhs = np * c - r;
  const double rhs = std::sqrt(numerics::kSourceDispersion + np * v) *
                         numerics::q_inverse(q_arg) -
                     ctx.gamma;
  return lhs >= rhs;
}

Nats f1(double x, const ChannelParams& params, Probability epsilon,
        double o_coefficient) {
  if (!(x >= 2.0)) {
    throw std::domain_error("f1: x must be >= 2");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("f1: epsilon must lie in (0,1)");
  }
  const double p_eff = params.power / (1.0 - epsilon);
  const double c = numerics::gaussian_capacity(p_eff, params.sigma_eta2);
  const double v = numerics::dispersion(p_eff, params.sigma_eta2);
  return x * c +
         std::sqrt(numerics::kSourceDispersion + x * v) * std::sqrt(std::log(x)) +
         o_coefficient * std::sqrt(x);
}

std::int64_t converse_upper(const ChannelParams& params,
                            const TargetSpec& targets, UpperBoundMode mode,
                            std::int64_t scan_ceiling) {
  targets.validate(params);
  const double r = numerics::rate_distortion(targets.d, params.sigma_s2);

  if (mode == UpperBoundMode::kAsymptoticF1) {
    for (std::int64_t x = 2; x <= scan_ceiling; ++x) {
      if (f1(static_cast<double>(x), params, targets.epsilon) >= r) {
        return x;
      }
    }
    throw ScanOverflowError(
        "converse_upper: no F1 crossing of R(d)=" + std::to_string(r) +
            " below the scan ceiling " + std::to_string(scan_ceiling),
        scan_ceiling);
  }

  for (std::int64_t n_prime = 2; n_prime <= scan_ceiling; ++n_prime) {
    const ConverseContext ctx = make_converse_context(params, targets, n_prime);
    if (converse_feasible(ctx, params, targets)) {
      return n_prime;
    }
  }
  throw ScanOverflowError(
      "converse_upper: converse still infeasible at the scan ceiling " +
          std::to_string(scan_ceiling) + " for R(d)=" + std::to_string(r),
      scan_ceiling);
}

BoundReport bracket(const ChannelParams& params, const TargetSpec& targets,
                    UpperBoundMode mode, std::int64_t scan_ceiling) {
  const ClassicLower classic = classic_lower(params, targets);
  const ModifiedLower modified = modified_lower(params, targets);

  BoundReport report{};
  report.ntilde1 = classic.ntilde1;
  report.ntilde2 = classic.ntilde2;
  report.n2 = modified.n2;
  report.n3 = modified.n3;
  report.n1 = converse_upper(params, targets, mode, scan_ceiling);

  report.rate_lower_classic =
      1.0 / static_cast<double>(std::max(report.ntilde1, report.ntilde2));
  report.rate_lower_modified =
      1.0 / static_cast<double>(std::max(report.n2, report.n3));
  report.rate_upper = 1.0 / static_cast<double>(report.n1 - 1);
  report.binding_classic = report.ntilde1 >= report.ntilde2
                               ? Binding::kDistortion
                               : Binding::kSecrecy;
  report.binding_modified =
      report.n2 >= report.n3 ? Binding::kDistortion : Binding::kSecrecy;
  return report;
}

}  // namespace skfb::bounds
