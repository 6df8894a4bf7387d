#include "skfb/leakage.hpp"

#include <cmath>
#include <stdexcept>

#include "skfb/numerics.hpp"

namespace skfb::leakage {
namespace {

void require_blocklength(std::int64_t n) {
  if (n < 1) {
    throw std::domain_error("blocklength must be >= 1");
  }
}

double kappa_of(const ChannelParams& params) {
  return params.sigma_eta2 / (params.power + params.sigma_eta2);
}

}  // namespace

double LinearForm::variance(const ChannelParams& params) const {
  double noise = 0.0;
  for (const double c : noise_coeffs) {
    noise += c * c;
  }
  return params.sigma_s2 * s_coeff * s_coeff + params.sigma_eta2 * noise;
}

std::vector<LinearForm> input_linear_forms(SchemeVariant variant,
                                           const ChannelParams& params,
                                           std::int64_t n) {
  params.validate();
  require_blocklength(n);

  const double p = params.power;
  const double kappa = kappa_of(params);
  const double lambda = std::sqrt(p / params.sigma_s2);

  std::vector<LinearForm> forms;
  forms.reserve(static_cast<std::size_t>(n));
  forms.push_back({lambda, {}});
  if (n == 1) {
    return forms;
  }

  // Error coefficients over (S, eta_1, ..., eta_i) and the error variance.
  double err_s;
  std::vector<double> err_noise;
  double alpha;
  if (variant == SchemeVariant::kClassic) {
    err_s = 0.0;
    err_noise = {std::sqrt(params.sigma_s2 / p)};
    alpha = params.sigma_eta2 * params.sigma_s2 / p;
  } else {
    err_s = -kappa;
    err_noise = {std::sqrt(p * params.sigma_s2) / (p + params.sigma_eta2)};
    alpha = params.sigma_s2 * kappa;
  }

  for (std::int64_t i = 2; i <= n; ++i) {
    const double scale = std::sqrt(p / alpha);
    LinearForm form;
    form.s_coeff = scale * err_s;
    form.noise_coeffs.resize(static_cast<std::size_t>(i - 1), 0.0);
    for (std::size_t k = 0; k < err_noise.size(); ++k) {
      form.noise_coeffs[k] = scale * err_noise[k];
    }
    forms.push_back(std::move(form));

    // e_i = kappa e_{i-1} - beta_i eta_i.
    const double beta = std::sqrt(p * alpha) / (p + params.sigma_eta2);
    err_s *= kappa;
    for (double& c : err_noise) {
      c *= kappa;
    }
    err_noise.push_back(-beta);
    alpha *= kappa;
  }
  return forms;
}

LeakageResult exact_leakage_detailed(SchemeVariant variant,
                                     const ChannelParams& params,
                                     std::int64_t n) {
  const auto forms = input_linear_forms(variant, params, n);
  const auto nn = static_cast<std::size_t>(n);

  // Gram matrix of the noise parts, G_ij = sum_k c_{i,k} c_{j,k}, plus the
  // raw coefficient c_{i,j} of eta_j in X_i (zero for j >= i).
  auto coeff = [&](std::size_t i, std::size_t j) {
    return j < forms[i].noise_coeffs.size() ? forms[i].noise_coeffs[j] : 0.0;
  };
  std::vector<double> gram(nn * nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double g = 0.0;
      const std::size_t limit =
          std::min(forms[i].noise_coeffs.size(), forms[j].noise_coeffs.size());
      for (std::size_t k = 0; k < limit; ++k) {
        g += forms[i].noise_coeffs[k] * forms[j].noise_coeffs[k];
      }
      gram[i * nn + j] = g;
      gram[j * nn + i] = g;
    }
  }

  // Joint covariance of (S, Z^N, Ztilde^N) with Z_i = X_i + eta_{e,i} and
  // Ztilde_i = X_i + eta_i + etatilde_{e,i}.
  numerics::CovarianceMatrix cov(1 + 2 * nn);
  cov.at(0, 0) = params.sigma_s2;
  for (std::size_t i = 0; i < nn; ++i) {
    const double cov_s_x = forms[i].s_coeff * params.sigma_s2;
    cov.at(0, 1 + i) = cov_s_x;
    cov.at(1 + i, 0) = cov_s_x;
    cov.at(0, 1 + nn + i) = cov_s_x;
    cov.at(1 + nn + i, 0) = cov_s_x;
  }
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      const double cov_x =
          forms[i].s_coeff * forms[j].s_coeff * params.sigma_s2 +
          params.sigma_eta2 * gram[i * nn + j];
      // cov(Z_i, Z_j)
      double v = cov_x + (i == j ? params.sigma_e2 : 0.0);
      cov.at(1 + i, 1 + j) = v;
      // cov(Z_i, Ztilde_j) = cov_x + sigma_eta2 * c_{i,j}
      v = cov_x + params.sigma_eta2 * coeff(i, j);
      cov.at(1 + i, 1 + nn + j) = v;
      cov.at(1 + nn + j, 1 + i) = v;
      // cov(Ztilde_i, Ztilde_j)
      v = cov_x + params.sigma_eta2 * (coeff(i, j) + coeff(j, i) +
                                       (i == j ? 1.0 : 0.0)) +
          (i == j ? params.sigma_e2_tilde : 0.0);
      cov.at(1 + nn + i, 1 + nn + j) = v;
    }
  }

  const auto mi = numerics::gaussian_mutual_information_detailed(cov, 1);
  return {mi.nats / static_cast<double>(n), mi.condition};
}

Nats exact_leakage(SchemeVariant variant, const ChannelParams& params,
                   std::int64_t n) {
  return exact_leakage_detailed(variant, params, n).nats_per_use;
}

Nats f2_bound(const ChannelParams& params, std::int64_t n) {
  params.validate();
  require_blocklength(n);
  const double prefactor = (params.power + params.sigma_eta2) *
                           (params.sigma_e2 + params.sigma_e2_tilde) /
                           (params.sigma_e2 * params.sigma_e2_tilde);
  const double kappa = kappa_of(params);
  return prefactor / (2.0 * static_cast<double>(n)) *
         (1.0 - std::pow(kappa, static_cast<double>(n)));
}

std::int64_t n3_search(const ChannelParams& params, double delta) {
  params.validate();
  if (!(delta > 0.0)) {
    throw std::domain_error("n3_search: delta must be > 0");
  }
  // F2(N) <= prefactor/(2N), so the scan terminates by prefactor/(2 delta).
  std::int64_t n = 1;
  while (f2_bound(params, n) > delta) {
    ++n;
  }
  return n;
}

std::int64_t ntilde2_classic(const ChannelParams& params, double delta) {
  params.validate();
  if (!(delta > 0.0)) {
    throw std::domain_error("ntilde2_classic: delta must be > 0");
  }
  const double value =
      std::log((1.0 + params.power / params.sigma_e2) *
               (1.0 + params.power / params.sigma_e2_tilde)) /
      (2.0 * delta);
  const auto n = static_cast<std::int64_t>(std::ceil(value));
  return std::max<std::int64_t>(n, 1);
}

LeakageProfile leakage_profile(SchemeVariant variant,
                               const ChannelParams& params,
                               std::int64_t n_max) {
  require_blocklength(n_max);
  LeakageProfile profile;
  profile.n_max = n_max;
  profile.exact.reserve(static_cast<std::size_t>(n_max));
  profile.f2.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    profile.exact.push_back(exact_leakage(variant, params, n));
    profile.f2.push_back(f2_bound(params, n));
  }
  return profile;
}

}  // namespace skfb::leakage
