#include "skfb/numerics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace skfb::numerics {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Acklam's rational approximation to the standard normal quantile,
// |relative error| < 1.2e-9 over (0,1). Polished by the caller.
double phi_inverse_estimate(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>;

// logdet of a positive definite block via pivoted LDL^T; also reports the
// pivot ratio as a cheap conditioning estimate.
double log_det_block(const Eigen::MatrixXd& m, double* pivot_ratio) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
  if (ldlt.info() != Eigen::Success) {
    throw std::domain_error("gaussian_mutual_information: factorization failed");
  }
  const auto d = ldlt.vectorD();
  double log_det = 0.0;
  double d_min = std::numeric_limits<double>::infinity();
  double d_max = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0)) {
      throw std::domain_error(
          "gaussian_mutual_information: degenerate (singular) covariance");
    }
    log_det += std::log(d[i]);
    d_min = std::min(d_min, d[i]);
    d_max = std::max(d_max, d[i]);
  }
  if (pivot_ratio != nullptr) {
    *pivot_ratio = d_max / d_min;
  }
  return log_det;
}

}  // namespace

Probability q_function(double x) {
  if (std::isnan(x)) {
    throw std::domain_error("q_function: NaN argument");
  }
  return 0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0);
}

double q_inverse(Probability p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("q_inverse: argument must lie in (0,1)");
  }
  // Q^{-1}(p) = -Phi^{-1}(p)
  double x = -phi_inverse_estimate(p);
  for (int iter = 0; iter < 3; ++iter) {
    const double pdf = normal_pdf(x);
    if (pdf <= 0.0) {
      break;
    }
    const double err = q_function(x) - p;
    const double update = err / pdf;
    x += update;
    if (std::abs(update) < 1e-14 * (1.0 + std::abs(x))) {
      break;
    }
  }
  return x;
}

Nats gaussian_capacity(double x, double sigma_eta2) {
  if (!(sigma_eta2 > 0.0)) {
    throw std::domain_error("gaussian_capacity: noise variance must be > 0");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("gaussian_capacity: power must be >= 0");
  }
  return 0.5 * std::log1p(x / sigma_eta2);
}

Nats rate_distortion(double d, double sigma_s2) {
  if (!(sigma_s2 > 0.0)) {
    throw std::domain_error("rate_distortion: source variance must be > 0");
  }
  if (!(d > 0.0 && d < sigma_s2)) {
    throw std::domain_error(
        "rate_distortion: distortion must lie in (0, sigma_s2)");
  }
  return 0.5 * std::log(sigma_s2 / d);
}

double dispersion(double x, double sigma_eta2) {
  if (!(sigma_eta2 > 0.0)) {
    throw std::domain_error("dispersion: noise variance must be > 0");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("dispersion: power must be >= 0");
  }
  const double denom = x + sigma_eta2;
  return x * (x + 2.0 * sigma_eta2) / (2.0 * denom * denom);
}

CovarianceMatrix::CovarianceMatrix(std::size_t dim)
    : dim_(dim), data_(dim * dim, 0.0) {
  if (dim == 0) {
    throw std::domain_error("CovarianceMatrix: dimension must be positive");
  }
}

void CovarianceMatrix::check_symmetry() const {
  double scale = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    scale = std::max(scale, std::abs(at(i, i)));
  }
  const double tol = 1e-12 * std::max(scale, 1.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      if (std::abs(at(i, j) - at(j, i)) > tol) {
        throw std::domain_error("CovarianceMatrix: matrix is not symmetric");
      }
    }
  }
}

MutualInformationResult gaussian_mutual_information_detailed(
    const CovarianceMatrix& joint, std::size_t split) {
  const std::size_t n = joint.dim();
  if (split == 0 || split >= n) {
    throw std::domain_error(
        "gaussian_mutual_information: split must lie in [1, dim)");
  }
  joint.check_symmetry();

  RowMajorMap full(joint.data(), static_cast<Eigen::Index>(n),
                   static_cast<Eigen::Index>(n));
  const auto s = static_cast<Eigen::Index>(split);
  const auto r = static_cast<Eigen::Index>(n - split);

  double condition = 0.0;
  const double log_det_full = log_det_block(full, &condition);
  const double log_det_a = log_det_block(full.topLeftCorner(s, s), nullptr);
  const double log_det_b =
      log_det_block(full.bottomRightCorner(r, r), nullptr);

  const double mi = 0.5 * (log_det_a + log_det_b - log_det_full);
  return {std::max(mi, 0.0), condition};
}

Nats gaussian_mutual_information(const CovarianceMatrix& joint,
                                 std::size_t split) {
  return gaussian_mutual_information_detailed(joint, split).nats;
}

}  // namespace skfb::numerics
