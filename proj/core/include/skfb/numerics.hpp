#pragma once

#include <cstddef>
#include <vector>

#include "skfb/types.hpp"

namespace skfb::numerics {

// Dispersion of the unit-variance Gaussian source under squared error.
inline constexpr double kSourceDispersion = 0.5;

// Q(x) = (1/sqrt(2*pi)) * integral_x^inf exp(-t^2/2) dt.
// Relative error <= 1e-12 for |x| <= 37. NaN input -> domain error.
Probability q_function(double x);

// Inverse of q_function on (0,1). Rational initial estimate polished by
// Newton steps against q_function; |q_function(q_inverse(p)) - p| <= 1e-12.
double q_inverse(Probability p);

// C(x) = 0.5 * ln(1 + x / sigma_eta2), in nats.
Nats gaussian_capacity(double x, double sigma_eta2);

// R(d) = 0.5 * ln(sigma_s2 / d), in nats; requires 0 < d < sigma_s2.
Nats rate_distortion(double d, double sigma_s2);

// V(x) = x (x + 2 sigma_eta2) / (2 (x + sigma_eta2)^2); lies in [0, 1/2).
double dispersion(double x, double sigma_eta2);

// Dense symmetric covariance matrix, row-major storage.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double& at(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  const double* data() const { return data_.data(); }

  // Throws if the matrix is asymmetric beyond 1e-12 relative.
  void check_symmetry() const;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

struct MutualInformationResult {
  Nats nats;
  double condition;  // pivot-ratio estimate from the LDL^T factorization
};

// I(A;B) = 0.5 * (logdet Sigma_A + logdet Sigma_B - logdet Sigma) where A is
// the first `split` coordinates. Log-determinants via pivoted LDL^T.
// Throws std::domain_error if the joint covariance is not positive definite.
MutualInformationResult gaussian_mutual_information_detailed(
    const CovarianceMatrix& joint, std::size_t split);

Nats gaussian_mutual_information(const CovarianceMatrix& joint,
                                 std::size_t split);

}  // namespace skfb::numerics
