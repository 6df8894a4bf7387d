#include "skfb/types.hpp"

#include <cmath>

namespace skfb {

void ChannelParams::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(sigma_s2) || !positive(sigma_eta2) || !positive(sigma_e2) ||
      !positive(sigma_e2_tilde) || !positive(power)) {
    throw std::domain_error(
        "ChannelParams: all variances and the power budget must be finite "
        "and strictly positive");
  }
}

void TargetSpec::validate(const ChannelParams& params) const {
  params.validate();
  if (!(d > 0.0 && d < params.sigma_s2)) {
    throw std::domain_error("TargetSpec: d must lie in (0, sigma_s2)");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("TargetSpec: epsilon must lie in (0,1)");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::domain_error("TargetSpec: delta must be > 0");
  }
}

const char* to_string(SchemeVariant variant) {
  switch (variant) {
    case SchemeVariant::kClassic:
      return "classic";
    case SchemeVariant::kModified:
      return "modified";
  }
  return "unknown";
}

}  // namespace skfb
