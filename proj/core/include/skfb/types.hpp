#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skfb {

// Information quantities are measured in nats throughout (natural logarithms).
using Nats = double;
using Probability = double;

// Source/channel/eavesdropper variances and the average power budget.
// All five fields must be strictly positive.
struct ChannelParams {
  double sigma_s2;        // source variance
  double sigma_eta2;      // legitimate-channel noise variance
  double sigma_e2;        // first eavesdropper noise variance
  double sigma_e2_tilde;  // second eavesdropper noise variance
  double power;           // average power budget P

  void validate() const;
};

// Distortion threshold d, excess-distortion target epsilon, secrecy
// threshold delta (nats per channel use).
struct TargetSpec {
  double d;
  Probability epsilon;
  double delta;

  // d must lie in (0, sigma_s2) of the paired params.
  void validate(const ChannelParams& params) const;
};

enum class SchemeVariant { kClassic, kModified };

const char* to_string(SchemeVariant variant);

// Thrown when a bound scan exceeds its configured ceiling instead of
// silently truncating.
class ScanOverflowError : public std::runtime_error {
 public:
  ScanOverflowError(const std::string& what, std::int64_t ceiling)
      : std::runtime_error(what), ceiling_(ceiling) {}
  std::int64_t ceiling() const { return ceiling_; }

 private:
  std::int64_t ceiling_;
};

}  // namespace skfb
