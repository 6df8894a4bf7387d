#pragma once

#include <cstdint>

#include "skfb/types.hpp"

namespace skfb::bounds {

enum class Binding { kDistortion, kSecrecy };

const char* to_string(Binding binding);

enum class UpperBoundMode { kExact, kAsymptoticF1 };

// Auxiliary quantities of the pre-asymptotic converse at candidate
// blocklength N'. gamma = 0.5 ln N' and zeta = sqrt(N'-1) (2/sqrt(N') +
// B*/sqrt(N'+1)); epsilon_prime = 1 - zeta/sqrt(N'-1) is stored unclamped
// (it is far below 0 at desk-scale parameters) because the B* terms cancel
// exactly inside the Q^{-1} argument. p_prime is the truncation power at
// the zeta -> 0 reference, P/(1-epsilon).
struct ConverseContext {
  std::int64_t n_prime;
  double gamma;
  double zeta;
  double p_prime;
  double epsilon_prime;
  double b_star;
};

// All computed blocklengths and the resulting rate bracket.
struct BoundReport {
  std::int64_t ntilde1;
  std::int64_t ntilde2;
  std::int64_t n2;
  std::int64_t n3;
  std::int64_t n1;
  double rate_lower_classic;   // min(1/ntilde1, 1/ntilde2)
  double rate_lower_modified;  // min(1/n2, 1/n3)
  double rate_upper;           // 1/(n1 - 1)
  Binding binding_classic;
  Binding binding_modified;
};

inline constexpr std::int64_t kDefaultScanCeiling = 10'000'000;

// Ntilde1 = ceil((R(d) + ln Q^{-1}(eps/2) + 0.5 ln(1+sigma_eta2/P))/C(P)),
// Ntilde2 the classic secrecy blocklength; both clamped at 1.
struct ClassicLower {
  std::int64_t ntilde1;
  std::int64_t ntilde2;
};
ClassicLower classic_lower(const ChannelParams& params,
                           const TargetSpec& targets);

// N2 = ceil((R(d) + ln Q^{-1}(eps/2))/C(P)) clamped at 1; N3 from the F2
// threshold search.
struct ModifiedLower {
  std::int64_t n2;
  std::int64_t n3;
};
ModifiedLower modified_lower(const ChannelParams& params,
                             const TargetSpec& targets);

// B* = 6 max(rho0, rho1) / min(V_d, V(P'))^{3/2} with rho0 = 3.5 and
// rho1 = 224 |A|^3 + 16 |B|^3 sqrt(2/pi), A = P'/(2(P'+sigma_eta2)),
// B = -sqrt(P' sigma_eta2)/(P'+sigma_eta2). Requires p_prime >= 1e-9.
double b_star(double p_prime, double sigma_eta2);

ConverseContext make_converse_context(const ChannelParams& params,
                                      const TargetSpec& targets,
                                      std::int64_t n_prime);

// Evaluates N' C(P') - R(d) >= sqrt(V_d + N' V(P')) Q^{-1}(eps' + e^{-gamma}
// + B*/sqrt(N'+1)) - gamma. Returns true when the inequality holds, i.e.
// blocklength N'-1 is not excluded; a Q^{-1} argument >= 1 is vacuously
// feasible.
bool converse_feasible(const ConverseContext& ctx, const ChannelParams& params,
                       const TargetSpec& targets);

// F1(x) = x C(P/(1-eps)) + sqrt(V_d + x V(P/(1-eps))) sqrt(ln x) +
// o_coefficient * sqrt(x); requires x >= 2. o_coefficient = 0 stands in for
// the unresolved O(sqrt(x)) term and is reported as approximate.
Nats f1(double x, const ChannelParams& params, Probability epsilon,
        double o_coefficient = 0.0);

// Smallest N' at which the converse stops excluding blocklength N'-1
// (kExact), or the F1/R(d) crossing (kAsymptoticF1). Throws
// ScanOverflowError past scan_ceiling.
std::int64_t converse_upper(const ChannelParams& params,
                            const TargetSpec& targets,
                            UpperBoundMode mode = UpperBoundMode::kExact,
                            std::int64_t scan_ceiling = kDefaultScanCeiling);

BoundReport bracket(const ChannelParams& params, const TargetSpec& targets,
                    UpperBoundMode mode = UpperBoundMode::kExact,
                    std::int64_t scan_ceiling = kDefaultScanCeiling);

}  // namespace skfb::bounds
