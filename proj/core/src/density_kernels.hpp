#pragma once

// Unchecked density kernels shared by the public evaluators, the mixture
// engine and the samplers. Callers are responsible for domain checks.

#include <cmath>
#include <cstddef>

#include "zetamix/mixing_densities.hpp"
#include "zetamix/quadrature.hpp"

namespace zetamix::detail {

/// A point of (0,1) carried as p, q = 1 - p and y = -ln p, each computed
/// directly so none suffers cancellation near either endpoint.
struct ProbabilityPoint {
  double p;
  double q;
  double y;

  static ProbabilityPoint from_p(double p) {
    return {p, 1.0 - p, -std::log(p)};
  }
  static ProbabilityPoint from_neg_log(double y) {
    return {std::exp(-y), -std::expm1(-y), y};
  }
};

/// ln(zeta(s) Gamma(s))
double log_normalizer(double s);

/// Mixing density over p for a fixed NB shape. Inner integrals (if any) use
/// `inner`; their evaluation counts are added to *evals when non-null.
class PDensity {
 public:
  PDensity(const MixingDensityKind& kind, const QuadratureSpec& inner);

  double operator()(const ProbabilityPoint& pt,
                    std::size_t* evals = nullptr) const;

  /// The density behaves like (1-p)^{s-2} as p -> 1.
  double exponent_at_one() const noexcept { return s_ - 2.0; }
  double s() const noexcept { return s_; }

 private:
  MixingDensityTag tag_;
  double r_;
  double s_;
  double log_norm_;
  QuadratureSpec inner_;
};

/// ln Gamma(lambda; shape r, rate (1-p)/p), with the rate taken as expm1(y).
double log_gamma_kernel(double lambda, double r, const ProbabilityPoint& pt);

/// Poisson-rate mixing density by the y-integral; log_norm is
/// log_normalizer(s). Value and error estimate are already normalised.
QuadratureResult lambda_mixing_integral(double lambda, double s,
                                        double log_norm,
                                        const QuadratureSpec& spec);

/// lambda_mixing_integral that throws ConvergenceError on a miss and adds its
/// evaluation count to *evals when non-null.
double lambda_mixing_value(double lambda, double s, double log_norm,
                           const QuadratureSpec& spec, std::size_t* evals);

}  // namespace zetamix::detail
