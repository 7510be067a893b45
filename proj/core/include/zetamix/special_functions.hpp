#pragma once

#include <cstddef>
#include <cstdint>

namespace zetamix {

/// Accuracy knobs shared by the series-based special functions.
struct SpecialFnAccuracy {
  double abs_tol = 1e-12;
  std::size_t max_terms = 1'000'000;

  /// Throws DomainError unless abs_tol > 0 and max_terms >= 1.
  void validate() const;
};

/// ln Gamma(z) for z > 0. Stirling series after an upward recurrence shift;
/// absolute error below 1e-13 on moderate arguments, relative error near one
/// ulp for large ones. Thread-safe (does not touch signgam).
double log_gamma(double z);

/// Riemann zeta(s) = sum_{x>=0} (x+1)^{-s}, s > 1.
double riemann_zeta(double s, const SpecialFnAccuracy& acc = {});

/// Tail series sum_{i>=n} (i+1)^{-s}, i.e. the Hurwitz zeta function
/// zeta(s, n+1). hurwitz_zeta(s, 0) == riemann_zeta(s).
double hurwitz_zeta(double s, std::uint64_t n,
                    const SpecialFnAccuracy& acc = {});

/// H_{n,s} = sum_{i=0}^{n-1} (i+1)^{-s}; H_{0,s} = 0.
double generalized_harmonic(std::uint64_t n, double s);

}  // namespace zetamix
