#pragma once

#include <cstddef>
#include <functional>

namespace zetamix {

using Integrand = std::function<double(double)>;

/// Integrand for integrate_beta_weighted: receives both u and 1-u so that
/// neither has to be recovered by cancellation near an endpoint.
using SplitIntegrand = std::function<double(double u, double one_minus_u)>;

struct EndpointHints {
  bool left_singular = false;
  bool right_singular = false;
};

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_subdivisions = 2000;
  EndpointHints endpoint_hints{};
  /// Number of geometrically shrinking panels laid toward each hinted endpoint
  /// before adaptive bisection starts.
  std::size_t endpoint_depth = 24;

  void validate() const;
  double tolerance_for(double value) const;
  QuadratureSpec with_hints(bool left_singular, bool right_singular) const;
  QuadratureSpec scaled(double factor) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Adaptive 7/15-point Gauss-Kronrod on [lo, hi]. Endpoints are never
/// evaluated. A non-finite integrand value throws NonFiniteIntegrandError;
/// running out of subdivisions returns converged = false.
QuadratureResult integrate_interval(const Integrand& f, double lo, double hi,
                                    const QuadratureSpec& spec = {});

/// integrate_interval on (0, 1).
QuadratureResult integrate_unit(const Integrand& f,
                                const QuadratureSpec& spec = {});

/// Integral over (lower, inf) through y = lower + scale * u / (1 - u).
/// Hints refer to u: left is y = lower, right is y = inf.
QuadratureResult integrate_semi_infinite(const Integrand& f,
                                         const QuadratureSpec& spec = {},
                                         double lower = 0.0,
                                         double scale = 1.0);

/// Integral over (0, 1) of u^{a-1} (1-u)^{b-1} g(u, 1-u) for smooth g.
/// The weight is absorbed exactly by u = w^{1/a} on (0, 1/2] and
/// 1 - u = z^{1/b} on [1/2, 1), so g is all the quadrature ever sees.
QuadratureResult integrate_beta_weighted(const SplitIntegrand& g, double a,
                                         double b,
                                         const QuadratureSpec& spec = {});

/// Integral over (0, inf) of h, where h(y) behaves like y^{alpha-1} times a
/// smooth function near y = 0. Uses y = w^{1/alpha} on (0, 1] and the
/// compactifying map on [1, inf).
QuadratureResult integrate_semi_infinite_algebraic(
    const Integrand& h, double alpha, const QuadratureSpec& spec = {});

/// Sum of two independent pieces of one integral.
QuadratureResult combine(const QuadratureResult& a, const QuadratureResult& b,
                         const QuadratureSpec& spec);

}  // namespace zetamix
