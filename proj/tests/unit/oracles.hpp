#pragma once

// Reference implementations built on Boost.Math. They share no code with the
// library and use different formulas where possible (integral
// representations, tanh-sinh instead of Gauss-Kronrod, raw omega forms).

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

namespace oracle {

inline double zeta(double s) { return boost::math::zeta(s); }

inline double lgamma(double z) { return boost::math::lgamma(z); }

// sum_{i >= n} (i+1)^{-s} = (1/Gamma(s)) int_0^inf t^{s-1} e^{-(n+1)t} / (1 - e^{-t}) dt
inline double hurwitz_tail(double s, std::uint64_t n) {
  const double a = static_cast<double>(n) + 1.0;
  boost::math::quadrature::exp_sinh<double> integrator;
  const double v = integrator.integrate(
      [&](double t) {
        if (t == 0.0) return 0.0;
        return std::exp((s - 1.0) * std::log(t) - a * t) / -std::expm1(-t);
      },
      1e-15);
  return v / boost::math::tgamma(s);
}

inline double zeta_pmf(std::uint64_t x, double s) {
  return std::pow(static_cast<double>(x) + 1.0, -s) / zeta(s);
}

// Through the beta density: B(x+1, r)^{-1} p^x (1-p)^{r-1} (1-p) / (x+r).
// Boost's negative_binomial takes 1-p as its argument, which cancels for tiny p.
inline double nb_pmf(std::uint64_t x, double r, double p) {
  const double a = static_cast<double>(x) + 1.0;
  return (1.0 - p) * boost::math::ibeta_derivative(a, r, p) / (a - 1.0 + r);
}

inline double poisson_pmf(std::uint64_t x, double lambda) {
  return boost::math::pdf(boost::math::poisson_distribution<double>(lambda),
                          static_cast<double>(x));
}

inline double yule_pmf(std::uint64_t x, double b) {
  return b * boost::math::beta(static_cast<double>(x) + 1.0, b + 1.0);
}

inline double normaliser(double s) { return zeta(s) * boost::math::tgamma(s); }

// tanh-sinh hands over the signed distance to the nearest endpoint: p - w
// near the left end, 1 - w near the right one.
struct OmegaPoint {
  double gap;      // w - p
  double neg_log;  // -ln w
};

inline OmegaPoint omega_point(double w, double xc, double p) {
  if (xc < 0.0) return {-xc, -std::log(w)};
  return {w - p, -std::log1p(-xc)};
}

// (r-1)/(zeta Gamma (1-p)^r) int_p^1 (w-p)^{r-2} (-ln w)^{s-1} w^{1-r} dw
inline double mixing_r_gt1(double p, double r, double s) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double inner = integrator.integrate(
      [&](double w, double xc) {
        const auto pt = omega_point(w, xc, p);
        if (pt.gap <= 0.0 || pt.neg_log <= 0.0) return 0.0;
        return std::pow(pt.gap, r - 2.0) * std::pow(pt.neg_log, s - 1.0) *
               std::pow(w, 1.0 - r);
      },
      p, 1.0, 1e-14);
  return (r - 1.0) * inner / (normaliser(s) * std::pow(1.0 - p, r));
}

// Signed density for 0 < r < 1 in its raw omega form.
inline double mixing_quasi(double p, double r, double s) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto piece = [&](double log_power) {
    return integrator.integrate(
        [&](double w, double xc) {
          const auto pt = omega_point(w, xc, p);
          if (pt.gap <= 0.0 || pt.neg_log <= 0.0) return 0.0;
          return std::pow(pt.gap, r - 1.0) * std::pow(pt.neg_log, log_power) *
                 std::pow(w, -r);
        },
        p, 1.0, 1e-14);
  };
  const double bracket = (s - 1.0) * piece(s - 2.0) + (r - 1.0) * piece(s - 1.0);
  return bracket / (normaliser(s) * std::pow(1.0 - p, r));
}

// (1/(zeta Gamma)) int_0^inf ln(1+y)^{s-1} / (1+y) e^{-lambda y} dy
inline double lambda_mixing(double lambda, double s) {
  boost::math::quadrature::exp_sinh<double> integrator;
  const double v = integrator.integrate(
      [&](double y) {
        if (y == 0.0) return 0.0;
        return std::exp((s - 1.0) * std::log(std::log1p(y)) - std::log1p(y) -
                        lambda * y);
      },
      1e-14);
  return v / normaliser(s);
}

// Brute-force E[X] of the 0-based Zeta: zeta(s-1)/zeta(s) - 1.
inline double zeta_mean(double s) { return zeta(s - 1.0) / zeta(s) - 1.0; }

// H_{n,s} by forward summation in long double.
inline double harmonic(std::uint64_t n, double s) {
  long double acc = 0.0L;
  for (std::uint64_t i = 1; i <= n; ++i) {
    acc += std::pow(static_cast<long double>(i), -static_cast<long double>(s));
  }
  return static_cast<double>(acc);
}

}  // namespace oracle
