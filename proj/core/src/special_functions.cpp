#include "zetamix/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "format.hpp"
#include "zetamix/errors.hpp"

namespace zetamix {

namespace {

// B_{2j} / (2j)!, j = 1..15.
constexpr std::array<double, 15> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23,
    8553103.0 / 6.0 / 4.0329146112660565e26,
    -23749461029.0 / 870.0 / 3.0488834461171384e29,
    8615841276005.0 / 14322.0 / 2.652528598121911e32,
};

// Stirling correction terms B_{2k} / (2k (2k-1) z^{2k-1}).
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,       -1.0 / 360.0,     1.0 / 1260.0,
    -1.0 / 1680.0,    1.0 / 1188.0,     -691.0 / 360360.0,
    1.0 / 156.0,      -3617.0 / 122400.0,
};

constexpr double kStirlingThreshold = 12.0;

double stirling_log_gamma(double z) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double series = 0.0;
  double pw = inv;
  for (double c : kStirling) {
    series += c * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z +
         0.5 * std::log(2.0 * std::numbers::pi) + series;
}

void require_s(double s, const char* what) {
  if (!std::isfinite(s) || !(s > 1.0)) {
    throw DomainError(std::string(what) + ": requires finite s > 1, got s=" +
                      detail::fmt(s));
  }
}

}  // namespace

NonFiniteIntegrandError::NonFiniteIntegrandError(double abscissa, double value)
    : std::runtime_error("non-finite integrand value " + detail::fmt(value) +
                         " at abscissa " + detail::fmt_full(abscissa)),
      abscissa_(abscissa),
      value_(value) {}

ConvergenceError::ConvergenceError(const std::string& context, double estimate,
                                   double error_estimate)
    : std::runtime_error(context + " (estimate " + detail::fmt(estimate) +
                         ", error estimate " + detail::fmt(error_estimate) +
                         ")"),
      estimate_(estimate),
      error_estimate_(error_estimate) {}

void SpecialFnAccuracy::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw DomainError("SpecialFnAccuracy: abs_tol must be positive");
  }
  if (max_terms < 1) {
    throw DomainError("SpecialFnAccuracy: max_terms must be >= 1");
  }
}

double log_gamma(double z) {
  if (!std::isfinite(z) || !(z > 0.0)) {
    throw DomainError("log_gamma: requires finite z > 0, got z=" +
                      detail::fmt(z));
  }
  if (z == 1.0 || z == 2.0) return 0.0;
  if (z >= kStirlingThreshold) return stirling_log_gamma(z);
  // Gamma(z) = Gamma(z + k) / (z (z+1) ... (z+k-1))
  double product = 1.0;
  double shifted = z;
  while (shifted < kStirlingThreshold) {
    product *= shifted;
    shifted += 1.0;
  }
  return stirling_log_gamma(shifted) - std::log(product);
}

double hurwitz_zeta(double s, std::uint64_t n, const SpecialFnAccuracy& acc) {
  require_s(s, "hurwitz_zeta");
  acc.validate();

  const double first = static_cast<double>(n) + 1.0;
  // Euler-Maclaurin needs the expansion point comfortably past s.
  const double min_expansion = 16.0 + std::ceil(s);
  double expansion = std::max(first, min_expansion);

  for (;;) {
    long double direct = 0.0L;
    if (expansion > first) {
      const auto count = static_cast<std::uint64_t>(expansion - first);
      if (count > acc.max_terms) {
        throw ConvergenceError("hurwitz_zeta: direct summation exceeds max_terms",
                               0.0, 0.0);
      }
      for (std::uint64_t i = count; i-- > 0;) {
        direct += std::pow(first + static_cast<double>(i), -s);
      }
    }

    const double m = expansion;
    const double m_pow = std::pow(m, -s);
    long double tail = m_pow * m / (s - 1.0) + 0.5L * m_pow;
    const long double base = direct + tail;

    double rising = s;      // s (s+1) ... (s+2j-2)
    double m_power = m_pow / m;  // m^{-s-2j+1}
    const double inv_m2 = 1.0 / (m * m);
    bool converged = false;
    for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
      const double term = kBernoulliOverFactorial[j] * rising * m_power;
      tail += term;
      const double scale = std::abs(static_cast<double>(base));
      // The EM remainder is bounded by the first omitted term.
      if (std::abs(term) <= 1e-4 * acc.abs_tol * scale) {
        converged = true;
        break;
      }
      rising *= (s + 2.0 * static_cast<double>(j) + 1.0) *
                (s + 2.0 * static_cast<double>(j) + 2.0);
      m_power *= inv_m2;
    }
    if (converged) return static_cast<double>(direct + tail);
    expansion *= 2.0;
  }
}

double riemann_zeta(double s, const SpecialFnAccuracy& acc) {
  return hurwitz_zeta(s, 0, acc);
}

double generalized_harmonic(std::uint64_t n, double s) {
  require_s(s, "generalized_harmonic");
  long double sum = 0.0L;
  for (std::uint64_t i = n; i-- > 0;) {
    sum += std::pow(static_cast<long double>(i) + 1.0L,
                    -static_cast<long double>(s));
  }
  return static_cast<double>(sum);
}

}  // namespace zetamix
