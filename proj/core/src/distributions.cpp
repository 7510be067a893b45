#include "zetamix/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "format.hpp"
#include "zetamix/errors.hpp"
#include "zetamix/special_functions.hpp"

namespace zetamix {

namespace {

// Below this count the Gamma ratios are accumulated term by term; beyond it
// log_gamma differences are accurate enough and much cheaper.
constexpr Count kProductCutoff = 64;

void require_positive(double v, const char* name, const char* where) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(std::string(where) + ": requires finite " + name +
                      " > 0, got " + name + "=" + detail::fmt(v));
  }
}

void require_open_unit(double p, const char* name, const char* where) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(where) + ": requires 0 < " + name +
                      " < 1, got " + name + "=" + detail::fmt(p));
  }
}

void require_eps(double eps, const char* where) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError(std::string(where) + ": requires 0 < eps < 1");
  }
}

// ln[Gamma(r+x) / (Gamma(r) Gamma(x+1))]
double log_rising_over_factorial(double r, Count x) {
  if (x <= kProductCutoff) {
    double acc = 0.0;
    for (Count i = 0; i < x; ++i) {
      const double id = static_cast<double>(i);
      acc += std::log((r + id) / (id + 1.0));
    }
    return acc;
  }
  const double xd = static_cast<double>(x);
  return log_gamma(r + xd) - log_gamma(r) - log_gamma(xd + 1.0);
}

template <class Survival>
Count smallest_with_tail_below(Survival survival, double eps) {
  // survival(X) = P(X > X) is nonincreasing in X.
  if (survival(0) < eps) return 0;
  Count lo = 0;
  Count hi = 1;
  constexpr Count kLimit = Count{1} << 62;
  while (!(survival(hi) < eps)) {
    lo = hi;
    if (hi >= kLimit) {
      throw ConvergenceError("truncation point exceeds 2^62", 0.0, 0.0);
    }
    hi *= 2;
  }
  while (hi - lo > 1) {
    const Count mid = lo + (hi - lo) / 2;
    if (survival(mid) < eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

template <class Pmf>
Count cumulative_truncation(Pmf pmf, double eps) {
  long double cdf = 0.0L;
  for (Count x = 0;; ++x) {
    cdf += pmf(x);
    if (1.0L - cdf < eps) return x;
    if (x > (Count{1} << 40)) {
      throw ConvergenceError("cumulative truncation did not terminate", 0.0,
                             0.0);
    }
  }
}

}  // namespace

ZetaParams::ZetaParams(double s) : s_(s), zeta_s_(0.0) {
  if (!std::isfinite(s) || !(s > 1.0)) {
    throw DomainError("Zeta: requires s > 1, got s=" + detail::fmt(s));
  }
  zeta_s_ = riemann_zeta(s);
}

NbParams::NbParams(double r, double p) : r_(r), p_(p) {
  require_positive(r, "r", "NegativeBinomial");
  require_open_unit(p, "p", "NegativeBinomial");
}

GammaParams::GammaParams(double shape, double rate)
    : shape_(shape), rate_(rate) {
  require_positive(shape, "shape", "Gamma");
  require_positive(rate, "rate", "Gamma");
}

GammaParams GammaParams::from_nb(const NbParams& nb) {
  return GammaParams(nb.r(), (1.0 - nb.p()) / nb.p());
}

BetaParams::BetaParams(double a, double b) : a_(a), b_(b) {
  require_positive(a, "a", "Beta");
  require_positive(b, "b", "Beta");
}

YuleParams::YuleParams(double b) : b_(b) { require_positive(b, "b", "Yule"); }

double log_zeta_pmf(Count x, const ZetaParams& params) {
  return -params.s() * std::log(static_cast<double>(x) + 1.0) -
         std::log(params.zeta_s());
}

double zeta_pmf(Count x, const ZetaParams& params) {
  return std::exp(log_zeta_pmf(x, params));
}

double log_nb_pmf(Count x, const NbParams& params) {
  const double r = params.r();
  const double p = params.p();
  const double xd = static_cast<double>(x);
  const double px = x == 0 ? 0.0 : xd * std::log(p);
  return log_rising_over_factorial(r, x) + px + r * std::log1p(-p);
}

double nb_pmf(Count x, const NbParams& params) {
  return std::exp(log_nb_pmf(x, params));
}

double log_poisson_pmf(Count x, double lambda) {
  require_positive(lambda, "lambda", "poisson_pmf");
  const double xd = static_cast<double>(x);
  const double lx = x == 0 ? 0.0 : xd * std::log(lambda);
  return lx - lambda - log_gamma(xd + 1.0);
}

double poisson_pmf(Count x, double lambda) {
  return std::exp(log_poisson_pmf(x, lambda));
}

double gamma_pdf(double lambda, const GammaParams& params) {
  require_positive(lambda, "lambda", "gamma_pdf");
  const double a = params.shape();
  const double b = params.rate();
  return std::exp(a * std::log(b) + (a - 1.0) * std::log(lambda) -
                  b * lambda - log_gamma(a));
}

double beta_pdf(double p, const BetaParams& params) {
  require_open_unit(p, "p", "beta_pdf");
  const double a = params.a();
  const double b = params.b();
  if (a == 1.0) return b * std::exp((b - 1.0) * std::log1p(-p));
  const double log_beta = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
  return std::exp((a - 1.0) * std::log(p) + (b - 1.0) * std::log1p(-p) -
                  log_beta);
}

double beta_pdf(double p, double a, double b) {
  return beta_pdf(p, BetaParams(a, b));
}

double log_yule_pmf(Count x, const YuleParams& params) {
  const double b = params.b();
  // f(0) = b/(b+1); f(i)/f(i-1) = i/(i+b+1)
  if (x <= kProductCutoff) {
    double acc = std::log(b) - std::log1p(b);
    for (Count i = 1; i <= x; ++i) {
      const double id = static_cast<double>(i);
      acc += std::log(id / (id + b + 1.0));
    }
    return acc;
  }
  const double xd = static_cast<double>(x);
  return std::log(b) + log_gamma(b + 1.0) + log_gamma(xd + 1.0) -
         log_gamma(xd + b + 2.0);
}

double yule_pmf(Count x, const YuleParams& params) {
  return std::exp(log_yule_pmf(x, params));
}

double zeta_survival(Count x, const ZetaParams& params) {
  if (x == std::numeric_limits<Count>::max()) return 0.0;
  return hurwitz_zeta(params.s(), x + 1) / params.zeta_s();
}

double yule_tail_from(Count x, const YuleParams& params) {
  if (x == 0) return 1.0;
  const double b = params.b();
  const double xd = static_cast<double>(x);
  return std::exp(log_gamma(b + 1.0) + log_gamma(xd + 1.0) -
                  log_gamma(xd + b + 1.0));
}

Count zeta_truncation_point(const ZetaParams& params, double eps) {
  require_eps(eps, "zeta_truncation_point");
  return smallest_with_tail_below(
      [&](Count x) { return zeta_survival(x, params); }, eps);
}

Count nb_truncation_point(const NbParams& params, double eps) {
  require_eps(eps, "nb_truncation_point");
  return cumulative_truncation([&](Count x) { return nb_pmf(x, params); }, eps);
}

Count poisson_truncation_point(double lambda, double eps) {
  require_positive(lambda, "lambda", "poisson_truncation_point");
  require_eps(eps, "poisson_truncation_point");
  return cumulative_truncation([&](Count x) { return poisson_pmf(x, lambda); },
                               eps);
}

Count yule_truncation_point(const YuleParams& params, double eps) {
  require_eps(eps, "yule_truncation_point");
  return smallest_with_tail_below(
      [&](Count x) { return yule_tail_from(x + 1, params); }, eps);
}

}  // namespace zetamix
