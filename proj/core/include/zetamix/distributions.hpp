#pragma once

#include <cstdint>

namespace zetamix {

/// Counts live on the 0-based support {0, 1, 2, ...}.
using Count = std::uint64_t;

/// Zeta(s) on {0,1,2,...}: f(x) = (x+1)^{-s} / zeta(s). Caches zeta(s).
class ZetaParams {
 public:
  explicit ZetaParams(double s);

  double s() const noexcept { return s_; }
  double zeta_s() const noexcept { return zeta_s_; }

 private:
  double s_;
  double zeta_s_;
};

/// Negative Binomial(r, p): Gamma(r+x)/(Gamma(r) x!) p^x (1-p)^r.
class NbParams {
 public:
  NbParams(double r, double p);

  double r() const noexcept { return r_; }
  double p() const noexcept { return p_; }

 private:
  double r_;
  double p_;
};

/// Gamma(shape, rate) with density rate^shape x^{shape-1} e^{-rate x} / Gamma(shape).
class GammaParams {
 public:
  GammaParams(double shape, double rate);

  /// Gamma(r, (1-p)/p), the mixing law that turns Poisson into NB(r, p).
  static GammaParams from_nb(const NbParams& nb);

  double shape() const noexcept { return shape_; }
  double rate() const noexcept { return rate_; }

 private:
  double shape_;
  double rate_;
};

class BetaParams {
 public:
  BetaParams(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

 private:
  double a_;
  double b_;
};

/// Yule(b) on {0,1,2,...}: b Gamma(b+1) Gamma(x+1) / Gamma(x+b+2).
class YuleParams {
 public:
  explicit YuleParams(double b);

  double b() const noexcept { return b_; }

 private:
  double b_;
};

double zeta_pmf(Count x, const ZetaParams& params);
double nb_pmf(Count x, const NbParams& params);
double poisson_pmf(Count x, double lambda);
double gamma_pdf(double lambda, const GammaParams& params);
double beta_pdf(double p, const BetaParams& params);
double beta_pdf(double p, double a, double b);
double yule_pmf(Count x, const YuleParams& params);

/// Log-space variants; the PMFs above are exp() of these.
double log_zeta_pmf(Count x, const ZetaParams& params);
double log_nb_pmf(Count x, const NbParams& params);
double log_poisson_pmf(Count x, double lambda);
double log_yule_pmf(Count x, const YuleParams& params);

/// P(X > x) for Zeta(s), via the Hurwitz tail.
double zeta_survival(Count x, const ZetaParams& params);
/// P(X >= x) for Yule(b) = Gamma(b+1) Gamma(x+1) / Gamma(x+b+1).
double yule_tail_from(Count x, const YuleParams& params);

// Tail-truncation helpers: the smallest X with P(X > X) < eps, eps in (0, 1).
Count zeta_truncation_point(const ZetaParams& params, double eps);
Count nb_truncation_point(const NbParams& params, double eps);
Count poisson_truncation_point(double lambda, double eps);
Count yule_truncation_point(const YuleParams& params, double eps);

}  // namespace zetamix
