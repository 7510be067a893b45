#include "zetamix/mixture_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include "density_kernels.hpp"
#include "format.hpp"
#include "zetamix/errors.hpp"
#include "zetamix/special_functions.hpp"
#include "zetamix/version.hpp"

namespace zetamix {

namespace {

constexpr double kInnerTightening = 0.01;

void require_s(double s, const char* where) {
  if (!std::isfinite(s) || !(s > 1.0)) {
    throw DomainError(std::string(where) + ": requires s > 1, got s=" + detail::fmt(s));
  }
}

// Runs `compute` and names the failing call in any ConvergenceError, including
// those raised by inner integrals.
template <class Compute>
double value_or_throw(Compute&& compute, const std::string& context) {
  QuadratureResult res;
  try {
    res = compute();
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(context + ": " + e.what(), e.estimate(),
                           e.error_estimate());
  }
  if (!res.converged) {
    throw ConvergenceError(context + ": quadrature did not converge", res.value,
                           res.error_estimate);
  }
  return res.value;
}

// Integral over (0, inf) of a p-density against p^{x+1} (1-p)^r in y = -ln p.
// Integrated in z = y / scale so that mass near y ~ 1/x is not missed; the
// absolute tolerance still refers to the final value.
QuadratureResult integrate_against_density(
    const MixingDensityKind& kind, const QuadratureSpec& spec,
    const QuadratureSpec& inner, double alpha,
    const std::function<double(const detail::ProbabilityPoint&)>& weight,
    double scale = 1.0) {
  const detail::PDensity density(kind, inner);
  std::size_t inner_evals = 0;
  QuadratureSpec outer = spec;
  outer.abs_tol = spec.abs_tol / scale;
  auto res = integrate_semi_infinite_algebraic(
      [&](double z) {
        const auto pt = detail::ProbabilityPoint::from_neg_log(scale * z);
        const double w = weight(pt);
        if (w == 0.0) return 0.0;
        return w * density(pt, &inner_evals);
      },
      alpha, outer);
  res.value *= scale;
  res.error_estimate *= scale;
  res.evaluations += inner_evals;
  return res;
}

}  // namespace

QuadratureResult nb_mixture(Count x, const MixingDensityKind& kind,
                            const QuadratureSpec& spec) {
  if (!kind.over_probability() || !kind.r()) {
    throw DomainError("nb_mixture: kind must be a mixing density over p");
  }
  const double r = *kind.r();
  const double s = kind.s();
  const double xd = static_cast<double>(x);
  const double log_coef = log_gamma(r + xd) - log_gamma(r) - log_gamma(xd + 1.0);

  QuadratureSpec cell = spec;
  if (kind.tag() == MixingDensityTag::kRLt1Quasi) {
    // Relative accuracy means nothing near the sign change.
    cell.rel_tol = std::min(spec.rel_tol, 1e-15);
  }
  return integrate_against_density(
      kind, cell, spec.scaled(kInnerTightening), r + s - 1.0, [&](const detail::ProbabilityPoint& pt) {
        return std::exp(log_coef - (xd + 1.0) * pt.y + r * std::log(pt.q));
      },
      1.0 / (xd + 1.0));
}

double nb_mixture_pmf(Count x, double r, double s, const QuadratureSpec& spec) {
  require_s(s, "nb_mixture_pmf");
  const auto kind = MixingDensityKind::for_nb_shape(r, s);
  return value_or_throw([&] { return nb_mixture(x, kind, spec); },
                        "nb_mixture_pmf(x=" + std::to_string(x) +
                            ", r=" + detail::fmt(r) + ", s=" + detail::fmt(s) + ")");
}

QuadratureResult poisson_mixture(Count x, double s,
                                 const QuadratureSpec& spec) {
  require_s(s, "poisson_mixture_pmf");
  const double log_norm = detail::log_normalizer(s);
  const QuadratureSpec inner = spec.scaled(kInnerTightening);
  const QuadratureSpec half = spec.scaled(0.5);
  const double t0 = std::log(static_cast<double>(x) + 1.0);
  std::size_t inner_evals = 0;

  // lambda = e^t, split at the Poisson mode.
  auto integrand = [&](double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) return 0.0;
    const double kernel =
        std::exp(log_poisson_pmf(x, lambda) + std::log(lambda));
    if (kernel == 0.0) return 0.0;
    return kernel *
           detail::lambda_mixing_value(lambda, s, log_norm, inner, &inner_evals);
  };
  const auto upper = integrate_semi_infinite(
      [&](double t) { return integrand(std::exp(t0 + t)); }, half);
  const auto lower = integrate_semi_infinite(
      [&](double t) { return integrand(std::exp(t0 - t)); }, half);
  auto res = combine(upper, lower, spec);
  res.evaluations += inner_evals;
  return res;
}

double poisson_mixture_pmf(Count x, double s, const QuadratureSpec& spec) {
  return value_or_throw([&] { return poisson_mixture(x, s, spec); },
                        "poisson_mixture_pmf(x=" + std::to_string(x) +
                            ", s=" + detail::fmt(s) + ")");
}

QuadratureResult gamma_poisson(Count x, double r, double p,
                               const QuadratureSpec& spec) {
  const NbParams nb(r, p);
  const GammaParams gamma = GammaParams::from_nb(nb);
  const double alpha = static_cast<double>(x) + r;
  // lambda = c z puts the mode of the integrand near z = 1.
  const double c = alpha / (1.0 + gamma.rate());
  return integrate_semi_infinite_algebraic(
      [&](double z) {
        const double lambda = c * z;
        if (!(lambda > 0.0) || !std::isfinite(lambda)) return 0.0;
        return poisson_pmf(x, lambda) * gamma_pdf(lambda, gamma) * c;
      },
      alpha, spec);
}

double gamma_poisson_pmf(Count x, double r, double p,
                         const QuadratureSpec& spec) {
  return value_or_throw([&] { return gamma_poisson(x, r, p, spec); },
                        "gamma_poisson_pmf(x=" + std::to_string(x) +
                            ", r=" + detail::fmt(r) + ", p=" + detail::fmt(p) + ")");
}

QuadratureResult yule_mixture(Count x, double b, const QuadratureSpec& spec) {
  const BetaParams beta(1.0, b);
  return integrate_unit(
      [&](double p) {
        return nb_pmf(x, NbParams(1.0, p)) * beta_pdf(p, beta);
      },
      spec.with_hints(false, true));
}

double yule_mixture_pmf(Count x, double b, const QuadratureSpec& spec) {
  return value_or_throw([&] { return yule_mixture(x, b, spec); },
                        "yule_mixture_pmf(x=" + std::to_string(x) +
                            ", b=" + detail::fmt(b) + ")");
}

RPrior::RPrior(std::vector<std::pair<double, double>> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("RPrior: no atoms");
  long double total = 0.0L;
  for (const auto& [r, w] : atoms_) {
    if (!std::isfinite(r) || !(r >= 1.0)) {
      throw DomainError("RPrior: requires every r >= 1, got r=" + detail::fmt(r));
    }
    if (!std::isfinite(w) || !(w >= 0.0)) {
      throw DomainError("RPrior: weights must be nonnegative");
    }
    total += w;
  }
  if (std::abs(static_cast<double>(total) - 1.0) > 1e-12) {
    throw DomainError("RPrior: weights must sum to 1, got " +
                      detail::fmt(static_cast<double>(total)));
  }
}

QuadratureResult random_r_mixture(Count x, double s, const RPrior& prior,
                                  const QuadratureSpec& spec) {
  require_s(s, "random_r_mixture_pmf");
  QuadratureResult out;
  out.converged = true;
  long double value = 0.0L;
  for (const auto& [r, w] : prior.atoms()) {
    if (w == 0.0) continue;
    const auto part = nb_mixture(x, MixingDensityKind::for_nb_shape(r, s), spec);
    value += static_cast<long double>(w) * part.value;
    out.error_estimate += w * part.error_estimate;
    out.evaluations += part.evaluations;
    out.converged = out.converged && part.converged;
  }
  out.value = static_cast<double>(value);
  return out;
}

double random_r_mixture_pmf(Count x, double s, const RPrior& prior,
                            const QuadratureSpec& spec) {
  return value_or_throw([&] { return random_r_mixture(x, s, prior, spec); },
                        "random_r_mixture_pmf(x=" + std::to_string(x) +
                            ", s=" + detail::fmt(s) + ")");
}

QuadratureResult mixing_moment(Count x, double s, const QuadratureSpec& spec) {
  require_s(s, "mixing_moment");
  const double xd = static_cast<double>(x);
  return integrate_against_density(
      MixingDensityKind::r1_closed(s), spec, spec.scaled(kInnerTightening), s - 1.0,
      [&](const detail::ProbabilityPoint& pt) {
        return std::exp(-(xd + 1.0) * pt.y);
      },
      1.0 / (xd + 1.0));
}

QuadratureResult mgf_quadrature(double t, double s, const QuadratureSpec& spec) {
  require_s(s, "mgf_quadrature");
  if (!std::isfinite(t)) throw DomainError("mgf_quadrature: t must be finite");
  return integrate_against_density(
      MixingDensityKind::r1_closed(s), spec, spec.scaled(kInnerTightening), s - 1.0,
      [&](const detail::ProbabilityPoint& pt) {
        return std::exp(t * pt.p - pt.y);
      });
}

SeriesValue mgf_series_harmonic(double t, double s, std::size_t n_terms) {
  require_s(s, "mgf_series_harmonic");
  const long double zeta = riemann_zeta(s);
  long double sum = 0.0L;
  long double coef = 1.0L;  // t^n / n!
  long double harmonic = 0.0L;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    coef *= static_cast<long double>(t) / static_cast<long double>(n);
    harmonic += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
    sum += coef * harmonic;
  }
  return {static_cast<double>(std::exp(static_cast<long double>(t)) - sum / zeta),
          n_terms, 0.0};
}

SeriesValue mgf_series_hurwitz(double t, double s, std::size_t n_terms) {
  require_s(s, "mgf_series_hurwitz");
  const long double zeta = riemann_zeta(s);
  long double sum = 0.0L;
  long double coef = 1.0L;
  for (std::size_t n = 0; n <= n_terms; ++n) {
    if (n > 0) {
      coef *= static_cast<long double>(t) / static_cast<long double>(n);
    }
    sum += coef * hurwitz_zeta(s, n);
  }
  return {static_cast<double>(sum / zeta), n_terms + 1, 0.0};
}

SeriesValue mgf_series_bounded(double t, double s, double tol) {
  if (!std::isfinite(t) || !(tol > 0.0)) {
    throw DomainError("mgf_series_bounded: requires finite t and tol > 0");
  }
  const double at = std::abs(t);
  // Smallest N with |t|^{N+1}/(N+1)! / (1 - |t|/(N+2)) <= tol.
  std::size_t n = 0;
  double next = at;  // |t|^{N+1}/(N+1)!
  double bound = 0.0;
  for (;; ++n) {
    const double ratio = at / static_cast<double>(n + 2);
    if (ratio < 1.0) {
      bound = next / (1.0 - ratio);
      if (bound <= tol) break;
    }
    next *= at / static_cast<double>(n + 2);
    if (n > 100000) throw ConvergenceError("mgf_series_bounded", 0.0, bound);
  }
  auto out = mgf_series_hurwitz(t, s, n);
  out.tail_bound = bound;
  return out;
}

QuadratureResult geometric_bridge(Count n, double s,
                                  const QuadratureSpec& spec) {
  require_s(s, "geometric_bridge");
  if (n < 1) throw DomainError("geometric_bridge: requires n >= 1");
  const double nd = static_cast<double>(n);
  // g = e^y, dg = g dy
  return integrate_semi_infinite_algebraic(
      [&](double y) {
        const double g = std::exp(y);
        if (!(g > 1.0) || !std::isfinite(g)) return 0.0;
        const double weight = std::exp(-(nd - 1.0) * y) * std::expm1(y);
        if (weight == 0.0) return 0.0;
        return weight * gamma_transform_pdf(g, s);
      },
      s, spec);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Identity id) {
  switch (id) {
    case Identity::kNbMixture: return "nb_mixture";
    case Identity::kPoissonMixture: return "poisson_mixture";
    case Identity::kGammaPoisson: return "gamma_poisson";
    case Identity::kYuleMixture: return "yule_mixture";
    case Identity::kLambdaInvariance: return "lambda_invariance";
    case Identity::kMoment: return "moment";
    case Identity::kPriorInvariance: return "prior_invariance";
    case Identity::kMgf: return "mgf";
    case Identity::kGeometricBridge: return "geometric_bridge";
  }
  return "unknown";
}

const std::vector<Identity>& all_identities() {
  static const std::vector<Identity> ids = {
      Identity::kNbMixture,        Identity::kPoissonMixture,
      Identity::kGammaPoisson,     Identity::kYuleMixture,
      Identity::kLambdaInvariance, Identity::kMoment,
      Identity::kPriorInvariance,  Identity::kMgf,
      Identity::kGeometricBridge,
  };
  return ids;
}

std::optional<Identity> identity_from_string(std::string_view name) {
  for (Identity id : all_identities()) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

void finalize_check(IdentityCheck& check) {
  check.abs_err = std::abs(check.value - check.expected);
  check.rel_err = check.expected != 0.0
                      ? check.abs_err / std::abs(check.expected)
                      : (check.abs_err == 0.0 ? 0.0 : HUGE_VAL);
  check.passed = std::isfinite(check.value) &&
                 (check.abs_err <= check.abs_threshold ||
                  check.rel_err <= check.rel_threshold);
}

std::pair<double, double> identity_thresholds(Identity id,
                                              std::optional<double> r,
                                              std::optional<Count> x) {
  double abs_thr = 1e-6;
  switch (id) {
    case Identity::kNbMixture:
      abs_thr = !r ? 1e-6 : (*r < 1.0 ? 1e-5 : (*r == 1.0 ? 1e-8 : 1e-6));
      break;
    case Identity::kPoissonMixture:
    case Identity::kLambdaInvariance:
      abs_thr = 1e-5;
      break;
    case Identity::kGammaPoisson:
    case Identity::kYuleMixture:
    case Identity::kGeometricBridge:
      abs_thr = 1e-9;
      break;
    case Identity::kMoment:
    case Identity::kMgf:
      abs_thr = 1e-8;
      break;
    case Identity::kPriorInvariance:
      abs_thr = 2e-7;
      break;
  }
  // Beyond x = 20 the targets approach quadrature noise; fall back on a
  // loose relative criterion.
  const double rel_thr = (x && *x > 20) ? 1e-4 : abs_thr;
  return {abs_thr, rel_thr};
}

std::vector<IdentityCheck> moment_identity_check(Count x_max, double s,
                                                 const QuadratureSpec& spec) {
  require_s(s, "moment_identity_check");
  if (x_max < 1) throw DomainError("moment_identity_check: requires x_max >= 1");
  const double zeta = riemann_zeta(s);
  std::vector<IdentityCheck> out;
  for (Count x = 0; x <= x_max; ++x) {
    IdentityCheck c;
    c.identity = std::string(to_string(Identity::kMoment));
    c.params = {{"s", s}};
    c.x = x;
    const auto res = mixing_moment(x, s, spec);
    c.value = res.value;
    c.expected = x == 0 ? 1.0 : 1.0 - generalized_harmonic(x, s) / zeta;
    c.converged = res.converged;
    c.evaluations = res.evaluations;
    std::tie(c.abs_threshold, c.rel_threshold) =
        identity_thresholds(Identity::kMoment, std::nullopt, x);
    finalize_check(c);
    out.push_back(std::move(c));
  }
  return out;
}

IdentityGrid VerificationGrid::default_axes(Identity id) {
  auto range = [](Count hi) {
    std::vector<Count> v;
    for (Count x = 0; x <= hi; ++x) v.push_back(x);
    return v;
  };
  IdentityGrid g{id, {}, {}, {}, {}, {}, {}, {}};
  switch (id) {
    case Identity::kNbMixture:
      g.r = {0.25, 0.5, 0.75, 1.0, 2.0, 2.5, 3.7};
      g.s = {1.5, 2.0, 3.0};
      g.x = range(20);
      break;
    case Identity::kPoissonMixture:
      g.s = {1.5, 2.0};
      g.x = range(10);
      break;
    case Identity::kGammaPoisson:
      g.r = {0.5, 1.0, 2.0};
      g.p = {0.3, 0.5, 0.7};
      g.x = range(15);
      break;
    case Identity::kYuleMixture:
      g.b = {0.5, 1.0, 2.5};
      g.x = range(15);
      break;
    case Identity::kLambdaInvariance:
      g.r = {1.0, 2.0, 3.0};
      g.s = {1.5, 2.0};
      g.lambda = {0.1, 0.5, 1.0, 5.0};
      break;
    case Identity::kMoment:
      g.s = {1.5, 2.0, 3.0};
      g.x = range(10);
      break;
    case Identity::kPriorInvariance:
      g.r = {1.0, 2.0, 3.5};
      g.s = {2.0};
      g.x = range(10);
      break;
    case Identity::kMgf:
      g.s = {2.0};
      g.t = {0.5, 1.0, 2.0};
      break;
    case Identity::kGeometricBridge:
      g.s = {1.5, 2.0, 3.0};
      g.x = range(10);
      break;
  }
  return g;
}

VerificationGrid VerificationGrid::defaults() {
  VerificationGrid grid;
  for (Identity id : all_identities()) grid.identities.push_back(default_axes(id));
  return grid;
}

namespace {

struct Cell {
  IdentityCheck header;
  std::function<void(IdentityCheck&)> run;
};

IdentityCheck make_check(Identity id, std::vector<std::pair<std::string, double>> params,
                         std::optional<Count> x, std::optional<double> r) {
  IdentityCheck c;
  c.identity = std::string(to_string(id));
  c.params = std::move(params);
  c.x = x;
  std::tie(c.abs_threshold, c.rel_threshold) = identity_thresholds(id, r, x);
  return c;
}

void absorb(IdentityCheck& c, const QuadratureResult& res) {
  c.value = res.value;
  c.converged = c.converged && res.converged;
  c.evaluations += res.evaluations;
}

// Prior weights over the r axis: uniform, increasing and decreasing.
std::vector<RPrior> invariance_priors(const std::vector<double>& support) {
  const std::size_t k = support.size();
  std::vector<std::vector<double>> shapes(3, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    shapes[0][i] = 1.0;
    shapes[1][i] = static_cast<double>(i + 1);
    shapes[2][i] = static_cast<double>(k - i);
  }
  std::vector<RPrior> priors;
  for (auto& w : shapes) {
    long double total = 0.0L;
    for (double v : w) total += v;
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t i = 0; i < k; ++i) {
      atoms.emplace_back(support[i], static_cast<double>(w[i] / total));
    }
    // Absorb rounding so the weights sum to 1 within the prior's tolerance.
    long double sum = 0.0L;
    for (std::size_t i = 0; i + 1 < k; ++i) sum += atoms[i].second;
    atoms.back().second = static_cast<double>(1.0L - sum);
    priors.emplace_back(std::move(atoms));
  }
  return priors;
}

std::vector<Cell> enumerate_cells(const IdentityGrid& g,
                                    const QuadratureSpec& spec) {
  std::vector<Cell> cells;
  const Identity id = g.identity;
  switch (id) {
    case Identity::kNbMixture:
      for (double r : g.r)
        for (double s : g.s)
          for (Count x : g.x)
            cells.push_back({make_check(id, {{"r", r}, {"s", s}}, x, r),
                              [=](IdentityCheck& c) {
              c.expected = zeta_pmf(x, ZetaParams(s));
              absorb(c, nb_mixture(x, MixingDensityKind::for_nb_shape(r, s), spec));
            }});
      break;
    case Identity::kPoissonMixture:
      for (double s : g.s)
        for (Count x : g.x)
          cells.push_back({make_check(id, {{"s", s}}, x, std::nullopt),
                              [=](IdentityCheck& c) {
            c.expected = zeta_pmf(x, ZetaParams(s));
            absorb(c, poisson_mixture(x, s, spec));
          }});
      break;
    case Identity::kGammaPoisson:
      for (double r : g.r)
        for (double p : g.p)
          for (Count x : g.x)
            cells.push_back({make_check(id, {{"r", r}, {"p", p}}, x, r),
                              [=](IdentityCheck& c) {
              c.expected = nb_pmf(x, NbParams(r, p));
              absorb(c, gamma_poisson(x, r, p, spec));
            }});
      break;
    case Identity::kYuleMixture:
      for (double b : g.b)
        for (Count x : g.x)
          cells.push_back({make_check(id, {{"b", b}}, x, std::nullopt),
                              [=](IdentityCheck& c) {
            c.expected = yule_pmf(x, YuleParams(b));
            absorb(c, yule_mixture(x, b, spec));
          }});
      break;
    case Identity::kLambdaInvariance:
      for (double r : g.r)
        for (double s : g.s)
          for (double lambda : g.lambda)
            cells.push_back({make_check(id, {{"r", r}, {"s", s}, {"lambda", lambda}},
                                  std::nullopt, r),
                              [=](IdentityCheck& c) {
              const auto direct = lambda_mixing_density(lambda, s, spec);
              c.expected = direct.value;
              c.converged = direct.converged;
              c.evaluations = direct.evaluations;
              absorb(c, lambda_mixing_density_via_r(lambda, r, s, spec));
            }});
      break;
    case Identity::kMoment:
      for (double s : g.s)
        for (Count x : g.x)
          cells.push_back({make_check(id, {{"s", s}}, x, std::nullopt),
                              [=](IdentityCheck& c) {
            c.expected = x == 0 ? 1.0
                                : 1.0 - generalized_harmonic(x, s) / riemann_zeta(s);
            absorb(c, mixing_moment(x, s, spec));
          }});
      break;
    case Identity::kPriorInvariance: {
      if (g.r.empty()) break;
      const auto priors = invariance_priors(g.r);
      for (double s : g.s)
        for (Count x : g.x)
          cells.push_back({make_check(id, {{"s", s}}, x, std::nullopt),
                              [=](IdentityCheck& c) {
            double lo = HUGE_VAL;
            double hi = -HUGE_VAL;
            for (const auto& prior : priors) {
              const auto res = random_r_mixture(x, s, prior, spec);
              lo = std::min(lo, res.value);
              hi = std::max(hi, res.value);
              c.converged = c.converged && res.converged;
              c.evaluations += res.evaluations;
            }
            c.value = hi;
            c.expected = lo;
            c.note = "max vs min over uniform, increasing and decreasing priors";
          }});
      break;
    }
    case Identity::kMgf:
      for (double s : g.s)
        for (double t : g.t)
          cells.push_back({make_check(id, {{"s", s}, {"t", t}}, std::nullopt,
                                std::nullopt),
                              [=](IdentityCheck& c) {
            const auto series = mgf_series_bounded(t, s, 1e-14);
            c.expected = series.value;
            absorb(c, mgf_quadrature(t, s, spec));
          }});
      break;
    case Identity::kGeometricBridge:
      for (double s : g.s)
        for (Count x : g.x)
          cells.push_back({make_check(id, {{"s", s}}, x, std::nullopt),
                              [=](IdentityCheck& c) {
            c.expected = zeta_pmf(x, ZetaParams(s));
            absorb(c, geometric_bridge(x + 1, s, spec));
          }});
      break;
  }
  return cells;
}

}  // namespace

std::size_t VerificationGrid::cell_count() const {
  std::size_t n = 0;
  const QuadratureSpec spec;
  for (const auto& g : identities) n += enumerate_cells(g, spec).size();
  return n;
}

bool VerificationReport::all_passed() const noexcept {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return c.passed; });
}

std::string report_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') now = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

VerificationReport run_verification_grid(const VerificationGrid& grid,
                                         const QuadratureSpec& spec,
                                         const RunOptions& options) {
  spec.validate();
  std::vector<Cell> cells;
  for (const auto& g : grid.identities) {
    auto more = enumerate_cells(g, spec);
    cells.insert(cells.end(), std::make_move_iterator(more.begin()),
                 std::make_move_iterator(more.end()));
  }
  if (cells.empty()) throw DomainError("run_verification_grid: empty grid");

  std::vector<IdentityCheck> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      IdentityCheck c = cells[i].header;
      try {
        cells[i].run(c);
        finalize_check(c);
        if (!c.converged && c.note.empty()) {
          c.note = "quadrature reported non-convergence";
        }
      } catch (const ConvergenceError& e) {
        c.value = e.estimate();
        finalize_check(c);
        c.converged = false;
        c.passed = false;
        c.note = e.what();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        abort.store(true);
        return;
      }
      results[i] = std::move(c);
    }
  };

  std::size_t threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, cells.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  VerificationReport report;
  report.checks = std::move(results);
  report.grid = grid;
  report.timestamp = report_timestamp();
  report.tool_version = kVersion;
  return report;
}

}  // namespace zetamix
