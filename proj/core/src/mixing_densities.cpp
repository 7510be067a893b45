#include "zetamix/mixing_densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "density_kernels.hpp"
#include "format.hpp"
#include "zetamix/errors.hpp"
#include "zetamix/special_functions.hpp"

namespace zetamix {

namespace {

// Inner integrals run this much tighter than the caller's spec so that their
// error stays invisible in the outer quadrature.
constexpr double kInnerTightening = 0.01;

void require_s(double s, const char* where) {
  if (!std::isfinite(s) || !(s > 1.0)) {
    throw DomainError(std::string(where) + ": requires s > 1, got s=" +
                      detail::fmt(s));
  }
}

void require_probability(double p, const char* where) {
  if (!(p >= kMinProbability && p <= kMaxProbability)) {
    throw DomainError(std::string(where) +
                      ": requires 1e-12 <= p <= 1 - 1e-12, got p=" +
                      detail::fmt(p));
  }
}

// (1 - e^{-z}) / z
double phi(double z) {
  if (z < 1e-8) return 1.0 - 0.5 * z;
  return -std::expm1(-z) / z;
}

void require_converged(const QuadratureResult& res, const std::string& what) {
  if (!res.converged) {
    throw ConvergenceError(what + ": quadrature did not converge", res.value,
                           res.error_estimate);
  }
}

}  // namespace

namespace detail {

double log_normalizer(double s) {
  return std::log(riemann_zeta(s)) + log_gamma(s);
}

PDensity::PDensity(const MixingDensityKind& kind, const QuadratureSpec& inner)
    : tag_(kind.tag()),
      r_(kind.r().value_or(1.0)),
      s_(kind.s()),
      log_norm_(log_normalizer(kind.s())),
      inner_(inner) {
  if (!kind.over_probability()) {
    throw DomainError("PDensity: kind is not a density over p");
  }
}

double PDensity::operator()(const ProbabilityPoint& pt,
                            std::size_t* evals) const {
  const double log_y = std::log(pt.y);
  const double log_q = std::log(pt.q);
  switch (tag_) {
    case MixingDensityTag::kR1Closed:
      return std::exp((s_ - 1.0) * log_y - log_q - log_norm_);
    case MixingDensityTag::kR2Closed:
      return std::exp(s_ * log_y - 2.0 * log_q - log_norm_ - std::log(s_));
    case MixingDensityTag::kRGt1Integral: {
      // int_p^1 (w-p)^{r-2} (-ln w)^{s-1} w^{1-r} dw
      //   = y^{r+s-2} int_0^1 u^{r-2} (1-u)^{s-1} phi(y u)^{r-2} du
      const double y = pt.y;
      const double power = r_ - 2.0;
      const auto inner = integrate_beta_weighted(
          [&](double u, double) {
            return power == 0.0 ? 1.0 : std::pow(phi(y * u), power);
          },
          r_ - 1.0, s_, inner_);
      if (evals) *evals += inner.evaluations;
      require_converged(inner, "mixing density (r > 1) inner integral");
      return std::exp(std::log(r_ - 1.0) + (r_ + s_ - 2.0) * log_y -
                      r_ * log_q - log_norm_) *
             inner.value;
    }
    case MixingDensityTag::kRLt1Quasi: {
      // int_p^1 (w-p)^{r-1} (-ln w)^{s-k} w^{-r} dw
      //   = y^{r+s-k} int_0^1 u^{r-1} (1-u)^{s-k} phi(y u)^{r-1} du
      const double y = pt.y;
      auto g = [&](double u, double) { return std::pow(phi(y * u), r_ - 1.0); };
      const auto first = integrate_beta_weighted(g, r_, s_ - 1.0, inner_);
      const auto second = integrate_beta_weighted(g, r_, s_, inner_);
      if (evals) *evals += first.evaluations + second.evaluations;
      require_converged(first, "quasi density (s-1) integral");
      require_converged(second, "quasi density (r-1) integral");
      const long double bracket =
          static_cast<long double>(s_ - 1.0) * first.value +
          static_cast<long double>(r_ - 1.0) * y * second.value;
      const double prefactor =
          std::exp((r_ + s_ - 2.0) * log_y - r_ * log_q - log_norm_);
      return static_cast<double>(prefactor * bracket);
    }
    default:
      break;
  }
  throw DomainError("PDensity: unsupported tag");
}

double log_gamma_kernel(double lambda, double r, const ProbabilityPoint& pt) {
  const double rate = std::expm1(pt.y);
  if (!std::isfinite(rate)) return -std::numeric_limits<double>::infinity();
  return r * std::log(rate) + (r - 1.0) * std::log(lambda) - rate * lambda -
         log_gamma(r);
}

QuadratureResult lambda_mixing_integral(double lambda, double s,
                                        double log_norm,
                                        const QuadratureSpec& spec) {
  const QuadratureSpec half = spec.scaled(0.5);
  // Split at c = min(1, 1/lambda) so the exponential cutoff never hides
  // inside a single panel.
  const double c = std::min(1.0, 1.0 / lambda);
  // y = c u on (0, 1]: y^{s-1} dy = c^s u^{s-1} du. Tolerances apply to the
  // rescaled integral, which keeps the density accurate relative to its size.
  const double log_c_pow = s * std::log(c);
  const double c_pow = std::exp(log_c_pow);
  auto near = integrate_beta_weighted(
      [&](double u, double) {
        const double y = c * u;
        const double ratio = y == 0.0 ? 1.0 : std::log1p(y) / y;
        return std::exp((s - 1.0) * std::log(ratio) - lambda * y -
                        std::log1p(y));
      },
      s, 1.0, half);
  near.value *= c_pow;
  near.error_estimate *= c_pow;
  // y = c e^v: a slowly varying plateau up to v ~ ln(1/(lambda c)), then a
  // double-exponential cutoff.
  const double plateau = std::max(1.0, -std::log(lambda * c));
  auto far = integrate_semi_infinite(
      [&](double v) {
        const double y = c * std::exp(v);
        if (!std::isfinite(y) || lambda * y > 800.0) return 0.0;
        const double l = std::log1p(y);
        return std::exp((s - 1.0) * std::log(l) + std::log(y) - l - lambda * y -
                        log_c_pow);
      },
      half, 0.0, plateau);
  far.value *= c_pow;
  far.error_estimate *= c_pow;
  auto total = combine(near, far, half);
  const double scale = std::exp(-log_norm);
  total.value *= scale;
  total.error_estimate *= scale;
  total.converged = near.converged && far.converged &&
                    total.error_estimate <= spec.tolerance_for(total.value);
  return total;
}

double lambda_mixing_value(double lambda, double s, double log_norm,
                           const QuadratureSpec& spec, std::size_t* evals) {
  const auto res = lambda_mixing_integral(lambda, s, log_norm, spec);
  if (evals) *evals += res.evaluations;
  require_converged(res, "lambda mixing density y-integral");
  return res.value;
}

}  // namespace detail

std::string_view to_string(MixingDensityTag tag) {
  switch (tag) {
    case MixingDensityTag::kR1Closed: return "R1_CLOSED";
    case MixingDensityTag::kR2Closed: return "R2_CLOSED";
    case MixingDensityTag::kRGt1Integral: return "R_GT1_INTEGRAL";
    case MixingDensityTag::kRLt1Quasi: return "R_LT1_QUASI";
    case MixingDensityTag::kGammaTransform: return "GAMMA_TRANSFORM";
    case MixingDensityTag::kLambdaMixing: return "LAMBDA_MIXING";
  }
  return "UNKNOWN";
}

MixingDensityKind::MixingDensityKind(MixingDensityTag tag,
                                     std::optional<double> r, double s)
    : tag_(tag), r_(r), s_(s) {
  require_s(s, "MixingDensityKind");
  if (r && (!std::isfinite(*r) || !(*r > 0.0))) {
    throw DomainError("MixingDensityKind: requires r > 0");
  }
}

MixingDensityKind MixingDensityKind::r1_closed(double s) {
  return {MixingDensityTag::kR1Closed, 1.0, s};
}

MixingDensityKind MixingDensityKind::r2_closed(double s) {
  return {MixingDensityTag::kR2Closed, 2.0, s};
}

MixingDensityKind MixingDensityKind::r_gt1_integral(double r, double s) {
  if (!(r > 1.0) || !std::isfinite(r)) {
    throw DomainError("R_GT1_INTEGRAL: requires r > 1, got r=" +
                      detail::fmt(r));
  }
  return {MixingDensityTag::kRGt1Integral, r, s};
}

MixingDensityKind MixingDensityKind::r_lt1_quasi(double r, double s) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("R_LT1_QUASI: requires 0 < r < 1, got r=" +
                      detail::fmt(r));
  }
  return {MixingDensityTag::kRLt1Quasi, r, s};
}

MixingDensityKind MixingDensityKind::gamma_transform(double s) {
  return {MixingDensityTag::kGammaTransform, std::nullopt, s};
}

MixingDensityKind MixingDensityKind::lambda_mixing(double s) {
  return {MixingDensityTag::kLambdaMixing, std::nullopt, s};
}

MixingDensityKind MixingDensityKind::for_nb_shape(double r, double s) {
  if (!std::isfinite(r) || !(r > 0.0)) {
    throw DomainError("mixing density: requires r > 0, got r=" +
                      detail::fmt(r));
  }
  if (r == 1.0) return r1_closed(s);
  if (r == 2.0) return r2_closed(s);
  if (r > 1.0) return r_gt1_integral(r, s);
  return r_lt1_quasi(r, s);
}

bool MixingDensityKind::over_probability() const noexcept {
  return tag_ != MixingDensityTag::kGammaTransform &&
         tag_ != MixingDensityTag::kLambdaMixing;
}

double MixingDensityKind::evaluate(double point,
                                   const QuadratureSpec& spec) const {
  switch (tag_) {
    case MixingDensityTag::kR1Closed: return mixing_pdf_r1(point, s_);
    case MixingDensityTag::kR2Closed: return mixing_pdf_r2_closed(point, s_);
    case MixingDensityTag::kRGt1Integral:
      return mixing_pdf_r_gt1(point, *r_, s_, spec);
    case MixingDensityTag::kRLt1Quasi:
      return mixing_quasi_pdf_r_lt1(point, *r_, s_, spec);
    case MixingDensityTag::kGammaTransform:
      return gamma_transform_pdf(point, s_);
    case MixingDensityTag::kLambdaMixing:
      return lambda_mixing_pdf(point, s_, spec);
  }
  throw DomainError("MixingDensityKind: unknown tag");
}

double mixing_pdf_r1(double p, double s) {
  require_s(s, "mixing_pdf_r1");
  require_probability(p, "mixing_pdf_r1");
  return detail::PDensity(MixingDensityKind::r1_closed(s), {})(
      detail::ProbabilityPoint::from_p(p));
}

double mixing_pdf_r2_closed(double p, double s) {
  require_s(s, "mixing_pdf_r2_closed");
  require_probability(p, "mixing_pdf_r2_closed");
  return detail::PDensity(MixingDensityKind::r2_closed(s), {})(
      detail::ProbabilityPoint::from_p(p));
}

double mixing_pdf_r_gt1(double p, double r, double s,
                        const QuadratureSpec& spec) {
  require_probability(p, "mixing_pdf_r_gt1");
  const auto kind = MixingDensityKind::r_gt1_integral(r, s);
  return detail::PDensity(kind, spec)(detail::ProbabilityPoint::from_p(p));
}

double mixing_quasi_pdf_r_lt1(double p, double r, double s,
                              const QuadratureSpec& spec) {
  require_probability(p, "mixing_quasi_pdf_r_lt1");
  const auto kind = MixingDensityKind::r_lt1_quasi(r, s);
  return detail::PDensity(kind, spec)(detail::ProbabilityPoint::from_p(p));
}

double gamma_transform_pdf(double gamma, double s) {
  require_s(s, "gamma_transform_pdf");
  if (!std::isfinite(gamma) || !(gamma > 1.0)) {
    throw DomainError("gamma_transform_pdf: requires gamma > 1, got gamma=" +
                      detail::fmt(gamma));
  }
  const double log_g = std::log(gamma);
  return std::exp((s - 1.0) * std::log(log_g) - log_g - std::log(gamma - 1.0) -
                  detail::log_normalizer(s));
}

QuadratureResult lambda_mixing_density(double lambda, double s,
                                       const QuadratureSpec& spec) {
  require_s(s, "lambda_mixing_pdf");
  if (!std::isfinite(lambda) || !(lambda > 0.0)) {
    throw DomainError("lambda_mixing_pdf: requires lambda > 0, got lambda=" +
                      detail::fmt(lambda));
  }
  return detail::lambda_mixing_integral(lambda, s, detail::log_normalizer(s),
                                        spec);
}

double lambda_mixing_pdf(double lambda, double s, const QuadratureSpec& spec) {
  const auto res = lambda_mixing_density(lambda, s, spec);
  require_converged(res, "lambda_mixing_pdf");
  return res.value;
}

QuadratureResult lambda_mixing_density_via_r(double lambda, double r, double s,
                                             const QuadratureSpec& spec) {
  require_s(s, "lambda_mixing_pdf_via_r");
  if (!std::isfinite(lambda) || !(lambda > 0.0)) {
    throw DomainError("lambda_mixing_pdf_via_r: requires lambda > 0, got lambda=" +
                      detail::fmt(lambda));
  }
  if (!std::isfinite(r) || !(r >= 1.0)) {
    throw DomainError("lambda_mixing_pdf_via_r: requires r >= 1, got r=" +
                      detail::fmt(r));
  }
  const detail::PDensity density(MixingDensityKind::for_nb_shape(r, s),
                                 spec.scaled(kInnerTightening));
  std::size_t inner_evals = 0;
  auto res = integrate_semi_infinite_algebraic(
      [&](double y) {
        const auto pt = detail::ProbabilityPoint::from_neg_log(y);
        const double kernel = std::exp(detail::log_gamma_kernel(lambda, r, pt));
        if (kernel == 0.0) return 0.0;
        return kernel * density(pt, &inner_evals) * pt.p;
      },
      r + s - 1.0, spec);
  res.evaluations += inner_evals;
  return res;
}

double lambda_mixing_pdf_via_r(double lambda, double r, double s,
                               const QuadratureSpec& spec) {
  const auto res = lambda_mixing_density_via_r(lambda, r, s, spec);
  require_converged(res, "lambda_mixing_pdf_via_r");
  return res.value;
}

QuadratureResult mixing_density_integral(const MixingDensityKind& kind,
                                         const QuadratureSpec& spec) {
  const double s = kind.s();
  if (kind.over_probability()) {
    const detail::PDensity density(kind, spec.scaled(kInnerTightening));
    std::size_t inner_evals = 0;
    auto res = integrate_semi_infinite_algebraic(
        [&](double y) {
          const auto pt = detail::ProbabilityPoint::from_neg_log(y);
          return density(pt, &inner_evals) * pt.p;
        },
        s - 1.0, spec);
    res.evaluations += inner_evals;
    return res;
  }
  const double log_norm = detail::log_normalizer(s);
  if (kind.tag() == MixingDensityTag::kGammaTransform) {
    // gamma = e^y
    return integrate_semi_infinite_algebraic(
        [&](double y) {
          return std::exp((s - 1.0) * std::log(y) - std::log(std::expm1(y)) -
                          log_norm);
        },
        s - 1.0, spec);
  }
  // lambda = e^{+t} and e^{-t}
  const QuadratureSpec inner = spec.scaled(kInnerTightening);
  const QuadratureSpec half = spec.scaled(0.5);
  std::size_t inner_evals = 0;
  auto value_at = [&](double lambda) {
    return detail::lambda_mixing_value(lambda, s, log_norm, inner, &inner_evals);
  };
  const auto upper = integrate_semi_infinite(
      [&](double t) {
        const double lambda = std::exp(t);
        return std::isfinite(lambda) ? value_at(lambda) * lambda : 0.0;
      },
      half);
  const auto lower = integrate_semi_infinite(
      [&](double t) {
        const double lambda = std::exp(-t);
        return lambda > 0.0 ? value_at(lambda) * lambda : 0.0;
      },
      half);
  auto res = combine(upper, lower, spec);
  res.evaluations += inner_evals;
  return res;
}

SignChange find_sign_change(double r, double s, const QuadratureSpec& spec) {
  const auto kind = MixingDensityKind::r_lt1_quasi(r, s);
  const detail::PDensity density(kind, spec);
  auto f = [&](double p) {
    return density(detail::ProbabilityPoint::from_p(p));
  };

  std::vector<double> grid;
  for (int k = 0; k <= 44; ++k) grid.push_back(std::pow(10.0, -12.0 + 0.25 * k));
  for (int k = 1; k <= 40; ++k) grid.push_back(0.1 + 0.0225 * k);

  SignChange out;
  double lo = 0.0;
  double hi = 0.0;
  double prev = f(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    if ((prev < 0.0) != (cur < 0.0)) {
      if (out.bracket_count == 0) {
        if (!(prev < 0.0)) {
          throw ConvergenceError(
              "find_sign_change: first crossing is positive-to-negative", 0.0,
              0.0);
        }
        lo = grid[i - 1];
        hi = grid[i];
      }
      ++out.bracket_count;
    }
    prev = cur;
  }
  if (out.bracket_count == 0) {
    throw ConvergenceError("find_sign_change: no sign change on probe grid",
                           0.0, 0.0);
  }

  double mid = 0.5 * (lo + hi);
  double value = f(mid);
  constexpr std::size_t kMaxIterations = 200;
  for (std::size_t it = 0; it < kMaxIterations; ++it) {
    out.iterations = it + 1;
    mid = hi / lo > 2.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    value = f(mid);
    if (value < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::abs(value) <= spec.abs_tol || hi - lo <= 4e-16 * hi) break;
  }
  out.p_star = mid;
  out.value_at_root = value;
  return out;
}

QuasiMass quasi_mass(double r, double s, const QuadratureSpec& spec) {
  const auto kind = MixingDensityKind::r_lt1_quasi(r, s);
  const auto root = find_sign_change(r, s, spec);
  const auto signed_res = mixing_density_integral(kind, spec);
  require_converged(signed_res, "quasi_mass signed integral");

  const detail::PDensity density(kind, spec.scaled(kInnerTightening));
  const auto negative = integrate_semi_infinite(
      [&](double y) {
        const auto pt = detail::ProbabilityPoint::from_neg_log(y);
        return std::abs(density(pt)) * pt.p;
      },
      spec, -std::log(root.p_star), 1.0);
  require_converged(negative, "quasi_mass negative region");

  QuasiMass out;
  out.signed_integral = signed_res.value;
  out.negative_mass = negative.value;
  out.total_variation = signed_res.value + 2.0 * negative.value;
  return out;
}

}  // namespace zetamix
