#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "zetamix/quadrature.hpp"

namespace zetamix {

/// Public density evaluators reject p outside [kMinProbability, kMaxProbability].
inline constexpr double kMinProbability = 1e-12;
inline constexpr double kMaxProbability = 1.0 - 1e-12;

enum class MixingDensityTag {
  kR1Closed,       // r = 1, closed form
  kR2Closed,       // r = 2, closed form
  kRGt1Integral,   // r > 1, single inner integral
  kRLt1Quasi,      // 0 < r < 1, signed quasi-density
  kGammaTransform, // gamma = 1/p under r = 1
  kLambdaMixing,   // Poisson rate mixing density
};

std::string_view to_string(MixingDensityTag tag);

/// Tagged selector with the tag/r consistency rules enforced on construction.
class MixingDensityKind {
 public:
  static MixingDensityKind r1_closed(double s);
  static MixingDensityKind r2_closed(double s);
  static MixingDensityKind r_gt1_integral(double r, double s);
  static MixingDensityKind r_lt1_quasi(double r, double s);
  static MixingDensityKind gamma_transform(double s);
  static MixingDensityKind lambda_mixing(double s);
  /// The NB(r, p) mixing density over p: closed forms at r = 1 and r = 2,
  /// the integral form for other r > 1, the quasi form for r < 1.
  static MixingDensityKind for_nb_shape(double r, double s);

  MixingDensityTag tag() const noexcept { return tag_; }
  /// NB shape; empty for kGammaTransform and kLambdaMixing.
  std::optional<double> r() const noexcept { return r_; }
  double s() const noexcept { return s_; }
  /// True for the densities over p in (0, 1).
  bool over_probability() const noexcept;

  /// Density at `point` (p, gamma or lambda depending on the tag).
  double evaluate(double point, const QuadratureSpec& spec = {}) const;

 private:
  MixingDensityKind(MixingDensityTag tag, std::optional<double> r, double s);

  MixingDensityTag tag_;
  std::optional<double> r_;
  double s_;
};

/// (-ln p)^{s-1} / (zeta(s) Gamma(s) (1-p)).
double mixing_pdf_r1(double p, double s);

/// (-ln p)^s / (zeta(s) Gamma(s+1) (1-p)^2).
double mixing_pdf_r2_closed(double p, double s);

/// (r-1) / (zeta(s) Gamma(s) (1-p)^r) * int_p^1 (w-p)^{r-2} (-ln w)^{s-1} / w^{r-1} dw.
/// Throws ConvergenceError if the inner integral does not converge.
double mixing_pdf_r_gt1(double p, double r, double s,
                        const QuadratureSpec& spec = {});

/// Signed density for 0 < r < 1: the (s-1) and (r-1) inner integrals are
/// evaluated separately and combined in extended precision. Negative near 0.
double mixing_quasi_pdf_r_lt1(double p, double r, double s,
                              const QuadratureSpec& spec = {});

/// (ln g)^{s-1} / (zeta(s) Gamma(s) g (g-1)) for g > 1.
double gamma_transform_pdf(double gamma, double s);

/// (1/(zeta(s) Gamma(s))) int_0^inf ln(y+1)^{s-1} / (y+1) e^{-lambda y} dy.
double lambda_mixing_pdf(double lambda, double s,
                         const QuadratureSpec& spec = {});

/// int_0^1 Gamma(lambda; r, (1-p)/p) f_{p|r,s}(p) dp for r >= 1. The result
/// does not depend on r.
double lambda_mixing_pdf_via_r(double lambda, double r, double s,
                               const QuadratureSpec& spec = {});

/// lambda_mixing_pdf and lambda_mixing_pdf_via_r with quadrature diagnostics
/// instead of a ConvergenceError.
QuadratureResult lambda_mixing_density(double lambda, double s,
                                       const QuadratureSpec& spec = {});
QuadratureResult lambda_mixing_density_via_r(double lambda, double r, double s,
                                             const QuadratureSpec& spec = {});

/// Integral of a mixing density over its whole domain (signed for the quasi
/// density).
QuadratureResult mixing_density_integral(const MixingDensityKind& kind,
                                         const QuadratureSpec& spec = {});

struct SignChange {
  double p_star = 0.0;
  double value_at_root = 0.0;
  /// Number of sign changes seen on the probe grid. Only the first (smallest
  /// p) is refined; more than one is reported, not hidden.
  std::size_t bracket_count = 0;
  std::size_t iterations = 0;
};

/// Locates where the quasi density turns from negative to positive by probe
/// bracketing and bisection. Throws ConvergenceError when no bracket exists.
SignChange find_sign_change(double r, double s, const QuadratureSpec& spec = {});

struct QuasiMass {
  double signed_integral = 0.0;
  double negative_mass = 0.0;    // int |f| over the region where f < 0
  double total_variation = 0.0;  // int |f|
};

/// Reporting helper: total variation of the quasi density, assuming the
/// single crossing located by find_sign_change.
QuasiMass quasi_mass(double r, double s, const QuadratureSpec& spec = {});

}  // namespace zetamix
