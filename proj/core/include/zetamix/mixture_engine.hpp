#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zetamix/distributions.hpp"
#include "zetamix/mixing_densities.hpp"
#include "zetamix/quadrature.hpp"

namespace zetamix {

// ---------------------------------------------------------------------------
// Mixture operator

/// int_0^1 nb_pmf(x; r, p) f_{p|r,s}(p) dp with full quadrature diagnostics.
/// Cells with r < 1 integrate a signed function with an absolute tolerance.
QuadratureResult nb_mixture(Count x, const MixingDensityKind& kind,
                            const QuadratureSpec& spec = {});

/// As nb_mixture for the density selected by for_nb_shape(r, s). Throws
/// ConvergenceError naming (x, r, s) when the quadrature does not converge.
double nb_mixture_pmf(Count x, double r, double s,
                      const QuadratureSpec& spec = {});

/// int_0^inf poisson_pmf(x, lambda) f_{lambda|s}(lambda) dlambda, nested.
QuadratureResult poisson_mixture(Count x, double s,
                                 const QuadratureSpec& spec = {});
double poisson_mixture_pmf(Count x, double s, const QuadratureSpec& spec = {});

/// int_0^inf poisson_pmf(x, lambda) gamma_pdf(lambda; r, (1-p)/p) dlambda.
QuadratureResult gamma_poisson(Count x, double r, double p,
                               const QuadratureSpec& spec = {});
double gamma_poisson_pmf(Count x, double r, double p,
                         const QuadratureSpec& spec = {});

/// int_0^1 p^x (1-p) beta_pdf(p; 1, b) dp.
QuadratureResult yule_mixture(Count x, double b,
                              const QuadratureSpec& spec = {});
double yule_mixture_pmf(Count x, double b, const QuadratureSpec& spec = {});

/// Finite prior over NB shapes r >= 1.
class RPrior {
 public:
  /// Weights must be nonnegative and sum to 1 within 1e-12.
  explicit RPrior(std::vector<std::pair<double, double>> atoms);

  const std::vector<std::pair<double, double>>& atoms() const noexcept {
    return atoms_;
  }

 private:
  std::vector<std::pair<double, double>> atoms_;  // (r, weight)
};

/// sum_i w_i nb_mixture_pmf(x, r_i, s).
QuadratureResult random_r_mixture(Count x, double s, const RPrior& prior,
                                  const QuadratureSpec& spec = {});
double random_r_mixture_pmf(Count x, double s, const RPrior& prior,
                            const QuadratureSpec& spec = {});

/// E[p^x] under the r = 1 mixing density, by quadrature.
QuadratureResult mixing_moment(Count x, double s,
                               const QuadratureSpec& spec = {});

/// E[e^{tp}] under the r = 1 mixing density, by quadrature.
QuadratureResult mgf_quadrature(double t, double s,
                                const QuadratureSpec& spec = {});

struct SeriesValue {
  double value = 0.0;
  std::size_t terms = 0;
  /// Bound on the omitted tail (0 when not tracked).
  double tail_bound = 0.0;
};

/// e^t - sum_{n=1}^{N} t^n/n! H_{n,s}/zeta(s).
SeriesValue mgf_series_harmonic(double t, double s, std::size_t n_terms);

/// sum_{n=0}^{N} t^n/n! zeta(s, n+1)/zeta(s).
SeriesValue mgf_series_hurwitz(double t, double s, std::size_t n_terms);

/// mgf_series_hurwitz truncated where the tail bound
/// t^{N+1}/(N+1)! / (1 - t/(N+2)) drops below tol.
SeriesValue mgf_series_bounded(double t, double s, double tol);

/// int_1^inf g^{-(n-1)} (g-1)/g f_gamma(g) dg, which sums the geometric
/// series back to the Zeta PMF at n - 1. Requires n >= 1.
QuadratureResult geometric_bridge(Count n, double s,
                                  const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Verification

enum class Identity {
  kNbMixture,
  kPoissonMixture,
  kGammaPoisson,
  kYuleMixture,
  kLambdaInvariance,
  kMoment,
  kPriorInvariance,
  kMgf,
  kGeometricBridge,
};

std::string_view to_string(Identity id);
std::optional<Identity> identity_from_string(std::string_view name);
const std::vector<Identity>& all_identities();

struct IdentityCheck {
  std::string identity;
  std::vector<std::pair<std::string, double>> params;
  std::optional<Count> x;
  double value = 0.0;
  double expected = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double abs_threshold = 0.0;
  double rel_threshold = 0.0;
  bool converged = true;
  bool passed = false;
  std::size_t evaluations = 0;
  std::string note;
};

/// Fills abs_err, rel_err and passed from value and expected.
void finalize_check(IdentityCheck& check);

/// Per-identity thresholds: closed-kernel identities 1e-9, single quadrature
/// over an integral density 1e-6, nested or signed quadrature 1e-5.
std::pair<double, double> identity_thresholds(Identity id,
                                              std::optional<double> r,
                                              std::optional<Count> x);

/// One-check-per-x comparison of E[p^x] with 1 - H_{x,s}/zeta(s).
std::vector<IdentityCheck> moment_identity_check(Count x_max, double s,
                                                 const QuadratureSpec& spec = {});

/// Axes for one identity. Only the axes the identity uses are read.
struct IdentityGrid {
  Identity identity;
  std::vector<double> r;
  std::vector<double> s;
  std::vector<double> p;
  std::vector<double> b;
  std::vector<double> lambda;
  std::vector<double> t;
  std::vector<Count> x;
};

struct VerificationGrid {
  std::vector<IdentityGrid> identities;

  /// Every identity on its standard axes (the NB grid is r in
  /// {0.25, 0.5, 0.75, 1, 2, 2.5, 3.7}, s in {1.5, 2, 3}, x in 0..20).
  static VerificationGrid defaults();
  static IdentityGrid default_axes(Identity id);

  std::size_t cell_count() const;
};

struct VerificationReport {
  std::vector<IdentityCheck> checks;
  VerificationGrid grid;
  std::string timestamp;
  std::string tool_version;

  bool all_passed() const noexcept;
};

struct RunOptions {
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

/// Evaluates every cell. A ConvergenceError marks its cell failed with
/// converged = false; a NonFiniteIntegrandError aborts the run. The check
/// order depends only on the grid. Throws DomainError for an empty grid.
VerificationReport run_verification_grid(const VerificationGrid& grid,
                                         const QuadratureSpec& spec = {},
                                         const RunOptions& options = {});

/// UTC ISO-8601 time, taken from SOURCE_DATE_EPOCH when that is set.
std::string report_timestamp();

}  // namespace zetamix
