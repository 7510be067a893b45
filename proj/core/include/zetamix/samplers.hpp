#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "zetamix/distributions.hpp"

namespace zetamix {

/// Identifies an independent random stream. Identical (seed, stream_id)
/// pairs reproduce identical sequences.
struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Variate generator over one stream. Not thread-safe; give each thread its
/// own stream_id.
class RandomStream {
 public:
  explicit RandomStream(const SeededStream& stream);

  /// Uniform on the open interval (0, 1).
  double uniform();
  double exponential();
  double normal();
  /// Gamma(shape, 1): Marsaglia-Tsang squeeze for shape >= 1, boosted with
  /// U^{1/shape} below that.
  double gamma(double shape);
  /// Poisson(lambda): inversion below 10, Hormann's PTRS above. Returned as a
  /// double so that huge rates keep their magnitude.
  double poisson(double lambda);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Converts a nonnegative real count to Count, saturating at the maximum.
Count saturate_count(double x);

/// Zeta(s) on {0,1,...}: a cumulative table covers the bulk and the tail
/// beyond it is drawn exactly by rejection from a discretised Pareto.
class ZetaSampler {
 public:
  /// Table capped at 2^16 entries.
  explicit ZetaSampler(double s, double table_tail_mass = 1e-9);

  double s() const noexcept { return s_; }
  std::size_t table_size() const noexcept { return cdf_.size(); }
  /// Probability that a draw falls beyond the table.
  double tail_mass() const noexcept { return tail_mass_; }

  /// A draw kept in double precision.
  double draw(RandomStream& rng) const;
  Count operator()(RandomStream& rng) const { return saturate_count(draw(rng)); }

 private:
  double tail_draw(RandomStream& rng) const;

  double s_;
  std::vector<double> cdf_;
  double tail_mass_;
  double tail_start_;  // first 1-based rank outside the table
  double g_tail_start_;
};

/// i.i.d. Zeta(s) draws.
std::vector<Count> sample_zeta_direct(double s, std::size_t n,
                                      const SeededStream& stream);

/// Draws from the r = 1 mixing density: K ~ Zeta(s), Y ~ Gamma(s, rate K+1),
/// p = e^{-Y}.
std::vector<double> sample_mixing_p_r1(double s, std::size_t n,
                                       const SeededStream& stream);

/// p from the r = 1 mixing density, then a Geometric(p) count.
std::vector<Count> sample_zeta_via_geometric_chain(double s, std::size_t n,
                                                   const SeededStream& stream);

/// p from the r = 1 mixing density, lambda ~ Exponential(rate (1-p)/p), then
/// a Poisson(lambda) count.
std::vector<Count> sample_zeta_via_poisson_chain(double s, std::size_t n,
                                                 const SeededStream& stream);

struct FitSummary {
  std::size_t n = 0;
  double tv_distance = 0.0;
  double chi_square = 0.0;
  Count dof = 0;
  Count truncation_point = 0;
};

/// Compares samples with Zeta(s) over {0..X} plus a pooled tail bucket, where
/// X = zeta_truncation_point(s, eps). Requires eps in (0, 0.01).
FitSummary fit_against_zeta(const std::vector<Count>& samples, double s,
                            double eps);

struct FitRow {
  Count x = 0;
  std::uint64_t count = 0;
  double expected = 0.0;  // n * pmf(x)
  double abs_err = 0.0;   // |count - expected|
};

/// One row per x in {0..min(X, max_x)}.
std::vector<FitRow> fit_table(const std::vector<Count>& samples, double s,
                              double eps, Count max_x);

/// Total variation between two empirical PMFs, with every value >= pool_from
/// merged into one bucket.
double empirical_tv(const std::vector<Count>& a, const std::vector<Count>& b,
                    Count pool_from);

}  // namespace zetamix
