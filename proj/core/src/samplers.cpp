#include "zetamix/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "format.hpp"
#include "zetamix/errors.hpp"
#include "zetamix/special_functions.hpp"

namespace zetamix {

namespace {

constexpr std::size_t kMaxTable = std::size_t{1} << 16;

void require_sampler_args(double s, std::size_t n, const char* where) {
  if (!std::isfinite(s) || !(s > 1.0)) {
    throw DomainError(std::string(where) + ": requires s > 1, got s=" +
                      detail::fmt(s));
  }
  if (n < 1) throw DomainError(std::string(where) + ": requires n >= 1");
}

std::seed_seq make_seed_seq(const SeededStream& stream) {
  return std::seed_seq{
      static_cast<std::uint32_t>(stream.seed),
      static_cast<std::uint32_t>(stream.seed >> 32),
      static_cast<std::uint32_t>(stream.stream_id),
      static_cast<std::uint32_t>(stream.stream_id >> 32),
  };
}

// k-th term of the Stirling series for ln Gamma(k+1) beyond the leading part.
double stirling_correction(double k) {
  const double inv = 1.0 / k;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

// ln Poisson(k; lambda), stable for huge lambda.
double log_poisson_term(double k, double lambda) {
  if (k < 10.0) {
    return -lambda + k * std::log(lambda) - log_gamma(k + 1.0);
  }
  const double d = k - lambda;
  return d - k * std::log1p(d / lambda) -
         0.5 * std::log(2.0 * std::numbers::pi * k) - stirling_correction(k);
}

// Ratio of the Zeta(s) mass at 1-based rank k to the discretised Pareto
// proposal mass at k, up to a constant. Decreasing in k.
double tail_ratio(double k, double s) {
  return 1.0 / (k * -std::expm1((1.0 - s) * std::log1p(1.0 / k)));
}

// Y ~ -ln p under the r = 1 mixing density.
double draw_neg_log_p(const ZetaSampler& zeta, RandomStream& rng, double s) {
  const double k = zeta.draw(rng);
  return rng.gamma(s) / (k + 1.0);
}

}  // namespace

RandomStream::RandomStream(const SeededStream& stream) {
  auto seq = make_seed_seq(stream);
  engine_.seed(seq);
}

double RandomStream::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() { return -std::log(uniform()); }

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double RandomStream::gamma(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw DomainError("RandomStream::gamma: requires shape > 0");
  }
  if (shape < 1.0) {
    return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomStream::poisson(double lambda) {
  if (!(lambda >= 0.0) || std::isnan(lambda)) {
    throw DomainError("RandomStream::poisson: requires lambda >= 0");
  }
  if (lambda == 0.0) return 0.0;
  if (std::isinf(lambda)) return lambda;
  if (lambda < 10.0) {
    double k = 0.0;
    double term = std::exp(-lambda);
    double cdf = term;
    const double u = uniform();
    while (u > cdf && term > 0.0) {
      k += 1.0;
      term *= lambda / k;
      cdf += term;
    }
    return k;
  }
  const double slam = std::sqrt(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        log_poisson_term(k, lambda)) {
      return k;
    }
  }
}

Count saturate_count(double x) {
  constexpr double kLimit = 18446744073709551616.0;  // 2^64
  if (!(x >= 0.0)) return 0;
  if (x >= kLimit) return std::numeric_limits<Count>::max();
  return static_cast<Count>(x);
}

ZetaSampler::ZetaSampler(double s, double table_tail_mass) : s_(s) {
  const ZetaParams params(s);
  if (!(table_tail_mass > 0.0 && table_tail_mass < 1.0)) {
    throw DomainError("ZetaSampler: table tail mass must lie in (0, 1)");
  }
  // Only search for the truncation point when it can fall inside the table;
  // for s near 1 it is astronomically large.
  std::size_t size = kMaxTable;
  if (zeta_survival(static_cast<Count>(kMaxTable - 1), params) < table_tail_mass) {
    size = static_cast<std::size_t>(zeta_truncation_point(params, table_tail_mass) + 1);
  }
  cdf_.resize(size);
  long double acc = 0.0L;
  const long double zeta = params.zeta_s();
  for (std::size_t i = 0; i < size; ++i) {
    acc += std::pow(static_cast<long double>(i + 1), -static_cast<long double>(s));
    cdf_[i] = static_cast<double>(acc / zeta);
  }
  tail_mass_ = zeta_survival(static_cast<Count>(size - 1), params);
  // Keep the table consistent with the exact tail mass.
  const double bulk = 1.0 - tail_mass_;
  for (auto& v : cdf_) v = std::min(v, bulk);
  cdf_.back() = bulk;
  tail_start_ = static_cast<double>(size + 1);
  g_tail_start_ = tail_ratio(tail_start_, s_);
}

double ZetaSampler::tail_draw(RandomStream& rng) const {
  const double exponent = -1.0 / (s_ - 1.0);
  for (;;) {
    const double y = tail_start_ * std::pow(rng.uniform(), exponent);
    const double k = std::floor(y);
    if (!std::isfinite(k)) return k;
    if (rng.uniform() * g_tail_start_ <= tail_ratio(k, s_)) return k - 1.0;
  }
}

double ZetaSampler::draw(RandomStream& rng) const {
  const double u = rng.uniform();
  if (u >= cdf_.back()) return tail_draw(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<double>(it - cdf_.begin());
}

std::vector<Count> sample_zeta_direct(double s, std::size_t n,
                                      const SeededStream& stream) {
  require_sampler_args(s, n, "sample_zeta_direct");
  const ZetaSampler zeta(s);
  RandomStream rng(stream);
  std::vector<Count> out(n);
  for (auto& v : out) v = zeta(rng);
  return out;
}

std::vector<double> sample_mixing_p_r1(double s, std::size_t n,
                                       const SeededStream& stream) {
  require_sampler_args(s, n, "sample_mixing_p_r1");
  const ZetaSampler zeta(s);
  RandomStream rng(stream);
  constexpr double kBelowOne = 1.0 - 0x1.0p-53;
  std::vector<double> out(n);
  for (auto& p : out) {
    p = std::exp(-draw_neg_log_p(zeta, rng, s));
    p = std::clamp(p, std::numeric_limits<double>::denorm_min(), kBelowOne);
  }
  return out;
}

std::vector<Count> sample_zeta_via_geometric_chain(double s, std::size_t n,
                                                   const SeededStream& stream) {
  require_sampler_args(s, n, "sample_zeta_via_geometric_chain");
  const ZetaSampler zeta(s);
  RandomStream rng(stream);
  std::vector<Count> out(n);
  for (auto& v : out) {
    const double y = draw_neg_log_p(zeta, rng, s);
    // Geometric(p) with P(X = x) = p^x (1-p) is floor(E / -ln p).
    v = saturate_count(std::floor(rng.exponential() / y));
  }
  return out;
}

std::vector<Count> sample_zeta_via_poisson_chain(double s, std::size_t n,
                                                 const SeededStream& stream) {
  require_sampler_args(s, n, "sample_zeta_via_poisson_chain");
  const ZetaSampler zeta(s);
  RandomStream rng(stream);
  std::vector<Count> out(n);
  for (auto& v : out) {
    const double y = draw_neg_log_p(zeta, rng, s);
    // rate (1-p)/p = expm1(y)
    const double lambda = rng.exponential() / std::expm1(y);
    v = saturate_count(rng.poisson(lambda));
  }
  return out;
}

namespace {

std::vector<std::pair<Count, std::uint64_t>> run_lengths(
    const std::vector<Count>& samples) {
  std::vector<Count> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<Count, std::uint64_t>> out;
  for (Count v : sorted) {
    if (!out.empty() && out.back().first == v) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

void require_fit_args(const std::vector<Count>& samples, double eps) {
  if (samples.empty()) throw DomainError("fit_against_zeta: empty sample");
  if (!(eps > 0.0 && eps < 0.01)) {
    throw DomainError("fit_against_zeta: requires 0 < eps < 0.01, got eps=" +
                      detail::fmt(eps));
  }
}

}  // namespace

FitSummary fit_against_zeta(const std::vector<Count>& samples, double s,
                            double eps) {
  require_fit_args(samples, eps);
  const ZetaParams params(s);
  const Count cut = zeta_truncation_point(params, eps);
  const double n = static_cast<double>(samples.size());
  const double tail = zeta_survival(cut, params);

  long double abs_sum = 0.0L;
  long double seen_mass = 0.0L;
  long double chi = 0.0L;
  std::uint64_t tail_count = 0;
  for (const auto& [x, count] : run_lengths(samples)) {
    if (x > cut) {
      tail_count += count;
      continue;
    }
    const double pmf = zeta_pmf(x, params);
    const double emp = static_cast<double>(count) / n;
    abs_sum += std::abs(static_cast<long double>(emp) - pmf);
    seen_mass += pmf;
    chi += static_cast<long double>(count) * count / (n * pmf);
  }
  const long double unseen =
      std::max(0.0L, static_cast<long double>(1.0 - tail) - seen_mass);
  const double emp_tail = static_cast<double>(tail_count) / n;
  abs_sum += unseen + std::abs(static_cast<long double>(emp_tail) - tail);
  if (tail_count > 0) {
    chi += static_cast<long double>(tail_count) * tail_count / (n * tail);
  }

  FitSummary out;
  out.n = samples.size();
  out.tv_distance = std::clamp(static_cast<double>(0.5L * abs_sum), 0.0, 1.0);
  out.chi_square = static_cast<double>(chi - n);
  out.truncation_point = cut;
  out.dof = cut + 1;
  return out;
}

std::vector<FitRow> fit_table(const std::vector<Count>& samples, double s,
                              double eps, Count max_x) {
  require_fit_args(samples, eps);
  const ZetaParams params(s);
  const Count last = std::min(zeta_truncation_point(params, eps), max_x);
  const double n = static_cast<double>(samples.size());
  std::map<Count, std::uint64_t> counts;
  for (Count v : samples) {
    if (v <= last) ++counts[v];
  }
  std::vector<FitRow> rows;
  for (Count x = 0; x <= last; ++x) {
    FitRow row;
    row.x = x;
    const auto it = counts.find(x);
    row.count = it == counts.end() ? 0 : it->second;
    row.expected = n * zeta_pmf(x, params);
    row.abs_err = std::abs(static_cast<double>(row.count) - row.expected);
    rows.push_back(row);
  }
  return rows;
}

double empirical_tv(const std::vector<Count>& a, const std::vector<Count>& b,
                    Count pool_from) {
  if (a.empty() || b.empty()) throw DomainError("empirical_tv: empty sample");
  std::map<Count, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (Count v : a) ++counts[std::min(v, pool_from)].first;
  for (Count v : b) ++counts[std::min(v, pool_from)].second;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  long double sum = 0.0L;
  for (const auto& [x, c] : counts) {
    sum += std::abs(static_cast<double>(c.first) / na -
                    static_cast<double>(c.second) / nb);
  }
  return static_cast<double>(0.5L * sum);
}

}  // namespace zetamix
