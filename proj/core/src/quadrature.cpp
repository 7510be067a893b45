#include "zetamix/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "zetamix/errors.hpp"

namespace zetamix {

namespace {

// Kronrod abscissae (positive half) and weights; every other node is a
// 7-point Gauss node.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool splittable;
};

bool worse(const Panel& a, const Panel& b) { return a.error < b.error; }

double checked(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) throw NonFiniteIntegrandError(x, v);
  return v;
}

Panel gauss_kronrod(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double abs_half = std::abs(half);

  // Nodes are rounded to doubles; near a singular end that displacement is a
  // relative error of about |dx_rounding| / distance in f, which the
  // Kronrod/Gauss difference cannot see. It is tracked separately.
  const double inner_lo = std::nextafter(lo, hi);
  const double inner_hi = std::nextafter(hi, lo);
  // First-order effect of each node's displacement, weighted like the rule.
  double rounding_sum = 0.0;
  auto at = [&](long double offset, double weight) {
    const long double ideal = static_cast<long double>(lo) + half + offset;
    const double x = std::min(std::max(static_cast<double>(ideal), inner_lo), inner_hi);
    const double v = checked(f, x);
    const long double gap = std::min(ideal - lo, static_cast<long double>(hi) - ideal);
    if (gap > 0.0L) {
      rounding_sum += weight * std::abs(v) *
                      static_cast<double>(std::abs(static_cast<long double>(x) - ideal) / gap);
    }
    return v;
  };

  std::array<double, 7> left{};
  std::array<double, 7> right{};
  const double fc = at(0.0L, kWgk[7]);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const long double dx = static_cast<long double>(half) * kXgk[j];
    left[j] = at(-dx, kWgk[j]);
    right[j] = at(dx, kWgk[j]);
    const double sum = left[j] + right[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(left[j]) + std::abs(right[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(left[j] - reskh) + std::abs(right[j] - reskh));
  }

  const double value = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  // Once rounding dominates, halving the panel only makes it worse.
  const double rounding_err = rounding_sum * abs_half;
  const bool resolvable = rounding_err <= err;
  err += rounding_err;

  const double mid = center;
  const bool splittable = mid > std::min(lo, hi) && mid < std::max(lo, hi) &&
                          abs_half > 4.0 * kTiny && resolvable;
  return Panel{lo, hi, value, err, splittable};
}

std::vector<double> initial_breakpoints(double lo, double hi,
                                        const QuadratureSpec& spec) {
  const bool left = spec.endpoint_hints.left_singular;
  const bool right = spec.endpoint_hints.right_singular;
  std::vector<double> pts;
  pts.push_back(lo);
  const double mid = 0.5 * (lo + hi);
  const double left_end = right ? mid : hi;
  if (left) {
    const double width = left_end - lo;
    for (std::size_t k = spec.endpoint_depth; k >= 1; --k) {
      pts.push_back(lo + std::ldexp(width, -static_cast<int>(k)));
    }
  }
  if (right) {
    pts.push_back(mid);
    const double width = hi - mid;
    for (std::size_t k = 1; k <= spec.endpoint_depth; ++k) {
      pts.push_back(hi - std::ldexp(width, -static_cast<int>(k)));
    }
  }
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("QuadratureSpec: tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
  }
}

double QuadratureSpec::tolerance_for(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

QuadratureSpec QuadratureSpec::with_hints(bool left_singular,
                                          bool right_singular) const {
  QuadratureSpec out = *this;
  out.endpoint_hints = EndpointHints{left_singular, right_singular};
  return out;
}

QuadratureSpec QuadratureSpec::scaled(double factor) const {
  QuadratureSpec out = *this;
  out.abs_tol *= factor;
  out.rel_tol *= factor;
  return out;
}

QuadratureResult integrate_interval(const Integrand& f, double lo, double hi,
                                    const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("integrate_interval: requires finite lo < hi");
  }

  const auto pts = initial_breakpoints(lo, hi, spec);
  std::vector<Panel> active;
  std::vector<Panel> frozen;
  long double frozen_error = 0.0L;
  active.reserve(std::max<std::size_t>(spec.max_subdivisions, pts.size()) + 2);
  std::size_t evaluations = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    active.push_back(gauss_kronrod(f, pts[i], pts[i + 1]));
    evaluations += 15;
  }
  std::make_heap(active.begin(), active.end(), worse);

  auto totals = [&]() {
    long double v = 0.0L;
    long double e = 0.0L;
    for (const auto& p : active) { v += p.value; e += p.error; }
    for (const auto& p : frozen) { v += p.value; e += p.error; }
    return std::pair<long double, long double>{v, e};
  };

  auto [value, error] = totals();
  std::size_t iterations = 0;
  bool converged = false;
  for (;;) {
    if (static_cast<double>(error) <= spec.tolerance_for(static_cast<double>(value))) {
      converged = true;
      break;
    }
    if (active.empty() ||
        active.size() + frozen.size() >= spec.max_subdivisions) {
      break;
    }
    std::pop_heap(active.begin(), active.end(), worse);
    const Panel worst = active.back();
    active.pop_back();
    if (!worst.splittable) {
      frozen.push_back(worst);
      frozen_error += worst.error;
      // Unresolvable panels alone already exceed the budget: stop refining.
      if (static_cast<double>(frozen_error) >
          spec.tolerance_for(static_cast<double>(value))) {
        break;
      }
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel a = gauss_kronrod(f, worst.lo, mid);
    const Panel b = gauss_kronrod(f, mid, worst.hi);
    evaluations += 30;
    value += static_cast<long double>(a.value) + b.value - worst.value;
    error += static_cast<long double>(a.error) + b.error - worst.error;
    active.push_back(a);
    std::push_heap(active.begin(), active.end(), worse);
    active.push_back(b);
    std::push_heap(active.begin(), active.end(), worse);
    if (++iterations % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();

  QuadratureResult out;
  out.value = static_cast<double>(value);
  out.error_estimate = static_cast<double>(error);
  out.evaluations = evaluations;
  out.converged = converged && out.error_estimate <= spec.tolerance_for(out.value);
  return out;
}

QuadratureResult integrate_unit(const Integrand& f, const QuadratureSpec& spec) {
  return integrate_interval(f, 0.0, 1.0, spec);
}

QuadratureResult integrate_semi_infinite(const Integrand& f,
                                         const QuadratureSpec& spec,
                                         double lower, double scale) {
  if (!std::isfinite(lower) || !(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError(
        "integrate_semi_infinite: requires finite lower and scale > 0");
  }
  auto mapped = [&](double u) {
    const double one_minus_u = 1.0 - u;
    const double y = lower + scale * u / one_minus_u;
    if (!std::isfinite(y)) return 0.0;
    const double v = f(y);
    if (v == 0.0) return 0.0;
    return v * scale / (one_minus_u * one_minus_u);
  };
  return integrate_interval(mapped, 0.0, 1.0, spec);
}

QuadratureResult combine(const QuadratureResult& a, const QuadratureResult& b,
                         const QuadratureSpec& spec) {
  QuadratureResult out;
  out.value = static_cast<double>(static_cast<long double>(a.value) + b.value);
  out.error_estimate = a.error_estimate + b.error_estimate;
  out.evaluations = a.evaluations + b.evaluations;
  out.converged = a.converged && b.converged &&
                  out.error_estimate <= spec.tolerance_for(out.value);
  return out;
}

QuadratureResult integrate_beta_weighted(const SplitIntegrand& g, double a,
                                         double b, const QuadratureSpec& spec) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_beta_weighted: requires a > 0 and b > 0");
  }
  const QuadratureSpec half = spec.scaled(0.5);
  const double inv_a = 1.0 / a;
  const double inv_b = 1.0 / b;

  // u = w^{1/a}:  u^{a-1} du = dw / a
  auto left = [&](double w) {
    const double u = std::pow(w, inv_a);
    const double weight = b == 1.0 ? 1.0 : std::exp((b - 1.0) * std::log1p(-u));
    return weight * g(u, 1.0 - u) * inv_a;
  };
  // 1 - u = z^{1/b}:  (1-u)^{b-1} du = -dz / b
  auto right = [&](double z) {
    const double v = std::pow(z, inv_b);
    const double u = 1.0 - v;
    const double weight = a == 1.0 ? 1.0 : std::exp((a - 1.0) * std::log1p(-v));
    return weight * g(u, v) * inv_b;
  };
  const auto lres = integrate_interval(left, 0.0, std::exp2(-a), half);
  const auto rres = integrate_interval(right, 0.0, std::exp2(-b), half);
  return combine(lres, rres, spec);
}

QuadratureResult integrate_semi_infinite_algebraic(const Integrand& h,
                                                   double alpha,
                                                   const QuadratureSpec& spec) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("integrate_semi_infinite_algebraic: requires alpha > 0");
  }
  const QuadratureSpec half = spec.scaled(0.5);
  const double inv_alpha = 1.0 / alpha;
  // y = w^{1/alpha}:  dy = (y / w) dw / alpha
  auto near = [&](double w) {
    const double y = std::pow(w, inv_alpha);
    if (y == 0.0) return 0.0;
    const double v = h(y);
    if (v == 0.0) return 0.0;
    return v * (y / w) * inv_alpha;
  };
  const auto nres = integrate_interval(near, 0.0, 1.0, half);
  const auto fres = integrate_semi_infinite(h, half, 1.0, 1.0);
  return combine(nres, fres, spec);
}

}  // namespace zetamix
