// Runs the acceptance criteria and prints one line per criterion.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "oracles.hpp"
#include "zetamix/distributions.hpp"
#include "zetamix/mixing_densities.hpp"
#include "zetamix/mixture_engine.hpp"
#include "zetamix/samplers.hpp"
#include "zetamix/special_functions.hpp"

namespace zm = zetamix;

namespace {

const std::vector<double> kShapes = {1.5, 2.0, 3.0};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tracks the worst |error| and where it happened.
class MaxError {
 public:
  explicit MaxError(double tol) : tol_(tol) {}

  void add(double err, const std::string& where) {
    if (!(err <= worst_)) {
      worst_ = err;
      where_ = where;
    }
  }
  bool ok() const { return worst_ <= tol_; }

  std::string describe(const char* label = "max_err") const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.3g (tol %.0e)", label, worst_, tol_);
    std::string s = buf;
    if (!where_.empty()) s += " at " + where_;
    return s;
  }

 private:
  double tol_;
  double worst_ = 0.0;
  std::string where_;
};

std::string at(std::initializer_list<std::pair<const char*, double>> params) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, v] : params) {
    os << (first ? "" : ",") << name << "=" << v;
    first = false;
  }
  return os.str();
}

Outcome verdict(std::initializer_list<const MaxError*> parts) {
  Outcome o;
  for (const auto* p : parts) {
    o.pass = o.pass && p->ok();
    o.detail += (o.detail.empty() ? "" : "; ") + p->describe();
  }
  return o;
}

Outcome nb_family(const std::vector<double>& shapes, double tol) {
  MaxError e(tol);
  for (double r : shapes) {
    for (double s : kShapes) {
      for (zm::Count x = 0; x <= 20; ++x) {
        const double got = zm::nb_mixture_pmf(x, r, s);
        e.add(std::abs(got - oracle::zeta_pmf(x, s)), at({{"r", r}, {"s", s}, {"x", x}}));
      }
    }
  }
  return verdict({&e});
}

Outcome c1() { return nb_family({1.0}, 1e-8); }

Outcome c2() { return nb_family({1.5, 2.0, 2.5, 3.7}, 1e-6); }

Outcome c3() {
  MaxError pmf(1e-5);
  MaxError mass(1e-6);
  std::string positive;
  for (double r : {0.25, 0.5, 0.75}) {
    for (double s : kShapes) {
      for (zm::Count x = 0; x <= 10; ++x) {
        pmf.add(std::abs(zm::nb_mixture_pmf(x, r, s) - oracle::zeta_pmf(x, s)),
                at({{"r", r}, {"s", s}, {"x", x}}));
      }
      const double f = zm::mixing_quasi_pdf_r_lt1(1e-3, r, s);
      if (!(f < 0.0)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " (r=%g,s=%g)=%.6g", r, s, f);
        positive += buf;
      }
      const auto total = zm::mixing_density_integral(zm::MixingDensityKind::r_lt1_quasi(r, s));
      mass.add(std::abs(total.value - 1.0), at({{"r", r}, {"s", s}}));
    }
  }
  Outcome o = verdict({&pmf, &mass});
  if (positive.empty()) {
    o.detail += "; f(1e-3) < 0 for all pairs";
  } else {
    o.pass = false;
    o.detail += "; f(1e-3) not negative:" + positive;
  }
  return o;
}

Outcome c4() {
  MaxError e(1e-9);
  for (double s : kShapes) {
    for (double p : {1e-6, 1e-3, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999}) {
      e.add(std::abs(zm::mixing_pdf_r_gt1(p, 2.0, s) - zm::mixing_pdf_r2_closed(p, s)),
            at({{"p", p}, {"s", s}}));
    }
  }
  return verdict({&e});
}

Outcome c5() {
  MaxError e(1e-8);
  for (double s : kShapes) {
    for (zm::Count x = 0; x <= 10; ++x) {
      const double expected = 1.0 - oracle::harmonic(x, s) / oracle::zeta(s);
      e.add(std::abs(zm::mixing_moment(x, s).value - expected), at({{"s", s}, {"x", x}}));
    }
  }
  return verdict({&e});
}

Outcome c6() {
  MaxError series(1e-8);
  for (double t : {0.5, 1.0, 2.0}) {
    const auto bounded = zm::mgf_series_bounded(t, 2.0, 1e-12);
    series.add(std::abs(bounded.value - zm::mgf_quadrature(t, 2.0).value), at({{"t", t}}));
  }
  MaxError forms(1e-10);
  for (double t : {0.5, 1.0, 2.0}) {
    forms.add(std::abs(zm::mgf_series_harmonic(t, 2.0, 60).value -
                       zm::mgf_series_hurwitz(t, 2.0, 60).value),
              at({{"t", t}, {"N", 60}}));
  }
  return verdict({&series, &forms});
}

Outcome c7() {
  MaxError e(1e-9);
  for (double r : {0.5, 1.0, 2.0}) {
    for (double p : {0.3, 0.5, 0.7}) {
      for (zm::Count x = 0; x <= 15; ++x) {
        e.add(std::abs(zm::gamma_poisson_pmf(x, r, p) - oracle::nb_pmf(x, r, p)),
              at({{"r", r}, {"p", p}, {"x", x}}));
      }
    }
  }
  return verdict({&e});
}

Outcome c8() {
  MaxError e(1e-5);
  for (double s : {1.5, 2.0}) {
    for (double lambda : {0.1, 0.5, 1.0, 5.0}) {
      const double direct = zm::lambda_mixing_pdf(lambda, s);
      for (double r : {1.0, 2.0, 3.0}) {
        e.add(std::abs(zm::lambda_mixing_pdf_via_r(lambda, r, s) - direct),
              at({{"lambda", lambda}, {"r", r}, {"s", s}}));
      }
    }
  }
  return verdict({&e});
}

Outcome c9() {
  MaxError e(1e-5);
  for (double s : {1.5, 2.0}) {
    for (zm::Count x = 0; x <= 10; ++x) {
      e.add(std::abs(zm::poisson_mixture_pmf(x, s) - oracle::zeta_pmf(x, s)),
            at({{"s", s}, {"x", x}}));
    }
  }
  return verdict({&e});
}

Outcome c10() {
  const std::vector<zm::RPrior> priors = {
      zm::RPrior({{1.0, 1.0 / 3}, {2.0, 1.0 / 3}, {3.5, 1.0 / 3}}),
      zm::RPrior({{1.0, 0.7}, {2.0, 0.2}, {3.5, 0.1}}),
      zm::RPrior({{1.0, 0.05}, {2.0, 0.15}, {3.5, 0.8}}),
  };
  MaxError e(2e-7);
  for (zm::Count x = 0; x <= 10; ++x) {
    std::vector<double> v;
    for (const auto& prior : priors) v.push_back(zm::random_r_mixture_pmf(x, 2.0, prior));
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        e.add(std::abs(v[i] - v[j]),
              at({{"x", x}, {"prior_i", static_cast<double>(i)},
                  {"prior_j", static_cast<double>(j)}}));
      }
    }
  }
  return verdict({&e});
}

Outcome c11() {
  MaxError pmf(1e-9);
  MaxError ratios(1e-12);
  for (double b : {0.5, 1.0, 2.5}) {
    for (zm::Count x = 0; x <= 15; ++x) {
      pmf.add(std::abs(zm::yule_mixture_pmf(x, b) - oracle::yule_pmf(x, b)),
              at({{"b", b}, {"x", x}}));
    }
    const zm::YuleParams yp(b);
    const double ratio = zm::yule_pmf(0, yp) / zm::yule_pmf(1, yp);
    ratios.add(std::abs(ratio - (b + 2.0)) / (b + 2.0), at({{"yule_b", b}}));
  }
  for (double s : kShapes) {
    const zm::ZetaParams zp(s);
    const double expected = std::exp2(s);
    ratios.add(std::abs(zm::zeta_pmf(0, zp) / zm::zeta_pmf(1, zp) - expected) / expected,
               at({{"zeta_s", s}}));
  }
  for (double r : {0.5, 1.0, 3.7}) {
    for (double p : {0.1, 0.5, 0.9}) {
      const zm::NbParams np(r, p);
      const double expected = 1.0 / (r * p);
      ratios.add(std::abs(zm::nb_pmf(0, np) / zm::nb_pmf(1, np) - expected) / expected,
                 at({{"nb_r", r}, {"nb_p", p}}));
    }
  }
  Outcome o = verdict({&pmf});
  o.pass = o.pass && ratios.ok();
  o.detail += "; " + ratios.describe("max_ratio_rel_err");
  return o;
}

Outcome sampling_tier(std::size_t n, double tol) {
  using Chain = std::vector<zm::Count> (*)(double, std::size_t, const zm::SeededStream&);
  const std::pair<const char*, Chain> chains[] = {
      {"direct", &zm::sample_zeta_direct},
      {"geometric", &zm::sample_zeta_via_geometric_chain},
      {"poisson", &zm::sample_zeta_via_poisson_chain},
  };
  Outcome o;
  std::uint64_t stream = 0;
  for (double s : kShapes) {
    for (const auto& [name, chain] : chains) {
      const auto samples = chain(s, n, {20240601, stream++});
      const double tv = zm::fit_against_zeta(samples, s, 1e-6).tv_distance;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s@%g=%.4f", name, s, tv);
      o.detail += (o.detail.empty() ? "" : " ") + std::string(buf);
      if (!(tv < tol)) {
        o.pass = false;
        o.detail += "!";
      }
    }
  }
  return o;
}

Outcome c12() {
  const Outcome small = sampling_tier(100000, 0.015);
  const Outcome large = sampling_tier(1000000, 0.005);
  return {small.pass && large.pass,
          "n=1e5 tol 0.015: " + small.detail + " | n=1e6 tol 0.005: " + large.detail};
}

Outcome c13() {
  const double pi = boost::math::constants::pi<double>();
  MaxError constants(1e-12);
  constants.add(std::abs(zm::riemann_zeta(2.0) - pi * pi / 6.0), "zeta(2)");
  constants.add(std::abs(zm::riemann_zeta(4.0) - std::pow(pi, 4) / 90.0), "zeta(4)");
  MaxError partition(1e-11);
  for (double s : kShapes) {
    const double z = oracle::zeta(s);
    for (std::uint64_t n = 0; n <= 100; ++n) {
      partition.add(std::abs(zm::generalized_harmonic(n, s) + zm::hurwitz_zeta(s, n) - z),
                    at({{"s", s}, {"n", static_cast<double>(n)}}));
    }
  }
  return verdict({&constants, &partition});
}

struct Criterion {
  int id;
  const char* name;
  double runtime_target;  // seconds, 0 when none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "nb_mixture r=1 reproduces zeta", 5.0, c1},
      {2, "nb_mixture r>1 reproduces zeta", 60.0, c2},
      {3, "signed mixing r<1", 0.0, c3},
      {4, "r=2 integral vs closed form", 0.0, c4},
      {5, "moment system", 0.0, c5},
      {6, "mgf series vs quadrature", 0.0, c6},
      {7, "gamma-poisson equals nb", 0.0, c7},
      {8, "lambda density r-invariance", 0.0, c8},
      {9, "poisson mixture reproduces zeta", 120.0, c9},
      {10, "r-prior non-identifiability", 0.0, c10},
      {11, "yule identity and pmf ratios", 0.0, c11},
      {12, "sampling chains tv distance", 0.0, c12},
      {13, "special functions", 0.0, c13},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.runtime_target > 0.0 && secs > c.runtime_target) {
      o.pass = false;
      char buf[64];
      std::snprintf(buf, sizeof buf, "; runtime over %.0f s target", c.runtime_target);
      o.detail += buf;
    }
    if (!o.pass) ++failures;
    std::printf("C%02d %s  %-34s %7.2fs  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
