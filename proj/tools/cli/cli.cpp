#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include "CLI11.hpp"
#include "json.hpp"
#include "zetamix/distributions.hpp"
#include "zetamix/errors.hpp"
#include "zetamix/mixing_densities.hpp"
#include "zetamix/samplers.hpp"
#include "zetamix/version.hpp"

namespace zetamix::cli {

namespace {

using Json = nlohmann::ordered_json;

// Point axis a kind is evaluated along.
enum class Axis { kX, kP, kGamma, kLambda };

struct Params {
  std::optional<double> s;
  std::optional<double> r;
  std::optional<double> p;
  std::optional<double> b;
  std::optional<double> lambda;
  QuadratureSpec spec;
};

struct Kind {
  std::string_view name;
  Axis axis;
  std::function<double(double, const Params&)> eval;
};

double need(const std::optional<double>& v, const char* flag,
            std::string_view kind) {
  if (!v) {
    throw DomainError(std::string(kind) + " requires " + flag);
  }
  return *v;
}

Count as_count(double x) {
  if (!(x >= 0.0) || x != std::floor(x) || x > 9.0e18) {
    throw DomainError("x must be a nonnegative integer, got " + format_number(x));
  }
  return static_cast<Count>(x);
}

const std::vector<Kind>& kinds() {
  static const std::vector<Kind> table = {
      {"zeta-pmf", Axis::kX,
       [](double x, const Params& a) {
         return zeta_pmf(as_count(x), ZetaParams(need(a.s, "--s", "zeta-pmf")));
       }},
      {"nb-pmf", Axis::kX,
       [](double x, const Params& a) {
         return nb_pmf(as_count(x), NbParams(need(a.r, "--r", "nb-pmf"),
                                             need(a.p, "--p", "nb-pmf")));
       }},
      {"poisson-pmf", Axis::kX,
       [](double x, const Params& a) {
         return poisson_pmf(as_count(x), need(a.lambda, "--lambda", "poisson-pmf"));
       }},
      {"yule-pmf", Axis::kX,
       [](double x, const Params& a) {
         return yule_pmf(as_count(x), YuleParams(need(a.b, "--b", "yule-pmf")));
       }},
      {"mixing-r1", Axis::kP,
       [](double p, const Params& a) {
         return mixing_pdf_r1(p, need(a.s, "--s", "mixing-r1"));
       }},
      {"mixing-r2", Axis::kP,
       [](double p, const Params& a) {
         return mixing_pdf_r2_closed(p, need(a.s, "--s", "mixing-r2"));
       }},
      {"mixing-rgt1", Axis::kP,
       [](double p, const Params& a) {
         return mixing_pdf_r_gt1(p, need(a.r, "--r", "mixing-rgt1"),
                                 need(a.s, "--s", "mixing-rgt1"), a.spec);
       }},
      {"mixing-quasi", Axis::kP,
       [](double p, const Params& a) {
         return mixing_quasi_pdf_r_lt1(p, need(a.r, "--r", "mixing-quasi"),
                                       need(a.s, "--s", "mixing-quasi"), a.spec);
       }},
      {"mixing", Axis::kP,
       [](double p, const Params& a) {
         const auto kind = MixingDensityKind::for_nb_shape(
             need(a.r, "--r", "mixing"), need(a.s, "--s", "mixing"));
         if (!(p >= kMinProbability && p <= kMaxProbability)) {
           throw DomainError("mixing: requires 1e-12 <= p <= 1 - 1e-12");
         }
         return kind.evaluate(p, a.spec);
       }},
      {"gamma-transform", Axis::kGamma,
       [](double g, const Params& a) {
         return gamma_transform_pdf(g, need(a.s, "--s", "gamma-transform"));
       }},
      {"lambda-mixing", Axis::kLambda,
       [](double l, const Params& a) {
         return lambda_mixing_pdf(l, need(a.s, "--s", "lambda-mixing"), a.spec);
       }},
      {"lambda-mixing-via-r", Axis::kLambda,
       [](double l, const Params& a) {
         return lambda_mixing_pdf_via_r(l, need(a.r, "--r", "lambda-mixing-via-r"),
                                        need(a.s, "--s", "lambda-mixing-via-r"),
                                        a.spec);
       }},
      {"nb-mixture", Axis::kX,
       [](double x, const Params& a) {
         return nb_mixture_pmf(as_count(x), need(a.r, "--r", "nb-mixture"),
                               need(a.s, "--s", "nb-mixture"), a.spec);
       }},
      {"poisson-mixture", Axis::kX,
       [](double x, const Params& a) {
         return poisson_mixture_pmf(as_count(x), need(a.s, "--s", "poisson-mixture"),
                                    a.spec);
       }},
      {"yule-mixture", Axis::kX,
       [](double x, const Params& a) {
         return yule_mixture_pmf(as_count(x), need(a.b, "--b", "yule-mixture"),
                                 a.spec);
       }},
  };
  return table;
}

const Kind& find_kind(const std::string& name) {
  for (const auto& k : kinds()) {
    if (k.name == name) return k;
  }
  std::string known;
  for (const auto& k : kinds()) {
    if (!known.empty()) known += ", ";
    known += k.name;
  }
  throw DomainError("unknown --kind '" + name + "' (known: " + known + ")");
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw DomainError("not a number: '" + t + "'");
  }
  return v;
}

Count parse_count(std::string_view text) {
  const std::string t = trim(text);
  Count v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw DomainError("not a nonnegative integer: '" + t + "'");
  }
  return v;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    std::string item = trim(text.substr(start, end - start));
    if (item.empty()) throw DomainError("empty list item");
    out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double>* axis_of(IdentityGrid& g, std::string_view axis) {
  if (axis == "r") return &g.r;
  if (axis == "s") return &g.s;
  if (axis == "p") return &g.p;
  if (axis == "b") return &g.b;
  if (axis == "lambda") return &g.lambda;
  if (axis == "t") return &g.t;
  return nullptr;
}

void emit(const std::string& text, const std::string& output_path,
          std::ostream& out) {
  if (output_path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(output_path, std::ios::binary);
  if (!file) throw DomainError("cannot open output file '" + output_path + "'");
  file << text;
  if (!file) throw DomainError("failed writing '" + output_path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json grid_to_json(const VerificationGrid& grid) {
  Json out = Json::object();
  for (const auto& g : grid.identities) {
    Json axes = Json::object();
    auto put = [&](const char* name, const std::vector<double>& v) {
      if (!v.empty()) axes[name] = v;
    };
    put("r", g.r);
    put("s", g.s);
    put("p", g.p);
    put("b", g.b);
    put("lambda", g.lambda);
    put("t", g.t);
    if (!g.x.empty()) axes["x"] = g.x;
    out[std::string(to_string(g.identity))] = axes;
  }
  return out;
}

std::string params_text(const IdentityCheck& c) {
  std::string out;
  for (const auto& [k, v] : c.params) {
    if (!out.empty()) out += ';';
    out += k + "=" + format_number(v);
  }
  return out;
}

struct PointRows {
  std::vector<std::pair<double, double>> rows;
};

std::string rows_to_text(const PointRows& rows, const std::string& format) {
  if (format == "json") {
    Json arr = Json::array();
    for (const auto& [pt, v] : rows.rows) arr.push_back({{"point", pt}, {"value", v}});
    return arr.dump(2) + "\n";
  }
  std::string out = "point,value\n";
  for (const auto& [pt, v] : rows.rows) {
    out += format_number(pt) + "," + format_number(v) + "\n";
  }
  return out;
}

Params build_params(const std::optional<double>& s, const std::optional<double>& r,
                    const std::optional<double>& p, const std::optional<double>& b,
                    const std::optional<double>& lambda, double abs_tol,
                    double rel_tol) {
  Params a;
  a.s = s;
  a.r = r;
  a.p = p;
  a.b = b;
  a.lambda = lambda;
  a.spec.abs_tol = abs_tol;
  a.spec.rel_tol = rel_tol;
  a.spec.validate();
  return a;
}

Json summary_to_json(const FitSummary& f, const std::string& chain, double s,
                     std::uint64_t seed, std::uint64_t stream, double eps) {
  return Json{{"chain", chain},
              {"s", s},
              {"seed", seed},
              {"stream", stream},
              {"eps", eps},
              {"n", f.n},
              {"tv_distance", f.tv_distance},
              {"chi_square", f.chi_square},
              {"dof", f.dof},
              {"truncation_point", f.truncation_point},
              {"version", kVersion}};
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

VerifyConfig parse_verify_config(std::string_view text) {
  VerifyConfig cfg;
  std::map<Identity, IdentityGrid> touched;
  std::vector<Identity> order;
  std::map<std::pair<Identity, std::string>, bool> overridden;

  auto grid_for = [&](Identity id) -> IdentityGrid& {
    auto it = touched.find(id);
    if (it == touched.end()) {
      it = touched.emplace(id, VerificationGrid::default_axes(id)).first;
      order.push_back(id);
    }
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto where = "config line " + std::to_string(line_no) + ": ";
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw DomainError(where + "expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (value.empty()) throw DomainError(where + "empty value for '" + key + "'");
    try {
      if (key == "abs_tol") {
        cfg.spec.abs_tol = parse_double(value);
      } else if (key == "rel_tol") {
        cfg.spec.rel_tol = parse_double(value);
      } else if (key == "max_subdivisions") {
        cfg.spec.max_subdivisions = parse_count(value);
      } else if (key == "threads") {
        cfg.threads = parse_count(value);
      } else if (key == "identities") {
        for (const auto& name : split_list(value)) {
          const auto id = identity_from_string(name);
          if (!id) throw DomainError("unknown identity '" + name + "'");
          grid_for(*id);
        }
      } else if (key.rfind("grid.", 0) == 0) {
        const std::string rest = key.substr(5);
        const auto dot = rest.find('.');
        if (dot == std::string::npos) {
          throw DomainError("grid keys look like grid.<identity>.<axis>");
        }
        const std::string name = rest.substr(0, dot);
        const std::string axis = rest.substr(dot + 1);
        const auto id = identity_from_string(name);
        if (!id) throw DomainError("unknown identity '" + name + "'");
        IdentityGrid& g = grid_for(*id);
        // The first mention of an axis replaces its default; repeats append.
        const bool fresh = !overridden[{*id, axis}];
        overridden[{*id, axis}] = true;
        if (axis == "x") {
          if (fresh) g.x.clear();
          for (const auto& item : split_list(value)) {
            const auto dots = item.find("..");
            if (dots == std::string::npos) {
              g.x.push_back(parse_count(item));
              continue;
            }
            const Count lo = parse_count(std::string_view(item).substr(0, dots));
            const Count hi = parse_count(std::string_view(item).substr(dots + 2));
            if (hi < lo) throw DomainError("empty range '" + item + "'");
            for (Count x = lo; x <= hi; ++x) g.x.push_back(x);
          }
        } else if (auto* vec = axis_of(g, axis)) {
          if (fresh) vec->clear();
          for (const auto& item : split_list(value)) vec->push_back(parse_double(item));
        } else {
          throw DomainError("unknown axis '" + axis + "'");
        }
      } else {
        throw DomainError("unknown key '" + key + "'");
      }
    } catch (const DomainError& e) {
      throw DomainError(where + e.what());
    }
  }
  cfg.spec.validate();
  if (order.empty()) {
    cfg.grid = VerificationGrid::defaults();
  } else {
    // Keep the canonical identity order regardless of the config order.
    for (Identity id : all_identities()) {
      if (touched.count(id)) cfg.grid.identities.push_back(touched.at(id));
    }
  }
  return cfg;
}

std::string report_to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json params = Json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    Json row{{"identity", c.identity}, {"params", params}};
    row["x"] = c.x ? Json(*c.x) : Json(nullptr);
    row["value"] = c.value;
    row["expected"] = c.expected;
    row["abs_err"] = c.abs_err;
    row["rel_err"] = c.rel_err;
    row["abs_threshold"] = c.abs_threshold;
    row["rel_threshold"] = c.rel_threshold;
    row["converged"] = c.converged;
    row["passed"] = c.passed;
    row["evals"] = c.evaluations;
    if (!c.note.empty()) row["note"] = c.note;
    checks.push_back(std::move(row));
  }
  Json out{{"grid", grid_to_json(report.grid)},
           {"checks", checks},
           {"all_passed", report.all_passed()},
           {"timestamp", report.timestamp},
           {"version", report.tool_version}};
  return out.dump(2) + "\n";
}

std::string report_to_csv(const VerificationReport& report) {
  std::string out =
      "identity,params,x,value,expected,abs_err,rel_err,passed,converged,evals\n";
  for (const auto& c : report.checks) {
    out += c.identity + "," + params_text(c) + "," +
           (c.x ? std::to_string(*c.x) : std::string()) + "," +
           format_number(c.value) + "," + format_number(c.expected) + "," +
           format_number(c.abs_err) + "," + format_number(c.rel_err) + "," +
           (c.passed ? "true" : "false") + "," + (c.converged ? "true" : "false") +
           "," + std::to_string(c.evaluations) + "\n";
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta distribution mixture toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::optional<double> s;
  std::optional<double> r;
  std::optional<double> p_param;
  std::optional<double> b;
  std::optional<double> lambda_param;
  std::vector<double> xs;
  std::vector<double> ps;
  std::vector<double> gammas;
  std::vector<double> lambdas;
  std::string kind_name;
  std::string format = "csv";
  std::string output;
  double abs_tol = QuadratureSpec{}.abs_tol;
  double rel_tol = QuadratureSpec{}.rel_tol;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", output, "Write output to this file instead of stdout");
  };
  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--s", s, "Zeta exponent");
    cmd->add_option("--r", r, "Negative Binomial shape");
    cmd->add_option("--b", b, "Yule parameter");
    cmd->add_option("--abs-tol", abs_tol, "Quadrature absolute tolerance");
    cmd->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate a density or PMF at points");
  eval->add_option("--kind", kind_name, "Density or PMF name")->required();
  add_params(eval);
  eval->add_option("--x", xs, "Count points")->delimiter(',');
  eval->add_option("--p", ps, "Probability points (NB parameter for nb-pmf)")
      ->delimiter(',');
  eval->add_option("--gamma", gammas, "gamma = 1/p points")->delimiter(',');
  eval->add_option("--lambda", lambdas, "Rate points (rate parameter for poisson-pmf)")
      ->delimiter(',');
  add_common(eval);

  std::string config_path;
  std::size_t threads = 0;
  auto* verify = app.add_subcommand("verify", "Run the identity verification grid");
  verify->add_option("--config", config_path, "Flat key = value grid config");
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");
  add_common(verify);

  double from = 0.0;
  double to = 0.0;
  std::size_t points = 0;
  std::string spacing = "linear";
  auto* tabulate = app.add_subcommand("tabulate", "Tabulate a density over a grid");
  tabulate->add_option("--kind", kind_name, "Density or PMF name")->required();
  add_params(tabulate);
  tabulate->add_option("--p", p_param, "NB success probability (nb-pmf)");
  tabulate->add_option("--lambda", lambda_param, "Poisson rate (poisson-pmf)");
  tabulate->add_option("--from", from, "First grid point")->required();
  tabulate->add_option("--to", to, "Last grid point")->required();
  tabulate->add_option("--points", points, "Number of grid points")->required();
  tabulate->add_option("--spacing", spacing, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}));
  add_common(tabulate);

  std::string chain;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t stream_id = 0;
  std::string summary_path;
  std::string fit_table_path;
  double eps = 1e-6;
  auto* sample = app.add_subcommand("sample", "Draw Zeta counts through a chain");
  sample->add_option("--chain", chain, "Sampler")
      ->required()
      ->check(CLI::IsMember({"direct", "geometric", "poisson"}));
  sample->add_option("--s", s, "Zeta exponent")->required();
  sample->add_option("--n", n, "Number of draws")->required();
  sample->add_option("--seed", seed, "64-bit seed (required)");
  sample->add_option("--stream", stream_id, "Stream id");
  sample->add_option("--eps", eps, "Tail mass for the fit truncation point");
  sample->add_option("--summary", summary_path, "FitSummary JSON path");
  sample->add_option("--fit-table", fit_table_path,
                     "CSV x,count,expected,abs_err path");
  sample->add_option("--output", output, "Counts file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (eval->parsed()) {
      const Kind& kind = find_kind(kind_name);
      std::optional<double> p_arg;
      std::optional<double> lambda_arg;
      std::vector<double> pts;
      // nb-pmf and poisson-pmf take --p / --lambda as parameters, not points.
      if (kind.name == "nb-pmf") {
        if (ps.size() != 1) throw DomainError("nb-pmf requires a single --p");
        p_arg = ps.front();
      }
      if (kind.name == "poisson-pmf") {
        if (lambdas.size() != 1) {
          throw DomainError("poisson-pmf requires a single --lambda");
        }
        lambda_arg = lambdas.front();
      }
      switch (kind.axis) {
        case Axis::kX: pts = xs; break;
        case Axis::kP: pts = ps; break;
        case Axis::kGamma: pts = gammas; break;
        case Axis::kLambda: pts = lambdas; break;
      }
      if (pts.empty()) throw DomainError(std::string(kind.name) + ": no points given");
      const Params params = build_params(s, r, p_arg, b, lambda_arg, abs_tol, rel_tol);
      PointRows rows;
      for (double pt : pts) rows.rows.emplace_back(pt, kind.eval(pt, params));
      emit(rows_to_text(rows, format), output, out);
      return kOk;
    }

    if (tabulate->parsed()) {
      const Kind& kind = find_kind(kind_name);
      if (points == 0) throw DomainError("tabulate: --points must be >= 1");
      if (!(from <= to)) throw DomainError("tabulate: requires --from <= --to");
      if (spacing == "log" && !(from > 0.0)) {
        throw DomainError("tabulate: log spacing requires --from > 0");
      }
      const Params params =
          build_params(s, r, p_param, b, lambda_param, abs_tol, rel_tol);
      PointRows rows;
      for (std::size_t i = 0; i < points; ++i) {
        const double frac =
            points == 1 ? 0.0
                        : static_cast<double>(i) / static_cast<double>(points - 1);
        double pt = spacing == "log"
                        ? std::exp(std::log(from) + frac * (std::log(to) - std::log(from)))
                        : from + frac * (to - from);
        if (i + 1 == points) pt = to;
        if (kind.axis == Axis::kX) pt = std::round(pt);
        if (kind.axis == Axis::kX && !rows.rows.empty() && rows.rows.back().first == pt) {
          continue;
        }
        rows.rows.emplace_back(pt, kind.eval(pt, params));
      }
      emit(rows_to_text(rows, format), output, out);
      return kOk;
    }

    if (verify->parsed()) {
      VerifyConfig cfg;
      if (!config_path.empty()) {
        cfg = parse_verify_config(read_file(config_path));
      } else {
        cfg.grid = VerificationGrid::defaults();
      }
      RunOptions opts;
      opts.threads = threads != 0 ? threads : cfg.threads;
      const auto report = run_verification_grid(cfg.grid, cfg.spec, opts);
      emit(format == "json" ? report_to_json(report) : report_to_csv(report), output,
           out);
      std::size_t failed = 0;
      for (const auto& c : report.checks) failed += c.passed ? 0 : 1;
      err << report.checks.size() - failed << "/" << report.checks.size()
          << " checks passed\n";
      return report.all_passed() ? kOk : kIdentityFailure;
    }

    if (sample->parsed()) {
      if (!seed) throw DomainError("sample requires --seed (no implicit seeding)");
      if (!(eps > 0.0 && eps < 0.01)) {
        throw DomainError("sample: requires 0 < --eps < 0.01");
      }
      const SeededStream stream{*seed, stream_id};
      const double s_value = *s;
      std::vector<Count> draws;
      if (chain == "direct") {
        draws = sample_zeta_direct(s_value, n, stream);
      } else if (chain == "geometric") {
        draws = sample_zeta_via_geometric_chain(s_value, n, stream);
      } else {
        draws = sample_zeta_via_poisson_chain(s_value, n, stream);
      }
      std::string text;
      text.reserve(draws.size() * 4);
      for (Count v : draws) {
        text += std::to_string(v);
        text += '\n';
      }
      emit(text, output, out);

      const auto fit = fit_against_zeta(draws, s_value, eps);
      const std::string summary =
          summary_to_json(fit, chain, s_value, *seed, stream_id, eps).dump(2) + "\n";
      if (!summary_path.empty()) {
        emit(summary, summary_path, out);
      } else if (!output.empty()) {
        emit(summary, output + ".summary.json", out);
      } else {
        err << summary;
      }
      if (!fit_table_path.empty()) {
        std::string table = "x,count,expected,abs_err\n";
        for (const auto& row : fit_table(draws, s_value, eps, 1000)) {
          table += std::to_string(row.x) + "," + std::to_string(row.count) + "," +
                   format_number(row.expected) + "," + format_number(row.abs_err) +
                   "\n";
        }
        emit(table, fit_table_path, out);
      }
      return kOk;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const NonFiniteIntegrandError& e) {
    err << "non-finite integrand: " << e.what() << "\n";
    return kNonConvergence;
  }
  return kUsage;
}

}  // namespace zetamix::cli
