#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "gainprophet/gainprophet.hpp"

namespace gainprophet::cli {

namespace {

using Json = nlohmann::ordered_json;

// Rounds to 12 significant digits; integral results render without a fraction.
Json num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  if (r == 0.0) return 0;
  if (std::abs(r) < 1e15 && std::trunc(r) == r) return static_cast<std::int64_t>(r);
  return r;
}

Json num_array(std::span<const double> vs) {
  Json a = Json::array();
  for (double v : vs) a.push_back(num(v));
  return a;
}

Json bits_json(const std::array<std::uint8_t, kFactorCount>& bits) {
  Json a = Json::array();
  for (auto b : bits) a.push_back(static_cast<int>(b));
  return a;
}

Json factor_vector_json(const FactorVector& v) {
  Json o = Json::object();
  for (Factor f : kFactors) {
    o[std::string(1, factor_symbol(f))] = level_code(f, v[f]).substr(1);
  }
  return o;
}

std::string symbol(Factor f) { return std::string(1, factor_symbol(f)); }

// A command yields either one JSON document or, for streaming listings, one
// document per output line.
struct Output {
  std::vector<Json> docs;
  bool lines = false;
};

Output single(Json doc) { return {{std::move(doc)}, false}; }

// ---------------------------------------------------------------------------
// Table rendering: one "path<TAB>value" row per scalar leaf.
// ---------------------------------------------------------------------------

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const Json& v, const std::string& path, std::ostream& os) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) {
      flatten(child, path.empty() ? key : path + "." + key, os);
    }
  } else if (v.is_array() &&
             std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); })) {
    os << path << '\t';
    bool first = true;
    for (const auto& e : v) {
      os << (first ? "" : " ") << scalar_text(e);
      first = false;
    }
    os << '\n';
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      flatten(v[i], path + "[" + std::to_string(i) + "]", os);
    }
  } else {
    os << path << '\t' << scalar_text(v) << '\n';
  }
}

std::string render(const Output& o, bool table) {
  std::ostringstream os;
  if (table) {
    for (const auto& d : o.docs) {
      flatten(d, "", os);
      if (o.lines && &d != &o.docs.back()) os << '\n';
    }
  } else {
    for (const auto& d : o.docs) os << d.dump() << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Input helpers
// ---------------------------------------------------------------------------

GainSeries load_series(const std::string& path) { return parse_gain_series(read_file(path)); }

// Numeric values from --values or the gain column of --series.
std::vector<double> load_values(const std::vector<double>& values, const std::string& series) {
  if (!series.empty()) {
    const auto s = load_series(series);
    return {s.gains().begin(), s.gains().end()};
  }
  if (values.empty()) throw ValidationError("give --values or --series");
  return values;
}

DiscreteDistribution load_distribution(const std::string& path) {
  const auto doc = read_csv(read_file(path));
  expect_header(doc, {"outcome", "probability"});
  std::vector<double> g, p;
  for (const auto& rec : doc.records) {
    const auto a = parse_number(rec.fields[0]);
    const auto b = parse_number(rec.fields[1]);
    if (!a || !b) throw ParseError(rec.line, "expected two numbers");
    g.push_back(*a);
    p.push_back(*b);
  }
  return DiscreteDistribution(std::move(g), std::move(p));
}

// Long format `g,q,p`; outcomes are indexed in order of first appearance and
// absent cells carry zero mass.
JointDistribution load_joint(const std::string& path) {
  const auto doc = read_csv(read_file(path));
  expect_header(doc, {"g", "q", "p"});
  std::vector<double> gs, qs;
  std::vector<std::tuple<std::size_t, std::size_t, double>> cells;
  auto slot = [](std::vector<double>& axis, double v) {
    const auto it = std::find(axis.begin(), axis.end(), v);
    if (it != axis.end()) return static_cast<std::size_t>(it - axis.begin());
    axis.push_back(v);
    return axis.size() - 1;
  };
  for (const auto& rec : doc.records) {
    const auto g = parse_number(rec.fields[0]);
    const auto q = parse_number(rec.fields[1]);
    const auto p = parse_number(rec.fields[2]);
    if (!g || !q || !p) throw ParseError(rec.line, "expected three numbers");
    cells.emplace_back(slot(gs, *g), slot(qs, *q), *p);
  }
  std::vector<double> pmf(gs.size() * qs.size(), 0.0);
  for (const auto& [i, j, p] : cells) {
    double& cell = pmf[i * qs.size() + j];
    if (cell != 0.0) throw ValidationError("joint cell listed twice");
    cell = p;
  }
  return JointDistribution(std::move(gs), std::move(qs), std::move(pmf));
}

std::vector<Element> parse_elements(const std::vector<std::string>& names) {
  std::vector<Element> out;
  for (const auto& n : names) {
    const auto e = parse_element(n);
    if (!e) throw ValidationError("unknown universe element '" + n + "'");
    out.push_back(*e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Options shared across subcommands
// ---------------------------------------------------------------------------

struct Options {
  std::string format = "json";
  std::string series;
  std::string table;
  std::string policy = "literal";
  std::string family = "normal";
  double sigma = 1.0;
  std::optional<double> lo, hi;
  double tol = 0.0;
  double multiplier = 2.0;
  std::string sets, years;
  std::vector<std::string> union_elems, intersection_elems;
  std::string dist, joint;
  double intercept = 0.0;
  std::vector<double> coeffs, history, shocks, values;
  double shock = 0.0, next_shock = 0.0;
  std::size_t order = 1;
  double m = 1.0, n = 1.0, a1 = 0.0, a2 = 0.0;
  std::optional<double> center;
};

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

Output cmd_predict(const Options& o) {
  const auto series = load_series(o.series);
  const auto policy = o.policy == "trend" ? StepPolicy::Trend : StepPolicy::PaperLiteral;
  const auto r = predict_next(series.gains(), policy);
  Json j;
  j["policy"] = o.policy;
  j["gaps"] = num_array(r.gaps);
  j["delta_avg"] = num(r.delta_avg);
  j["predicted_gain"] = num(r.predicted_gain);
  j["optimum_gain"] = num(r.optimum_gain);
  j["optimum_year"] = series.year(r.optimum_index);
  j["optimum_index"] = r.optimum_index;
  j["normalization_factor"] = num(r.normalization_factor);
  return single(std::move(j));
}

Output cmd_mle(const Options& o) {
  const auto series = load_series(o.series);
  const auto g = series.gains();
  const auto [mn, mx] = std::minmax_element(g.begin(), g.end());
  ScoreProblem problem{{g.begin(), g.end()}, NormalLocation{o.sigma}, 0.0, 0.0};
  if (o.family == "exponential") {
    if (!(*mn > 0.0)) throw DomainError("exponential family needs positive gains");
    problem.family = ExponentialMean{};
    problem.lo = o.lo.value_or(*mn / 2.0);
    problem.hi = o.hi.value_or(*mx * 2.0);
  } else {
    const double pad = (*mx - *mn) + 1.0;
    problem.lo = o.lo.value_or(*mn - pad);
    problem.hi = o.hi.value_or(*mx + pad);
  }
  const double estimate = mle_expected_gain(problem, o.tol);
  Json j;
  j["family"] = o.family;
  j["observations"] = g.size();
  j["bracket"] = num_array(std::array{problem.lo, problem.hi});
  j["estimate"] = num(estimate);
  j["score_residual"] = num(score_sum(problem, estimate));
  return single(std::move(j));
}

Output cmd_support(const Options& o) {
  const auto table = parse_observation_table(read_file(o.table));
  const auto report = support_counts(table);
  const auto cond = optimum_condition(report);
  Json j;
  j["rows"] = report.rows();
  Json fractions = Json::object();
  Json decimals = Json::object();
  for (Factor f : kFactors) {
    for (Level l : {Level::Low, Level::High}) {
      const auto& s = report.support(f, l);
      fractions[level_code(f, l)] = s.to_string();
      decimals[level_code(f, l)] = num(s.to_double());
    }
  }
  j["support"] = std::move(fractions);
  j["support_decimal"] = std::move(decimals);
  Json opt;
  opt["target"] = cond.target.to_string();
  for (Factor f : kFactors) {
    const auto& s = cond.support[index(f)];
    opt["factors"][symbol(f)] = {{"level", level_code(f, cond.target[f])},
                                 {"support", s.to_string()},
                                 {"support_decimal", num(s.to_double())}};
  }
  j["optimum_condition"] = std::move(opt);
  return single(std::move(j));
}

Output cmd_sequence(const Options& o) {
  const auto table = parse_observation_table(read_file(o.table));
  const auto matrix = encode_sequence(table);
  const auto summary = dominant_pattern(matrix);
  Json j;
  Json rows = Json::array();
  for (const auto& r : matrix) rows.push_back({{"label", r.label}, {"bits", bits_json(r.bits)}});
  j["matrix"] = std::move(rows);
  Json dom = Json::object();
  for (Factor f : kFactors) {
    const auto d = summary.dominant[index(f)];
    dom[symbol(f)] = {{"dominant", d == Dominance::Tie ? "tie" : d == Dominance::One ? "1" : "0"},
                      {"ones", summary.ones[index(f)]},
                      {"rows", summary.rows}};
  }
  j["pattern"] = std::move(dom);
  j["recommendation"] = summary.recommendation;
  return single(std::move(j));
}

Output cmd_states(const Options&) {
  Output out;
  out.lines = true;
  for (const auto& s : enumerate_states()) {
    out.docs.push_back({{"code", s.code()},
                        {"bits", bits_json(s.bits())},
                        {"factors", factor_vector_json(s)},
                        {"levels", s.to_string()}});
  }
  return out;
}

Output cmd_flags(const Options& o) {
  const auto series = load_series(o.series);
  const auto flags = deviation_flags(series, o.multiplier);
  const auto gaps = delta_gaps(series.gains());
  const double avg = delta_avg(series.gains());
  Json j;
  j["multiplier"] = num(o.multiplier);
  j["delta_avg"] = num(avg);
  j["threshold"] = num(o.multiplier * avg);
  Json rows = Json::array();
  for (std::size_t i = 0; i < flags.size(); ++i) {
    rows.push_back({{"year", flags[i].year}, {"gap", num(gaps[i])}, {"flagged", flags[i].flagged}});
  }
  j["flags"] = std::move(rows);
  return single(std::move(j));
}

Output cmd_fuzzy_opt(const Options& o) {
  const auto sets = parse_fuzzy_sets(read_file(o.sets));
  const auto years = parse_year_map(read_file(o.years));
  FactorPartition partition;
  if (!o.union_elems.empty() || !o.intersection_elems.empty()) {
    partition.union_elements = parse_elements(o.union_elems);
    partition.intersection_elements = parse_elements(o.intersection_elems);
  }
  const auto result = optimum_gain(sets, years, partition);
  Json j;
  Json names = Json::array();
  for (Element e : partition.union_elements) names.push_back(element_name(e));
  j["union"] = std::move(names);
  names = Json::array();
  for (Element e : partition.intersection_elements) names.push_back(element_name(e));
  j["intersection"] = std::move(names);
  Json mu = Json::object();
  Json real = Json::object();
  for (Element e : kFactors) {
    mu[element_name(e)] = num(result.memberships.membership(e));
    const auto& r = result.realization[index(e)];
    real[symbol(e)] = {{"year", r.year}, {"set", r.set_label}};
  }
  j["memberships"] = std::move(mu);
  j["realization"] = std::move(real);
  return single(std::move(j));
}

Output cmd_expect(const Options& o) {
  const auto dist = load_distribution(o.dist);
  return single({{"expectation", num(expectation(dist))}});
}

Output cmd_joint(const Options& o) {
  const auto joint = load_joint(o.joint);
  const auto e = joint_expectation_sum(joint);
  return single({{"e_sum", num(e.e_sum)},
                 {"e_g", num(e.e_g)},
                 {"e_q", num(e.e_q)},
                 {"e_g_plus_e_q", num(e.e_g + e.e_q)}});
}

Output cmd_ar(const Options& o) {
  const auto history = load_values(o.history, o.series);
  const ARModel model{o.intercept, o.coeffs};
  return single({{"forecast", num(ar_forecast(model, history, o.shock))}});
}

Output cmd_ma(const Options& o) {
  const MAModel model{o.coeffs};
  return single({{"q", model.q()}, {"forecast", num(ma_forecast(model, o.shocks, o.next_shock))}});
}

Output cmd_fit_ar(const Options& o) {
  const auto series = load_series(o.series);
  const auto fit = fit_ar_least_squares(series.gains(), o.order);
  Json j;
  j["order"] = o.order;
  j["intercept"] = num(fit.model.intercept);
  j["coefficients"] = num_array(fit.model.coefficients);
  j["degenerate"] = fit.degenerate;
  j["rss"] = num(fit.rss);
  j["next"] = num(ar_forecast(fit.model, series.gains()));
  return single(std::move(j));
}

Output cmd_gm(const Options& o) {
  return single({{"geometric_mean", num(geometric_mean(load_values(o.values, o.series)))}});
}

Output cmd_gm_check(const Options& o) {
  const auto c = exponential_midpoint_check(o.m, o.n, o.a1, o.a2);
  return single({{"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}, {"holds", c.holds}});
}

Output cmd_hm(const Options& o) {
  return single({{"harmonic_mean", num(harmonic_mean(load_values(o.values, o.series)))}});
}

Output cmd_md(const Options& o) {
  const auto values = load_values(o.values, o.series);
  const double center = o.center ? *o.center : arithmetic_mean(values);
  return single({{"center", num(center)},
                 {"about_mean", !o.center.has_value()},
                 {"mean_deviation", num(mean_deviation(values, center))}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Gain analysis toolkit: delta-average prediction, likelihood, support and "
               "sequence mining, fuzzy optimum gain, and classical forecasting statistics.",
               "gainprophet"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output rendering")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  std::map<CLI::App*, std::function<Output(const Options&)>> handlers;
  auto sub = [&](const char* name, const char* help, Output (*fn)(const Options&)) {
    auto* s = app.add_subcommand(name, help);
    handlers[s] = fn;
    return s;
  };
  auto series_opt = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--series", o.series, "CSV with header year,gain");
    if (required) opt->required();
  };
  auto values_opt = [&](CLI::App* s, std::vector<double>& target, const char* name,
                        const char* help) {
    return s->add_option(name, target, help)->delimiter(',');
  };

  auto* s = sub("predict", "Delta-average next-gain prediction", cmd_predict);
  series_opt(s, true);
  s->add_option("--policy", o.policy, "Step direction rule")
      ->check(CLI::IsMember({"literal", "trend"}))
      ->capture_default_str();

  s = sub("mle", "Maximum-likelihood expected gain by score-equation bisection", cmd_mle);
  series_opt(s, true);
  s->add_option("--family", o.family)
      ->check(CLI::IsMember({"normal", "exponential"}))
      ->capture_default_str();
  s->add_option("--sigma", o.sigma, "Spread of the normal family")->capture_default_str();
  s->add_option("--lo", o.lo, "Lower end of the search bracket");
  s->add_option("--hi", o.hi, "Upper end of the search bracket");
  s->add_option("--tol", o.tol, "Bracket width to stop at (default 1e-12 of the bracket)");

  s = sub("support", "Support of every factor level over an observation table", cmd_support);
  s->add_option("--table", o.table, "CSV with header year,gain,P,Q,M,R,C")->required();

  s = sub("sequence", "Boolean sequence matrix and dominant pattern", cmd_sequence);
  s->add_option("--table", o.table, "CSV with header year,gain,P,Q,M,R,C")->required();

  sub("states", "All 32 crisp factor states, one JSON object per line", cmd_states);

  s = sub("flags", "Flag year-over-year gaps well above the average gap", cmd_flags);
  series_opt(s, true);
  s->add_option("--multiplier", o.multiplier)->capture_default_str();

  s = sub("fuzzy-opt", "Fuzzy optimum gain and the year realizing each factor", cmd_fuzzy_opt);
  s->add_option("--sets", o.sets, "CSV with header label,x1,x2,x3,x4,x5[,code]")->required();
  s->add_option("--years", o.years, "CSV with header label,year")->required();
  s->add_option("--union", o.union_elems, "Elements combined by max (default x1,x2,x3)")
      ->delimiter(',');
  s->add_option("--intersection", o.intersection_elems,
                "Elements combined by min (default x4,x5)")
      ->delimiter(',');

  s = sub("expect", "Expectation of a discrete gain distribution", cmd_expect);
  s->add_option("--dist", o.dist, "CSV with header outcome,probability")->required();

  s = sub("joint", "E(G+Q) against E(G)+E(Q) for a joint distribution", cmd_joint);
  s->add_option("--joint", o.joint, "CSV with header g,q,p")->required();

  s = sub("ar", "Autoregressive one-step forecast", cmd_ar);
  s->add_option("--intercept", o.intercept)->capture_default_str();
  values_opt(s, o.coeffs, "--coeffs", "Coefficients, most recent lag first")->required();
  values_opt(s, o.history, "--history", "Past values, oldest first");
  series_opt(s, false);
  s->add_option("--shock", o.shock)->capture_default_str();

  s = sub("ma", "Moving-average one-step forecast", cmd_ma);
  values_opt(s, o.coeffs, "--coeffs", "Coefficients, most recent shock first")->required();
  values_opt(s, o.shocks, "--shocks", "Past shocks, oldest first")->required();
  s->add_option("--next-shock", o.next_shock)->capture_default_str();

  s = sub("fit-ar", "Least-squares autoregressive fit", cmd_fit_ar);
  series_opt(s, true);
  s->add_option("--order", o.order)->check(CLI::PositiveNumber)->capture_default_str();

  s = sub("gm", "Geometric mean", cmd_gm);
  values_opt(s, o.values, "--values", "Comma-separated values");
  series_opt(s, false);

  s = sub("gm-check", "Check G((a1+a2)/2) = sqrt(G(a1) G(a2)) for G(a) = m n^a", cmd_gm_check);
  s->add_option("--m", o.m)->required();
  s->add_option("--n", o.n)->required();
  s->add_option("--a1", o.a1)->required();
  s->add_option("--a2", o.a2)->required();

  s = sub("hm", "Harmonic mean", cmd_hm);
  values_opt(s, o.values, "--values", "Comma-separated values");
  series_opt(s, false);

  s = sub("md", "Mean deviation about a center (default: the mean)", cmd_md);
  values_opt(s, o.values, "--values", "Comma-separated values");
  series_opt(s, false);
  s->add_option("--center", o.center);

  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests carry exit code 0 and print to `out`.
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitInput;
  }

  try {
    for (const auto& [cmd, fn] : handlers) {
      if (cmd->parsed()) {
        const auto text = render(fn(o), o.format == "table");
        out << text;
        return kExitOk;
      }
    }
    err << "gainprophet: no subcommand\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "gainprophet: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "gainprophet: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace gainprophet::cli
