#include "dysthe/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "dysthe/dynamics.hpp"
#include "dysthe/report_io.hpp"
#include "dysthe/resonance.hpp"

namespace dysthe {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Json json;
  std::function<void(std::ostream&)> csv;
  PlotSeries plot;
  bool passed = true;
};

const std::vector<std::string> kSubcommands = {"resonance", "strichartz-l6", "strichartz-lr", "l4",
                                               "dyadic",    "bilinear",      "trilinear",     "picard",
                                               "illposed",  "viscous",       "energy"};

std::string resolve_output(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv("DYSTHE_OUTPUT_DIR");
  std::filesystem::path p(path);
  if (dir != nullptr && *dir != '\0' && p.is_relative()) return (std::filesystem::path(dir) / p).string();
  return path;
}

RandomFieldSpec field_spec(const RunConfig& c, int bandlimit) {
  return RandomFieldSpec{bandlimit, c.alpha, c.spread, c.taus_per_mode, *c.seed};
}

SweepOptions sweep(const RunConfig& c, std::vector<int> default_sizes, std::int64_t default_trials) {
  return SweepOptions{c.sizes.empty() ? std::move(default_sizes) : c.sizes, c.trials > 0 ? c.trials : default_trials,
                      c.threads};
}

PlotSeries trend_series(const RatioReport& r, const std::string& x_label) {
  PlotSeries p{x_label, "max_ratio", {}};
  for (const auto& t : r.trend) p.points.emplace_back(t.size_param, t.max_ratio);
  return p;
}

Outcome ratio_outcome(const RatioReport& report, double growth_limit, const std::string& x_label) {
  Outcome o;
  const double growth = worst_trend_growth(report);
  o.passed = report.samples > 0 && growth <= growth_limit;
  o.json = Json{{"report", to_json(report)}, {"worst_trend_growth", growth}, {"growth_limit", growth_limit},
                {"pass", o.passed}};
  o.csv = [report](std::ostream& out) { write_ratio_csv(out, report); };
  o.plot = trend_series(report, x_label);
  return o;
}

SpectralField<double> parse_field(const RunConfig& c) {
  if (!c.u0_path.empty() && !c.modes.empty()) throw UsageError("give either --u0 or --mode, not both");
  if (!c.u0_path.empty()) {
    std::ifstream in(c.u0_path);
    if (!in) throw UsageError("cannot read field file '" + c.u0_path + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const std::exception& e) {
      throw UsageError("field file '" + c.u0_path + "' is not valid JSON: " + e.what());
    }
    return spectral_field_from_json(j);
  }
  if (c.modes.empty()) throw UsageError("an initial field is required (--mode n:re:im ... or --u0 file.json)");
  Json triples = Json::array();
  for (const auto& text : c.modes) {
    std::stringstream ss(text);
    std::string a, b, d;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, d) || a.empty())
      throw UsageError("mode '" + text + "' must look like n:re:im");
    try {
      std::size_t used = 0;
      const long long n = std::stoll(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      triples.push_back(Json::array({n, std::stod(b), std::stod(d)}));
    } catch (const std::exception&) {
      throw UsageError("mode '" + text + "' must look like n:re:im");
    }
  }
  return spectral_field_from_json(triples);
}

Outcome run_resonance(const RunConfig& c) {
  Outcome o;
  if (!c.growth.empty()) {
    const auto rows = growth_report(c.growth, c.threads);
    double worst = 0;
    for (const auto& r : rows)
      if (r.has_slope) worst = std::max(worst, r.slope);
    o.passed = worst <= 1.0;
    o.json = Json{{"growth", to_json(rows)}, {"max_slope", worst}, {"pass", o.passed}};
    o.csv = [rows](std::ostream& out) {
      CsvWriter csv(out);
      csv.header({"N", "sup", "slope"});
      for (const auto& r : rows) {
        csv.cell(r.N).cell(r.sup);
        if (r.has_slope)
          csv.cell(r.slope);
        else
          csv.cell(std::string(""));
        csv.end_row();
      }
    };
    o.plot = PlotSeries{"log2_N", "log2_sup", {}};
    for (const auto& r : rows)
      if (r.N > 0) o.plot.points.emplace_back(std::log2(double(r.N)), std::log2(double(r.sup)));
    return o;
  }
  if (!c.regime.empty()) {
    Json scans = Json::array();
    for (auto N : c.regime) {
      const auto r = regime_scan(N, N);
      o.passed = o.passed && r.max_count <= 3;
      scans.push_back(to_json(r));
    }
    o.json = Json{{"regime", scans}, {"count_limit", 3}, {"pass", o.passed}};
    o.csv = [scans](std::ostream& out) {
      CsvWriter csv(out);
      csv.header({"N", "buckets_checked", "max_count"});
      for (const auto& s : scans) {
        csv.cell(s["N"].get<std::int64_t>()).cell(s["buckets_checked"].get<std::int64_t>()).cell(s["max_count"].get<std::int64_t>());
        csv.end_row();
      }
    };
    return o;
  }
  if (c.scan) {
    const auto r = sup_scan(*c.scan, c.threads);
    o.json = to_json(r);
    o.csv = [r](std::ostream& out) {
      CsvWriter csv(out);
      csv.header({"N", "n", "j", "count"});
      for (auto& [n, j] : r.witnesses) {
        csv.cell(r.N).cell(n).cell(j).cell(r.max_count);
        csv.end_row();
      }
    };
    return o;
  }
  const ResonanceQuery q{c.N, c.n, c.j};
  struct Timed {
    ResonanceResult result;
    double ms;
  };
  std::vector<Timed> results;
  auto timed = [&](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto r = fn(q);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    results.push_back({std::move(r), ms});
  };
  if (c.method == "brute" || c.method == "both") timed(count_bruteforce);
  if (c.method == "divisor" || c.method == "both") timed(count_divisor);
  if (results.empty()) throw UsageError("--method must be brute, divisor or both");
  Json arr = Json::array();
  for (const auto& r : results) arr.push_back(to_json(q, r.result));
  o.passed = results.size() < 2 || results[0].result.solutions == results[1].result.solutions;
  o.json = Json{{"results", arr}, {"agree", o.passed}};
  o.csv = [q, results](std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"N", "n", "j", "count", "method", "runtime_ms"});
    for (const auto& r : results) {
      csv.cell(q.N).cell(q.n).cell(q.j).cell(r.result.count).cell(to_string(r.result.method)).cell(r.ms);
      csv.end_row();
    }
  };
  o.plot = PlotSeries{"n1", "n2", {}};
  return o;
}

Outcome run_dyadic(const RunConfig& c) {
  const int N = c.bandlimit;
  const auto d = dyadic_report(N, c.jmax, c.kmax, c.fields > 0 ? c.fields : 20, *c.seed, c.threads);
  Outcome o;
  o.passed = d.report.samples > 0 && d.report.max_ratio <= c.tolerances.dyadic_bound && !d.monotone_growth;
  o.json = Json{{"report", to_json(d.report)},
                {"bound", c.tolerances.dyadic_bound},
                {"monotone_growth_in_k", d.monotone_growth},
                {"pass", o.passed}};
  o.csv = [r = d.report](std::ostream& out) { write_ratio_csv(out, r); };
  o.plot = trend_series(d.report, "k");
  return o;
}

Outcome run_trilinear(const RunConfig& c) {
  const std::vector<double> Ts = c.Ts.empty() ? std::vector<double>{0.5, 0.25, 0.125} : c.Ts;
  const auto tr = trilinear_report(field_spec(c, c.bandlimit), c.s.value_or(0.5), Ts, c.fields > 0 ? c.fields : 20,
                                   c.threads);
  Outcome o;
  double worst = 0, worst_z = 0;
  for (double v : tr.spreads) worst = std::max(worst, v);
  for (double v : tr.spreads_z) worst_z = std::max(worst_z, v);
  o.passed = tr.report.samples > 0 && worst <= c.tolerances.trilinear_spread;
  Json checks = Json::array();
  for (const auto& ch : tr.checks) checks.push_back(to_json(ch));
  o.json = Json{{"report", to_json(tr.report)},
                {"checks", checks},
                {"normalized_spread", worst},
                {"ratio_spread", worst_z},
                {"spread_limit", c.tolerances.trilinear_spread},
                {"pass", o.passed}};
  o.csv = [r = tr.report](std::ostream& out) { write_ratio_csv(out, r); };
  o.plot = trend_series(tr.report, "T");
  return o;
}

Outcome run_picard(const RunConfig& c) {
  const auto u0 = parse_field(c);
  if (c.picard_method != "exact" && c.picard_method != "quadrature" && c.picard_method != "both")
    throw UsageError("--method must be exact, quadrature or both");
  Outcome o;
  Json j{{"t", c.t}, {"u0", to_json(u0)}};
  SpectralField<double> shown;
  std::optional<SpectralField<double>> exact, quad;
  if (c.picard_method != "quadrature") exact = third_picard_iterate(u0, c.t, PicardMethod::exact);
  if (c.picard_method != "exact") quad = third_picard_iterate(u0, c.t, PicardMethod::quadrature, c.nodes);
  if (exact) j["exact"] = to_json(*exact);
  if (quad) j["quadrature"] = to_json(*quad);
  if (exact && quad) {
    const double diff = relative_difference(*quad, *exact);
    o.passed = diff <= c.quadrature_tolerance;
    j["rel_diff"] = diff;
    j["tolerance"] = c.quadrature_tolerance;
  }
  j["pass"] = o.passed;
  o.json = j;
  shown = exact ? *exact : *quad;
  o.csv = [shown](std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"n", "re", "im", "abs"});
    shown.for_each([&](std::int64_t n, std::complex<double> v) {
      if (v == std::complex<double>(0)) return;
      csv.cell(n).cell(v.real()).cell(v.imag()).cell(std::abs(v));
      csv.end_row();
    });
  };
  o.plot = PlotSeries{"n", "abs_u3", {}};
  shown.for_each([&](std::int64_t n, std::complex<double> v) {
    if (v != std::complex<double>(0)) o.plot.points.emplace_back(double(n), std::abs(v));
  });
  return o;
}

Outcome run_illposed(const RunConfig& c) {
  const double s = c.s.value_or(-0.5);
  const IllposedOptions opts{c.quadrature, c.nodes};
  Outcome o;
  if (!c.ms.empty()) {
    const auto sw = illposedness_sweep(c.ms, s, c.t_factor, opts);
    o.passed = std::abs(sw.fitted_slope - c.slope_target) <= c.slope_tolerance;
    o.json = to_json(sw);
    o.json["slope_target"] = c.slope_target;
    o.json["slope_tolerance"] = c.slope_tolerance;
    o.json["pass"] = o.passed;
    o.plot = PlotSeries{"log_m", "log_scaled_peak", {}};
    for (const auto& r : sw.rows) o.plot.points.emplace_back(std::log(double(r.m)), std::log(r.scaled_peak));
    o.csv = [sw](std::ostream& out) {
      CsvWriter csv(out);
      csv.header({"m", "s", "t", "peak_mode", "peak_abs", "closed_form_abs", "rel_dev", "scaled_peak", "full_abs"});
      for (const auto& r : sw.rows) {
        csv.cell(r.m).cell(r.s).cell(r.t).cell(r.peak_mode).cell(r.peak_abs).cell(r.closed_form_abs).cell(r.rel_dev);
        csv.cell(r.scaled_peak).cell(r.full_abs);
        csv.end_row();
      }
    };
    return o;
  }
  const auto r = illposedness_experiment(c.m, s, c.t_factor, opts);
  o.passed = r.rel_dev <= c.picard_tolerance;
  if (c.quadrature) o.passed = o.passed && r.quadrature_rel_diff <= c.quadrature_tolerance;
  o.json = to_json(r);
  o.json["tolerance"] = c.picard_tolerance;
  o.json["pass"] = o.passed;
  o.plot = PlotSeries{"log_m", "log_scaled_peak", {{std::log(double(r.m)), std::log(r.scaled_peak)}}};
  o.csv = [r](std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"m", "s", "t", "peak_mode", "peak_abs", "closed_form_abs", "rel_dev", "scaled_peak", "full_abs"});
    csv.cell(r.m).cell(r.s).cell(r.t).cell(r.peak_mode).cell(r.peak_abs).cell(r.closed_form_abs).cell(r.rel_dev);
    csv.cell(r.scaled_peak).cell(r.full_abs);
    csv.end_row();
  };
  return o;
}

Outcome run_viscous(const RunConfig& c) {
  const auto u0 = parse_field(c);
  const ViscousParams p{c.mu, c.dt, c.steps, !c.linear_only};
  validate(p);
  Outcome o;
  const auto traj = viscous_solve(u0, p);
  o.passed = !traj.blew_up;
  o.json = Json{{"mu", c.mu}, {"dt", c.dt}, {"steps", c.steps}, {"nonlinear", !c.linear_only}};
  Json rows = Json::array();
  for (const auto& r : traj.rows) rows.push_back(to_json(r));
  o.json["trajectory"] = rows;
  o.json["final_state"] = to_json(traj.final_state);
  o.json["blew_up"] = traj.blew_up;
  if (traj.blew_up) o.json["diagnostic"] = traj.diagnostic;
  if (c.halving) {
    const double ratio = step_halving_ratio(u0, c.mu, c.dt * static_cast<double>(c.steps), c.steps);
    const bool ok = ratio >= c.halving_low && ratio <= c.halving_high;
    o.passed = o.passed && ok;
    o.json["step_halving_ratio"] = ratio;
    o.json["halving_range"] = Json::array({c.halving_low, c.halving_high});
  }
  o.json["pass"] = o.passed;
  o.csv = [rows = traj.rows](std::ostream& out) { write_trajectory_csv(out, rows); };
  o.plot = PlotSeries{"time", "h2_norm", {}};
  for (const auto& r : traj.rows) o.plot.points.emplace_back(r.time, r.h2_norm);
  return o;
}

Outcome run_energy(const RunConfig& c) {
  const std::vector<std::int64_t> fs = c.energy_f.empty() ? std::vector<std::int64_t>{c.energy_n * c.energy_n * c.energy_n}
                                                          : c.energy_f;
  const double calib = energy_calibration_constant();
  Outcome o;
  Json rows = Json::array();
  struct Row {
    std::int64_t f;
    EnergyValue e;
    double calibrated, reference, relerr;
  };
  std::vector<Row> table;
  for (auto f : fs) {
    const auto e = energy_functional_I(vn_family(c.energy_n, f).field);
    const double calibrated = calib * e.re, reference = energy_reference_polynomial(c.energy_n, f);
    const double relerr = std::abs(calibrated - reference) / std::abs(reference);
    o.passed = o.passed && relerr <= c.energy_tolerance;
    table.push_back({f, e, calibrated, reference, relerr});
    rows.push_back(Json{{"f", f},
                        {"I", e.re},
                        {"imaginary_part", e.im},
                        {"closed_form", energy_closed_form(c.energy_n, f)},
                        {"calibrated", calibrated},
                        {"reference_polynomial", reference},
                        {"rel_err", relerr},
                        {"I_over_f", e.re / double(f)}});
  }
  o.json = Json{{"n", c.energy_n}, {"calibration_constant", calib}, {"tolerance", c.energy_tolerance}, {"rows", rows},
                {"pass", o.passed}};
  o.csv = [n = c.energy_n, table](std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"n", "f", "I", "imaginary_part", "calibrated", "reference_polynomial", "rel_err", "I_over_f"});
    for (const auto& r : table) {
      csv.cell(n).cell(r.f).cell(r.e.re).cell(r.e.im).cell(r.calibrated).cell(r.reference).cell(r.relerr);
      csv.cell(r.e.re / double(r.f));
      csv.end_row();
    }
  };
  o.plot = PlotSeries{"f", "I_over_f", {}};
  for (const auto& r : table) o.plot.points.emplace_back(double(r.f), r.e.re / double(r.f));
  return o;
}

Outcome dispatch(const RunConfig& c) {
  const std::string& cmd = c.subcommand;
  if (cmd == "resonance") return run_resonance(c);
  if (cmd == "strichartz-l6")
    return ratio_outcome(strichartz_l6_report(field_spec(c, 4), c.eps, sweep(c, {4, 8, 16}, 50)),
                         c.tolerances.trend_growth, "N");
  if (cmd == "strichartz-lr")
    return ratio_outcome(lr_strichartz_report(field_spec(c, 4), c.r, c.eps, sweep(c, {4, 8, 16}, 20)),
                         c.tolerances.trend_growth, "N");
  if (cmd == "l4") {
    SweepAxis axis;
    if (c.axis == "bandlimit")
      axis = SweepAxis::bandlimit;
    else if (c.axis == "spread")
      axis = SweepAxis::spread;
    else
      throw UsageError("--axis must be bandlimit or spread");
    const std::vector<int> sizes = axis == SweepAxis::bandlimit ? std::vector<int>{4, 8, 16} : std::vector<int>{1, 4, 16};
    return ratio_outcome(l4_ratio_report(field_spec(c, c.bandlimit), axis, sweep(c, sizes, 50)),
                         c.tolerances.trend_growth, c.axis);
  }
  if (cmd == "dyadic") return run_dyadic(c);
  if (cmd == "bilinear") {
    const auto variant = parse_bilinear_variant(c.variant);
    return ratio_outcome(bilinear_report(field_spec(c, 4), c.s.value_or(0.5), variant, sweep(c, {4, 8}, 100)),
                         c.tolerances.trend_growth, "N");
  }
  if (cmd == "trilinear") return run_trilinear(c);
  if (cmd == "picard") return run_picard(c);
  if (cmd == "illposed") return run_illposed(c);
  if (cmd == "viscous") return run_viscous(c);
  if (cmd == "energy") return run_energy(c);
  throw UsageError("unknown subcommand '" + cmd + "'");
}

}  // namespace

bool is_randomized(const std::string& subcommand) {
  return subcommand == "strichartz-l6" || subcommand == "strichartz-lr" || subcommand == "l4" ||
         subcommand == "dyadic" || subcommand == "bilinear" || subcommand == "trilinear";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.format != "json" && config.format != "csv") {
    err << "error: --format must be json or csv\n";
    return kExitUsage;
  }
  if (config.threads < 1) {
    err << "error: --threads must be at least 1\n";
    return kExitUsage;
  }
  if (is_randomized(config.subcommand) && !config.seed) {
    err << "error: --seed is required for the randomized subcommand '" << config.subcommand << "'\n";
    return kExitUsage;
  }
  Outcome outcome;
  try {
    outcome = dispatch(config);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << config.subcommand << " failed: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ostringstream body;
  if (config.format == "json") {
    Json doc{{"subcommand", config.subcommand}};
    if (config.seed) doc["seed"] = *config.seed;
    for (auto it = outcome.json.begin(); it != outcome.json.end(); ++it) doc[it.key()] = it.value();
    body << dump_json(doc) << "\n";
  } else if (outcome.csv) {
    outcome.csv(body);
  }

  const std::string path = resolve_output(config.output);
  if (path.empty()) {
    out << body.str();
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file '" << path << "' for writing\n";
      return kExitUsage;
    }
    file << body.str();
    file.flush();
    if (!file) {
      err << "error: failed writing output file '" << path << "'\n";
      return kExitUsage;
    }
  }
  if (!config.plotdata.empty()) {
    try {
      emit_plotdata(outcome.plot, resolve_output(config.plotdata));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  if (!outcome.passed) err << config.subcommand << ": check failed\n";
  return outcome.passed ? kExitSuccess : kExitCheckFailed;
}

namespace {

/// Turns a JSON config object into "--key value" arguments for keys not already on the command line.
std::vector<std::string> config_arguments(const Json& cfg, const std::vector<std::string>& given) {
  if (!cfg.is_object()) throw UsageError("config file must contain a JSON object");
  auto present = [&](const std::string& flag) {
    for (const auto& a : given)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  auto scalar = [](const Json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number() || v.is_boolean()) return v.dump();
    throw UsageError("config values must be scalars or arrays of scalars");
  };
  std::vector<std::string> args;
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string flag = "--" + it.key();
    if (it.key() == "config" || present(flag)) continue;
    const Json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back(flag);
      continue;
    }
    if (v.is_array()) {
      for (const auto& e : v) {
        args.push_back(flag);
        args.push_back(scalar(e));
      }
      continue;
    }
    args.push_back(flag);
    args.push_back(scalar(v));
  }
  return args;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Verification experiments for the periodic Dysthe equation", "dysthe"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string config_path;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file of option values; command-line flags win");
    sub->add_option("--seed", seed, "Master seed (required for randomized runs)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", c.output, "Output file (default stdout); relative paths honour DYSTHE_OUTPUT_DIR");
    sub->add_option("--plotdata", c.plotdata, "Also write an (x, y) CSV for plotting");
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto add_field_options = [&](CLI::App* sub) {
    sub->add_option("--alpha", c.alpha, "Coefficient decay exponent")->check(CLI::NonNegativeNumber);
    sub->add_option("--spread", c.spread, "Maximum |tau - P(n)| of random space-time fields")->check(CLI::NonNegativeNumber);
    sub->add_option("--taus-per-mode", c.taus_per_mode, "Random temporal frequencies per spatial mode")
        ->check(CLI::PositiveNumber);
  };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--sizes", c.sizes, "Sweep values")->delimiter(',');
    sub->add_option("--trials", c.trials, "Trials per size")->check(CLI::PositiveNumber);
    sub->add_option("--trend-growth", c.tolerances.trend_growth, "Allowed growth of the max ratio per step")
        ->check(CLI::PositiveNumber);
    add_field_options(sub);
  };
  auto add_u0 = [&](CLI::App* sub) {
    sub->add_option("--mode", c.modes, "Initial mode n:re:im (repeatable)");
    sub->add_option("--u0", c.u0_path, "Initial field as a JSON array of [n, re, im]");
  };
  std::vector<CLI::App*> subs;

  auto* res = app.add_subcommand("resonance", "Count resonant triples; sup scans and growth");
  res->add_option("--N", c.N, "Bandlimit");
  res->add_option("--n", c.n, "Total mode");
  res->add_option("--j", c.j, "Total frequency");
  res->add_option("--method", c.method, "Counting method")->check(CLI::IsMember({"brute", "divisor", "both"}));
  res->add_option("--growth", c.growth, "Bandlimits for a sup growth report")->delimiter(',');
  res->add_option("--regime", c.regime, "Bandlimits for the large |n|, |j| regime check")->delimiter(',');
  res->add_option("--scan", c.scan, "Sup scan at one bandlimit");
  subs.push_back(res);

  auto* l6 = app.add_subcommand("strichartz-l6", "L^6 / H^eps ratio sweep");
  l6->add_option("--eps", c.eps, "Sobolev exponent eps")->check(CLI::PositiveNumber);
  add_sweep(l6);
  subs.push_back(l6);

  auto* lr = app.add_subcommand("strichartz-lr", "L^r / H^{1/4-3/(2r)+eps} ratio sweep");
  lr->add_option("--r", c.r, "Even exponent r >= 6");
  lr->add_option("--eps", c.eps, "Sobolev slack eps")->check(CLI::PositiveNumber);
  add_sweep(lr);
  subs.push_back(lr);

  auto* l4 = app.add_subcommand("l4", "L^4 / X^{0,1/3} ratio sweep");
  l4->add_option("--axis", c.axis, "Swept quantity")->check(CLI::IsMember({"bandlimit", "spread"}));
  l4->add_option("--bandlimit", c.bandlimit, "Bandlimit when sweeping the spread")->check(CLI::NonNegativeNumber);
  add_sweep(l4);
  subs.push_back(l4);

  auto* dy = app.add_subcommand("dyadic", "Dyadic bilinear sweep over (j, k)");
  dy->add_option("--bandlimit", c.bandlimit, "Spatial bandlimit")->check(CLI::NonNegativeNumber);
  dy->add_option("--jmax", c.jmax, "Largest j")->check(CLI::NonNegativeNumber);
  dy->add_option("--kmax", c.kmax, "Largest k")->check(CLI::NonNegativeNumber);
  dy->add_option("--fields", c.fields, "Random fields")->check(CLI::PositiveNumber);
  dy->add_option("--dyadic-bound", c.tolerances.dyadic_bound, "Upper bound on the ratio")->check(CLI::PositiveNumber);
  subs.push_back(dy);

  auto* bi = app.add_subcommand("bilinear", "Bilinear Bourgain-space estimate sweep");
  bi->add_option("--variant", c.variant, "Estimate variant")
      ->check(CLI::IsMember({"projected", "projected-outer", "half-projected", "unprojected", "x-s0", "z-s-minus-1"}));
  bi->add_option("--s", c.s, "Regularity s");
  add_sweep(bi);
  subs.push_back(bi);

  auto* tri = app.add_subcommand("trilinear", "Windowed cubic estimate over a T sweep");
  tri->add_option("--T", c.Ts, "Window scales in (0, 1)")->delimiter(',');
  tri->add_option("--s", c.s, "Regularity s");
  tri->add_option("--bandlimit", c.bandlimit, "Spatial bandlimit")->check(CLI::NonNegativeNumber);
  tri->add_option("--fields", c.fields, "Random fields")->check(CLI::PositiveNumber);
  tri->add_option("--trilinear-spread", c.tolerances.trilinear_spread, "Allowed max/min over the T sweep")
      ->check(CLI::PositiveNumber);
  add_field_options(tri);
  subs.push_back(tri);

  auto* pic = app.add_subcommand("picard", "Third Picard iterate of a given field");
  add_u0(pic);
  pic->add_option("--t", c.t, "Time");
  pic->add_option("--method", c.picard_method, "Evaluation")->check(CLI::IsMember({"exact", "quadrature", "both"}));
  pic->add_option("--nodes", c.nodes, "Gauss nodes per panel (>= 4)");
  pic->add_option("--quadrature-tolerance", c.quadrature_tolerance, "Allowed exact/quadrature difference")
      ->check(CLI::PositiveNumber);
  subs.push_back(pic);

  auto* ill = app.add_subcommand("illposed", "Third-iterate growth for the high-frequency data");
  ill->add_option("--m", c.m, "Frequency m >= 4");
  ill->add_option("--sweep", c.ms, "m values for a slope fit")->delimiter(',');
  ill->add_option("--s", c.s, "Sobolev exponent s");
  ill->add_option("--t-factor", c.t_factor, "t = t_factor / m, at most 0.2");
  ill->add_flag("--quadrature", c.quadrature, "Also compare with the quadrature iterate");
  ill->add_option("--nodes", c.nodes, "Gauss nodes per panel");
  ill->add_option("--tolerance", c.picard_tolerance, "Allowed deviation from the closed form")->check(CLI::PositiveNumber);
  ill->add_option("--slope-tolerance", c.slope_tolerance, "Allowed slope deviation")->check(CLI::PositiveNumber);
  subs.push_back(ill);

  auto* vis = app.add_subcommand("viscous", "Integrating-factor RK4 for the viscous equation");
  add_u0(vis);
  vis->add_option("--mu", c.mu, "Viscosity")->check(CLI::PositiveNumber);
  vis->add_option("--dt", c.dt, "Time step")->check(CLI::PositiveNumber);
  vis->add_option("--steps", c.steps, "Number of steps")->check(CLI::NonNegativeNumber);
  vis->add_flag("--linear-only", c.linear_only, "Disable the nonlinearity");
  vis->add_flag("--halving", c.halving, "Report the step-halving error ratio");
  subs.push_back(vis);

  auto* en = app.add_subcommand("energy", "Energy functional on the counterexample family");
  en->add_option("--n", c.energy_n, "Mode n");
  en->add_option("--f", c.energy_f, "Values f > n")->delimiter(',');
  en->add_option("--tolerance", c.energy_tolerance, "Allowed deviation from the reference polynomial")
      ->check(CLI::PositiveNumber);
  subs.push_back(en);

  for (auto* sub : subs) add_common(sub);

  std::vector<std::string> args(argv + 1, argv + argc);
  // A config file contributes defaults for every flag not given explicitly.
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
    if (path.empty()) continue;
    std::ifstream in(path);
    if (!in) {
      err << "error: cannot read config file '" << path << "'\n";
      return kExitUsage;
    }
    try {
      const auto extra = config_arguments(Json::parse(in), args);
      std::size_t pos = 0;
      while (pos < args.size() && args[pos].rfind("-", 0) == 0) ++pos;  // after the subcommand name
      args.insert(args.begin() + static_cast<std::ptrdiff_t>(std::min(pos + 1, args.size())), extra.begin(), extra.end());
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: config file '" << path << "' is not valid JSON: " << e.what() << "\n";
      return kExitUsage;
    }
    break;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  for (auto* sub : subs) {
    if (!sub->parsed()) continue;
    c.subcommand = sub->get_name();
    if (sub->count("--seed") > 0) c.seed = seed;
    if (is_randomized(c.subcommand) && !c.seed) {
      err << "error: --seed is required for the randomized subcommand '" << c.subcommand << "'\n\n" << sub->help();
      return kExitUsage;
    }
  }
  return run(c, out, err);
}

}  // namespace dysthe
