// Copyright 2026 The Sentinel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every subcommand echoes its effective
// configuration into the JSON report so a run can be reproduced from its
// output alone; the only non-reproducible field is `generated_at`.
//
// Exit codes: 0 success, 1 validation error (flags, files, data), 2
// analysis error (unmet hypotheses, unreachable targets).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "sentinel/case_series.hpp"
#include "sentinel/cusum.hpp"
#include "sentinel/distributions.hpp"
#include "sentinel/efficiency.hpp"
#include "sentinel/errors.hpp"
#include "sentinel/exact_test.hpp"
#include "sentinel/glr.hpp"
#include "sentinel/outbreak_sim.hpp"

namespace sn = sentinel;
using json = nlohmann::ordered_json;

namespace {

bool color_allowed() {
#ifdef _WIN32
  return false;
#else
  return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stderr));
#endif
}

void diag(const std::string& message) {
  if (color_allowed()) {
    std::cerr << "\x1b[31msentinel: error:\x1b[0m " << message << "\n";
  } else {
    std::cerr << "sentinel: error: " << message << "\n";
  }
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Temp-and-rename so partially written outputs never appear under the
// final name.
void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw sn::ParseError("cannot write '" + tmp.string() + "'");
    out << content;
  }
  fs::rename(tmp, target);
}

void emit_report(const json& report, const std::string& output) {
  const std::string text = report.dump(2) + "\n";
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    write_text_atomic(output, text);
  }
}

json dispersion_json(double dispersion) {
  if (std::isinf(dispersion)) return nullptr;  // JSON has no infinity
  return dispersion;
}

struct BaselineWindow {
  sn::Date first;
  sn::Date last;
};

BaselineWindow parse_window(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw sn::ParseError("baseline window must be DATE:DATE, got '" + spec + "'");
  }
  BaselineWindow w{sn::parse_date(spec.substr(0, colon)), sn::parse_date(spec.substr(colon + 1))};
  if (w.last < w.first) throw sn::ParseError("baseline window ends before it starts");
  return w;
}

// Shared by the cusum and glr commands: baseline counts, monitored rows.
struct MonitoredSeries {
  std::vector<std::int64_t> baseline;
  std::vector<sn::CaseRow> monitored;
};

MonitoredSeries split_series(const sn::CaseSeries& series, const std::string& stratum,
                             const BaselineWindow& window) {
  MonitoredSeries out;
  const auto rows = series.stratum_rows(stratum);
  if (rows.empty()) {
    throw sn::InvalidParameter("stratum '" + stratum + "' not present in the input");
  }
  for (const auto& row : rows) {
    if (row.date >= window.first && row.date <= window.last) {
      out.baseline.push_back(row.count);
    } else if (row.date > window.last) {
      out.monitored.push_back(row);
    }
  }
  if (out.baseline.size() < 2) {
    throw sn::InvalidParameter("baseline window covers fewer than 2 observations");
  }
  if (out.monitored.empty()) {
    throw sn::InvalidParameter("no observations after the baseline window to monitor");
  }
  return out;
}

// ---- subcommand: power ---------------------------------------------------

int cmd_power(double p0, double q, double alpha, std::int64_t n_min, std::int64_t n_max,
              const std::string& curve_out, const std::string& output) {
  sn::PowerScanner scan(p0, q, alpha, n_min);
  std::ostringstream csv;
  csv << "n,critical_value,attained_size,power\n";
  std::int64_t local_decreases = 0;
  double prev = -1.0, min_power = 1.0, max_power = 0.0;
  for (;;) {
    const double pw = scan.power();
    csv << scan.n() << ',' << scan.critical_value() << ',' << scan.attained_size() << ',' << pw
        << '\n';
    if (prev >= 0.0 && pw < prev - 1e-12) ++local_decreases;
    prev = pw;
    min_power = std::min(min_power, pw);
    max_power = std::max(max_power, pw);
    if (scan.n() == n_max) break;
    scan.advance();
  }
  if (!curve_out.empty()) write_text_atomic(curve_out, csv.str());

  json report;
  report["command"] = "power";
  report["config"] = {{"p0", p0},       {"q", q},         {"alpha", alpha},
                      {"n_min", n_min}, {"n_max", n_max}, {"curve_out", curve_out}};
  report["generated_at"] = timestamp_utc();
  report["local_decreases"] = local_decreases;
  report["min_power"] = min_power;
  report["max_power"] = max_power;
  emit_report(report, output);
  return 0;
}

// ---- subcommand: samplesize ----------------------------------------------

int cmd_samplesize(double p0, double q, double alpha, double target, const std::string& mode,
                   std::int64_t cap, const std::string& output) {
  const sn::SampleSizeMode m =
      mode == "first-hit" ? sn::SampleSizeMode::kFirstHit : sn::SampleSizeMode::kStable;
  sn::SampleSizeOptions opts;
  opts.hard_cap = cap;
  const std::int64_t n = sn::min_sample_size(p0, q, alpha, target, m, opts);

  json report;
  report["command"] = "samplesize";
  report["config"] = {{"p0", p0},        {"q", q},     {"alpha", alpha},
                      {"power", target}, {"mode", mode}, {"cap", cap}};
  report["generated_at"] = timestamp_utc();
  report["n"] = n;
  report["power_at_n"] = sn::power(sn::make_plan(n, p0, alpha), q);
  if (n > 1) {
    report["power_at_prev"] = sn::power(sn::make_plan(n - 1, p0, alpha), q);
  } else {
    report["power_at_prev"] = nullptr;
  }
  if (m == sn::SampleSizeMode::kStable) {
    report["certified_horizon"] = sn::certified_power_horizon(p0, q, alpha, target);
  }
  emit_report(report, output);
  return 0;
}

// ---- subcommand: theorem ---------------------------------------------------

json scenario_json(const sn::TheoremScenario& s) {
  json j{{"n2", s.n2}, {"p1", s.p1}, {"p2", s.p2},
         {"q1", s.q1}, {"q2", s.q2}, {"alpha", s.alpha}};
  j["nu"] = s.nu ? json(*s.nu) : json(nullptr);
  return j;
}

json report_json(const sn::TheoremReport& rep) {
  json j;
  j["scenario"] = scenario_json(rep.scenario);
  j["conditions"] = {{"alpha_ok", rep.conditions.alpha_ok},
                     {"power_ok", rep.conditions.power_ok},
                     {"alpha_threshold", rep.conditions.alpha_threshold},
                     {"power_threshold", rep.conditions.power_threshold},
                     {"reference_power", rep.conditions.reference_power}};
  j["n1_floor"] = rep.n1_floor;
  j["n1_integer"] = rep.n1_integer;
  j["lhs_power"] = rep.lhs_power;
  j["rhs_power"] = rep.rhs_power;
  j["penalty"] = rep.penalty;
  j["slack"] = rep.slack;
  j["verdict"] = rep.verdict;
  return j;
}

int cmd_theorem(std::int64_t n2, double p1, double p2, std::optional<double> nu,
                std::optional<double> q1, std::optional<double> q2, double alpha,
                std::int64_t suite, std::uint64_t seed, const std::string& output) {
  json report;
  report["command"] = "theorem";
  report["config"] = {{"n2", n2},
                      {"p1", p1},
                      {"p2", p2},
                      {"nu", nu ? json(*nu) : json(nullptr)},
                      {"q1", q1 ? json(*q1) : json(nullptr)},
                      {"q2", q2 ? json(*q2) : json(nullptr)},
                      {"alpha", alpha},
                      {"suite", suite},
                      {"seed", seed}};
  report["generated_at"] = timestamp_utc();

  if (suite > 0) {
    const auto scenarios =
        sn::sample_valid_scenarios(static_cast<std::size_t>(suite), seed);
    std::int64_t holds = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    json failures = json::array();
    for (const auto& s : scenarios) {
      const sn::TheoremReport rep = sn::verify_theorem(s);
      min_slack = std::min(min_slack, rep.slack);
      if (rep.verdict) {
        ++holds;
      } else {
        failures.push_back(report_json(rep));
      }
    }
    report["scenarios"] = suite;
    report["holds"] = holds;
    report["min_slack"] = min_slack;
    report["failures"] = failures;
    emit_report(report, output);
    return holds == suite ? 0 : 2;
  }

  sn::TheoremScenario s;
  s.n2 = n2;
  s.p1 = p1;
  s.p2 = p2;
  s.alpha = alpha;
  if (nu) {
    s.nu = *nu;
    s.q1 = *nu * p1;
    s.q2 = *nu * p2;
  } else {
    if (!q1 || !q2) {
      throw sn::InvalidParameter("provide either --nu or both --q1 and --q2");
    }
    s.q1 = *q1;
    s.q2 = *q2;
  }
  const sn::TheoremReport rep = sn::verify_theorem(s);
  report["report"] = report_json(rep);
  emit_report(report, output);
  return 0;
}

// ---- subcommand: lemmas ----------------------------------------------------

int cmd_lemmas(std::int64_t n_max, const std::string& output) {
  if (n_max < 20) throw sn::InvalidParameter("--n-max must be at least 20");
  const std::vector<double> a_grid{2.0, 4.0, 5.0, 10.0};
  const std::vector<double> p_grid{0.005, 0.01, 0.02, 0.05, 0.09, 0.15, 0.24, 0.4};

  json fams = json::object();
  bool all_ok = true;

  {
    std::int64_t checked = 0;
    json violations = json::array();
    for (std::int64_t n = 20; n <= n_max; n += 20) {
      for (double a : a_grid) {
        if (std::fmod(static_cast<double>(n), a) != 0.0) continue;
        for (double p : p_grid) {
          if (a * p >= 1.0) continue;
          const auto rep = sn::lemma1_check(n, a, p);
          ++checked;
          if (!rep.holds) {
            violations.push_back({{"n", n}, {"a", a}, {"p", p}});
            all_ok = false;
          }
        }
      }
    }
    fams["cdf_crossing"] = {{"checked", checked}, {"violations", violations}};
  }
  {
    std::int64_t checked = 0;
    json violations = json::array();
    for (std::int64_t n = 1; n <= n_max; n += 7) {
      for (double p : p_grid) {
        const auto rep = sn::lemma2_cdf_step_bound(n, p);
        ++checked;
        if (!rep.holds) {
          violations.push_back({{"n", n}, {"p", p}});
          all_ok = false;
        }
      }
    }
    fams["cdf_step_bound"] = {{"checked", checked}, {"violations", violations}};
  }
  {
    std::int64_t checked = 0, skipped = 0;
    json violations = json::array();
    for (std::int64_t n = 20; n <= n_max; n += 20) {
      for (double a : a_grid) {
        if (std::fmod(static_cast<double>(n), a) != 0.0) continue;
        for (double p : p_grid) {
          if (a * p >= 1.0) continue;
          for (double u : {0.75, 0.9, 0.95, 0.99}) {
            const auto rep = sn::lemma2_quantile_dominance(n, a, p, u);
            if (!rep.applicable) {
              ++skipped;
              continue;
            }
            ++checked;
            if (!rep.holds) {
              violations.push_back({{"n", n}, {"a", a}, {"p", p}, {"u", u}});
              all_ok = false;
            }
          }
        }
      }
    }
    fams["quantile_dominance"] = {
        {"checked", checked}, {"skipped", skipped}, {"violations", violations}};
  }
  {
    std::int64_t checked = 0, skipped = 0;
    json violations = json::array();
    for (std::int64_t n = 1; n <= n_max; n += 7) {
      for (double p : p_grid) {
        const auto rep = sn::lemma2_quasimedian(n, p);
        if (rep.lower_applicable) {
          ++checked;
          if (!rep.lower_holds) {
            violations.push_back({{"n", n}, {"p", p}, {"side", "lower"}});
            all_ok = false;
          }
        } else {
          ++skipped;
        }
        if (rep.upper_applicable) {
          ++checked;
          if (!rep.upper_holds) {
            violations.push_back({{"n", n}, {"p", p}, {"side", "upper"}});
            all_ok = false;
          }
        } else {
          ++skipped;
        }
      }
    }
    fams["quasimedian"] = {{"checked", checked}, {"skipped", skipped}, {"violations", violations}};
  }
  {
    std::int64_t checked = 0;
    json violations = json::array();
    for (std::int64_t n = 1; n <= n_max; n += 7) {
      for (double p : p_grid) {
        const double bound = sn::pmf_sup_bound(n, p);
        double max_pmf = 0.0;
        for (std::int64_t x = 0; x <= n; ++x) {
          max_pmf = std::max(max_pmf, sn::pmf(sn::BinomialLaw{n, p}, x));
        }
        ++checked;
        if (max_pmf > bound) {
          violations.push_back({{"n", n}, {"p", p}});
          all_ok = false;
        }
      }
    }
    fams["pmf_sup_bound"] = {{"checked", checked}, {"violations", violations}};
  }

  json report;
  report["command"] = "lemmas";
  report["config"] = {{"n_max", n_max}};
  report["generated_at"] = timestamp_utc();
  report["families"] = fams;
  report["all_ok"] = all_ok;
  emit_report(report, output);
  return all_ok ? 0 : 2;
}

// ---- subcommand: cusum -----------------------------------------------------

int cmd_cusum(const std::string& input, const std::string& stratum, const std::string& window_spec,
              double target_arl, double design_nu, std::optional<double> k_override,
              std::optional<double> h_override, bool allow_gaps, const std::string& trace_out,
              const std::string& output) {
  const BaselineWindow window = parse_window(window_spec);
  sn::IngestOptions ingest_opts;
  ingest_opts.allow_gaps = allow_gaps;
  const sn::CaseSeries series = sn::ingest_csv_file(input, ingest_opts);
  const MonitoredSeries split = split_series(series, stratum, window);

  double sum = 0.0;
  for (auto c : split.baseline) sum += static_cast<double>(c);
  const double lambda0 = sum / static_cast<double>(split.baseline.size());
  if (!(lambda0 > 0.0)) {
    throw sn::InvalidParameter("baseline mean must be positive to monitor");
  }

  const double k = k_override ? *k_override : sn::reference_value(lambda0, design_nu * lambda0);
  const double h = h_override ? *h_override : sn::calibrate_h(lambda0, k, target_arl);

  sn::CusumConfig cfg;
  cfg.lambda0 = lambda0;
  cfg.lambda1 = design_nu * lambda0;
  cfg.k = k;
  cfg.h = h;
  sn::validate(cfg);

  std::vector<std::int64_t> counts;
  counts.reserve(split.monitored.size());
  for (const auto& row : split.monitored) counts.push_back(row.count);
  const auto trace = sn::chart_trace(cfg, counts);

  std::optional<std::string> alarm_date;
  std::ostringstream csv;
  csv << "date,count,statistic,threshold,alarmed\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& row = split.monitored[i];
    csv << sn::format_date(row.date) << ',' << row.count << ',' << trace[i].c << ',' << h << ','
        << (trace[i].alarmed ? 1 : 0) << '\n';
    if (!alarm_date && trace[i].alarmed) alarm_date = sn::format_date(row.date);
  }
  if (!trace_out.empty()) write_text_atomic(trace_out, csv.str());

  json report;
  report["command"] = "cusum";
  report["config"] = {{"input", input},
                      {"stratum", stratum},
                      {"baseline", window_spec},
                      {"target_arl", target_arl},
                      {"design_nu", design_nu},
                      {"allow_gaps", allow_gaps},
                      {"trace_out", trace_out}};
  report["generated_at"] = timestamp_utc();
  report["baseline_days"] = split.baseline.size();
  report["lambda0"] = lambda0;
  report["k"] = k;
  report["h"] = h;
  report["monitored_days"] = split.monitored.size();
  report["alarm_date"] = alarm_date ? json(*alarm_date) : json(nullptr);
  emit_report(report, output);
  return 0;
}

// ---- subcommand: glr -------------------------------------------------------

int cmd_glr(const std::string& input, const std::string& stratum, const std::string& window_spec,
            double target_arl, std::int64_t max_window, std::int64_t reps, std::uint64_t seed,
            std::optional<double> threshold_override, std::optional<double> dispersion_override,
            bool allow_gaps, const std::string& trace_out, const std::string& output) {
  const BaselineWindow window = parse_window(window_spec);
  sn::IngestOptions ingest_opts;
  ingest_opts.allow_gaps = allow_gaps;
  const sn::CaseSeries series = sn::ingest_csv_file(input, ingest_opts);
  const MonitoredSeries split = split_series(series, stratum, window);

  const sn::BaselineFit fit = sn::estimate_baseline(split.baseline);
  if (!(fit.mean > 0.0)) {
    throw sn::InvalidParameter("baseline mean must be positive to monitor");
  }
  const double dispersion = dispersion_override ? *dispersion_override : fit.dispersion;

  sn::GlrConfig cfg;
  cfg.baseline_mean = fit.mean;
  cfg.dispersion = dispersion;
  cfg.max_window = max_window;
  if (threshold_override) {
    cfg.threshold = *threshold_override;
  } else {
    sn::GlrCalibrationOptions cal;
    cal.replications = reps;
    cal.seed = seed;
    cfg.threshold = sn::calibrate_glr_threshold(fit.mean, dispersion, max_window, target_arl, cal);
  }
  sn::validate(cfg);

  std::vector<std::int64_t> counts;
  counts.reserve(split.monitored.size());
  for (const auto& row : split.monitored) counts.push_back(row.count);
  const sn::GlrTrace trace = sn::monitor(counts, cfg);

  std::optional<std::string> alarm_date;
  std::ostringstream csv;
  csv << "date,count,statistic,threshold,alarmed\n";
  for (std::size_t i = 0; i < trace.statistic.size(); ++i) {
    const auto& row = split.monitored[i];
    const bool alarmed =
        trace.alarm_time && static_cast<std::int64_t>(i + 1) >= *trace.alarm_time;
    csv << sn::format_date(row.date) << ',' << row.count << ',' << trace.statistic[i] << ','
        << cfg.threshold << ',' << (alarmed ? 1 : 0) << '\n';
    if (!alarm_date && alarmed) alarm_date = sn::format_date(row.date);
  }
  if (!trace_out.empty()) write_text_atomic(trace_out, csv.str());

  json report;
  report["command"] = "glr";
  report["config"] = {{"input", input},
                      {"stratum", stratum},
                      {"baseline", window_spec},
                      {"target_arl", target_arl},
                      {"max_window", max_window},
                      {"replications", reps},
                      {"seed", seed},
                      {"allow_gaps", allow_gaps},
                      {"trace_out", trace_out}};
  report["generated_at"] = timestamp_utc();
  report["baseline_days"] = split.baseline.size();
  report["baseline_mean"] = fit.mean;
  report["dispersion"] = dispersion_json(dispersion);
  report["family"] = std::isinf(dispersion) ? "poisson" : "negative-binomial";
  report["threshold"] = cfg.threshold;
  report["monitored_days"] = split.monitored.size();
  report["alarm_date"] = alarm_date ? json(*alarm_date) : json(nullptr);
  emit_report(report, output);
  return 0;
}

// ---- subcommand: simulate ----------------------------------------------------

sn::SubpopSpec build_spec(const std::string& risk_model, std::int64_t m, double rate, double nu,
                          double spread, double concentration, std::uint64_t seed) {
  if (risk_model == "homogeneous") return sn::SubpopSpec::homogeneous(m, rate, nu);
  if (risk_model == "two-point") return sn::SubpopSpec::two_point(m, rate, spread, nu);
  if (risk_model == "beta") return sn::SubpopSpec::beta_profile(m, rate, concentration, nu, seed);
  throw sn::InvalidParameter("unknown risk model '" + risk_model + "'");
}

int cmd_simulate(std::int64_t m, std::int64_t n, double rate, double nu,
                 std::int64_t outbreak_start, std::int64_t horizon, std::uint64_t seed,
                 const std::string& stratum, const std::string& start_date,
                 const std::string& risk_model, double spread, double concentration,
                 const std::string& stream_out, const std::string& output) {
  const sn::SubpopSpec spec = build_spec(risk_model, m, rate, nu, spread, concentration, seed);
  const sn::SampleHandle sample = sn::draw_sample(spec, n, seed);
  const std::optional<std::int64_t> start =
      outbreak_start > 0 ? std::optional<std::int64_t>(outbreak_start) : std::nullopt;
  const sn::CaseStream stream = sn::simulate_stream(sample, spec, horizon, start, seed + 1);

  const sn::Date first = sn::parse_date(start_date);
  std::ostringstream csv;
  csv << "date,stratum,count\n";
  for (std::int64_t t = 1; t <= horizon; ++t) {
    csv << sn::format_date(first + std::chrono::days{t - 1}) << ',' << stratum << ','
        << stream.counts[static_cast<std::size_t>(t - 1)] << '\n';
  }
  if (!stream_out.empty()) {
    write_text_atomic(stream_out, csv.str());
  } else {
    std::cout << csv.str();
  }

  json report;
  report["command"] = "simulate";
  report["config"] = {{"m", m},
                      {"n", n},
                      {"rate", rate},
                      {"nu", nu},
                      {"outbreak_start", outbreak_start},
                      {"horizon", horizon},
                      {"seed", seed},
                      {"stratum", stratum},
                      {"start_date", start_date},
                      {"risk_model", risk_model},
                      {"spread", spread},
                      {"concentration", concentration},
                      {"stream_out", stream_out}};
  report["generated_at"] = timestamp_utc();
  std::int64_t total = 0;
  for (auto c : stream.counts) total += c;
  report["total_cases"] = total;
  report["days"] = horizon;
  if (!output.empty()) emit_report(report, output);
  return 0;
}

int cmd_simulate_delay(std::int64_t m, std::int64_t n2, double rate1, double rate2, double nu,
                       double target_arl, std::int64_t reps, std::uint64_t seed,
                       const std::string& chart, const std::string& risk_model, double spread,
                       double concentration, const std::string& output) {
  const sn::SubpopSpec high = build_spec(risk_model, m, rate1, nu, spread, concentration, seed);
  const sn::SubpopSpec low =
      build_spec(risk_model, m, rate2, nu, spread, concentration, seed + 1);
  sn::DelayExperimentDesign design;
  design.n2 = n2;
  design.design_nu = nu;
  design.target_arl = target_arl;
  const sn::ChartKind kind = chart == "glr" ? sn::ChartKind::kGlr : sn::ChartKind::kCusum;
  const sn::DelayExperimentReport rep =
      sn::detection_delay_experiment(high, low, kind, design, reps, seed);

  auto summary_json = [](const sn::DelaySummary& s) {
    return json{{"mean", s.mean},
                {"ci_halfwidth", s.ci_halfwidth},
                {"censored", s.censored},
                {"replications", s.replications}};
  };
  json report;
  report["command"] = "simulate";
  report["config"] = {{"experiment", "delay"},
                      {"m", m},
                      {"n2", n2},
                      {"rate1", rate1},
                      {"rate2", rate2},
                      {"nu", nu},
                      {"target_arl", target_arl},
                      {"replications", reps},
                      {"seed", seed},
                      {"chart", chart},
                      {"risk_model", risk_model},
                      {"spread", spread},
                      {"concentration", concentration}};
  report["generated_at"] = timestamp_utc();
  report["n1"] = rep.n1;
  report["n2"] = rep.n2;
  report["chart_k"] = rep.chart_k;
  report["chart_limit"] = rep.chart_limit;
  report["in_control_run_length_1"] = summary_json(rep.in_control_1);
  report["in_control_run_length_2"] = summary_json(rep.in_control_2);
  report["delay_1"] = summary_json(rep.delay_1);
  report["delay_2"] = summary_json(rep.delay_2);
  emit_report(report, output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact binomial power analysis and count-chart monitoring "
               "for stratified outbreak surveillance"};
  app.require_subcommand(1);

  // power
  auto* power_cmd = app.add_subcommand("power", "Exact power curve over a sample-size range");
  double pw_p0 = 0.0, pw_q = 0.0, pw_alpha = 0.05;
  std::int64_t pw_nmin = 1, pw_nmax = 0;
  std::string pw_curve, pw_output = "-";
  power_cmd->add_option("--p0", pw_p0, "Baseline prevalence")->required();
  power_cmd->add_option("--q", pw_q, "Alternative prevalence")->required();
  power_cmd->add_option("--alpha", pw_alpha, "Significance level");
  power_cmd->add_option("--n-min", pw_nmin, "Smallest sample size");
  power_cmd->add_option("--n-max", pw_nmax, "Largest sample size")->required();
  power_cmd->add_option("--curve-out", pw_curve, "CSV path for the curve");
  power_cmd->add_option("--output", pw_output, "JSON report path ('-' for stdout)");

  // samplesize
  auto* size_cmd = app.add_subcommand("samplesize", "Minimum sample size for a power target");
  double sz_p0 = 0.0, sz_q = 0.0, sz_alpha = 0.05, sz_power = 0.0;
  std::string sz_mode = "stable", sz_output = "-";
  std::int64_t sz_cap = 10'000'000;
  size_cmd->add_option("--p0", sz_p0, "Baseline prevalence")->required();
  size_cmd->add_option("--q", sz_q, "Alternative prevalence")->required();
  size_cmd->add_option("--alpha", sz_alpha, "Significance level");
  size_cmd->add_option("--power", sz_power, "Target power")->required();
  size_cmd->add_option("--mode", sz_mode, "first-hit or stable")
      ->check(CLI::IsMember({"first-hit", "stable"}));
  size_cmd->add_option("--cap", sz_cap, "Hard search cap");
  size_cmd->add_option("--output", sz_output, "JSON report path");

  // theorem
  auto* thm_cmd = app.add_subcommand("theorem", "Verify the sampling-efficiency inequality");
  std::int64_t th_n2 = 0, th_suite = 0;
  double th_p1 = 0.0, th_p2 = 0.0, th_alpha = 0.05;
  std::optional<double> th_nu, th_q1, th_q2;
  std::uint64_t th_seed = 1;
  std::string th_output = "-";
  thm_cmd->add_option("--n2", th_n2, "Reference sample size");
  thm_cmd->add_option("--p1", th_p1, "High baseline prevalence");
  thm_cmd->add_option("--p2", th_p2, "Low baseline prevalence");
  thm_cmd->add_option("--nu", th_nu, "Common outbreak factor");
  thm_cmd->add_option("--q1", th_q1, "High outbreak prevalence");
  thm_cmd->add_option("--q2", th_q2, "Low outbreak prevalence");
  thm_cmd->add_option("--alpha", th_alpha, "Significance level");
  thm_cmd->add_option("--suite", th_suite, "Verify this many randomized scenarios instead");
  thm_cmd->add_option("--seed", th_seed, "Scenario seed");
  thm_cmd->add_option("--output", th_output, "JSON report path");

  // lemmas
  auto* lem_cmd = app.add_subcommand("lemmas", "Exhaustive comparison-bound checks");
  std::int64_t lm_nmax = 200;
  std::string lm_output = "-";
  lem_cmd->add_option("--n-max", lm_nmax, "Largest n in the grids");
  lem_cmd->add_option("--output", lm_output, "JSON report path");

  // cusum
  auto* cusum_cmd = app.add_subcommand("cusum", "Cumulative-sum chart on a case series");
  std::string cu_input, cu_stratum, cu_window, cu_trace, cu_output = "-";
  double cu_target = 370.0, cu_nu = 1.5;
  std::optional<double> cu_k, cu_h;
  bool cu_gaps = false;
  cusum_cmd->add_option("--input", cu_input, "Case CSV (date,stratum,count)")->required();
  cusum_cmd->add_option("--stratum", cu_stratum, "Stratum label")->required();
  cusum_cmd->add_option("--baseline", cu_window, "Baseline window DATE:DATE")->required();
  cusum_cmd->add_option("--target-arl", cu_target, "In-control run-length target");
  cusum_cmd->add_option("--design-nu", cu_nu, "Design out-of-control factor");
  cusum_cmd->add_option("--k", cu_k, "Reference value override");
  cusum_cmd->add_option("--h-limit", cu_h, "Control limit override");
  cusum_cmd->add_flag("--allow-gaps", cu_gaps, "Accept missing days");
  cusum_cmd->add_option("--trace-out", cu_trace, "Trace CSV path");
  cusum_cmd->add_option("--output", cu_output, "JSON report path");

  // glr
  auto* glr_cmd = app.add_subcommand("glr", "Likelihood-ratio chart on a case series");
  std::string gl_input, gl_stratum, gl_window, gl_trace, gl_output = "-";
  double gl_target = 370.0;
  std::int64_t gl_window_days = 52, gl_reps = 500;
  std::uint64_t gl_seed = 1;
  std::optional<double> gl_threshold, gl_dispersion;
  bool gl_gaps = false;
  glr_cmd->add_option("--input", gl_input, "Case CSV (date,stratum,count)")->required();
  glr_cmd->add_option("--stratum", gl_stratum, "Stratum label")->required();
  glr_cmd->add_option("--baseline", gl_window, "Baseline window DATE:DATE")->required();
  glr_cmd->add_option("--target-arl", gl_target, "In-control run-length target");
  glr_cmd->add_option("--max-window", gl_window_days, "Change-point lookback cap");
  glr_cmd->add_option("--reps", gl_reps, "Calibration replications");
  glr_cmd->add_option("--seed", gl_seed, "Calibration seed");
  glr_cmd->add_option("--threshold", gl_threshold, "Threshold override (skips calibration)");
  glr_cmd->add_option("--dispersion", gl_dispersion, "Dispersion override");
  glr_cmd->add_flag("--allow-gaps", gl_gaps, "Accept missing days");
  glr_cmd->add_option("--trace-out", gl_trace, "Trace CSV path");
  glr_cmd->add_option("--output", gl_output, "JSON report path");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Synthetic subpopulation case streams");
  std::string si_experiment = "stream", si_stratum = "sim", si_start = "2020-01-01";
  std::string si_risk = "homogeneous", si_stream_out, si_output, si_chart = "cusum";
  std::int64_t si_m = 1000, si_n = 100, si_n2 = 100, si_outbreak = 0, si_horizon = 90,
               si_reps = 200;
  double si_rate = 0.01, si_rate2 = 0.005, si_nu = 1.5, si_spread = 0.0, si_conc = 5.0,
         si_target = 370.0;
  std::uint64_t si_seed = 1;
  sim_cmd->add_option("--experiment", si_experiment, "stream or delay")
      ->check(CLI::IsMember({"stream", "delay"}));
  sim_cmd->add_option("--m", si_m, "Population size");
  sim_cmd->add_option("--n", si_n, "Sample size (stream mode)");
  sim_cmd->add_option("--rate", si_rate, "Per-subject daily rate");
  sim_cmd->add_option("--rate2", si_rate2, "Second stratum rate (delay mode)");
  sim_cmd->add_option("--n2", si_n2, "Second stratum sample size (delay mode)");
  sim_cmd->add_option("--nu", si_nu, "Outbreak factor");
  sim_cmd->add_option("--outbreak-start", si_outbreak, "Outbreak day (0 = none)");
  sim_cmd->add_option("--horizon", si_horizon, "Days to simulate");
  sim_cmd->add_option("--target-arl", si_target, "Chart target (delay mode)");
  sim_cmd->add_option("--reps", si_reps, "Replications (delay mode)");
  sim_cmd->add_option("--chart", si_chart, "cusum or glr (delay mode)")
      ->check(CLI::IsMember({"cusum", "glr"}));
  sim_cmd->add_option("--seed", si_seed, "Simulation seed");
  sim_cmd->add_option("--stratum", si_stratum, "Stratum label for the CSV");
  sim_cmd->add_option("--start-date", si_start, "Calendar date of day 1");
  sim_cmd->add_option("--risk-model", si_risk, "homogeneous, two-point or beta")
      ->check(CLI::IsMember({"homogeneous", "two-point", "beta"}));
  sim_cmd->add_option("--spread", si_spread, "Two-point spread");
  sim_cmd->add_option("--concentration", si_conc, "Beta concentration");
  sim_cmd->add_option("--stream-out", si_stream_out, "Stream CSV path (stream mode)");
  sim_cmd->add_option("--output", si_output, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (power_cmd->parsed()) {
      return cmd_power(pw_p0, pw_q, pw_alpha, pw_nmin, pw_nmax, pw_curve, pw_output);
    }
    if (size_cmd->parsed()) {
      return cmd_samplesize(sz_p0, sz_q, sz_alpha, sz_power, sz_mode, sz_cap, sz_output);
    }
    if (thm_cmd->parsed()) {
      return cmd_theorem(th_n2, th_p1, th_p2, th_nu, th_q1, th_q2, th_alpha, th_suite, th_seed,
                         th_output);
    }
    if (lem_cmd->parsed()) {
      return cmd_lemmas(lm_nmax, lm_output);
    }
    if (cusum_cmd->parsed()) {
      return cmd_cusum(cu_input, cu_stratum, cu_window, cu_target, cu_nu, cu_k, cu_h, cu_gaps,
                       cu_trace, cu_output);
    }
    if (glr_cmd->parsed()) {
      return cmd_glr(gl_input, gl_stratum, gl_window, gl_target, gl_window_days, gl_reps, gl_seed,
                     gl_threshold, gl_dispersion, gl_gaps, gl_trace, gl_output);
    }
    if (sim_cmd->parsed()) {
      if (si_experiment == "delay") {
        return cmd_simulate_delay(si_m, si_n2, si_rate, si_rate2, si_nu, si_target, si_reps,
                                  si_seed, si_chart, si_risk, si_spread, si_conc, si_output);
      }
      return cmd_simulate(si_m, si_n, si_rate, si_nu, si_outbreak, si_horizon, si_seed,
                          si_stratum, si_start, si_risk, si_spread, si_conc, si_stream_out,
                          si_output);
    }
  } catch (const sn::ParseError& e) {
    diag(e.what());
    return 1;
  } catch (const sn::InvariantViolation& e) {
    diag(e.what());
    return 1;
  } catch (const sn::InvalidParameter& e) {
    diag(e.what());
    return 1;
  } catch (const sn::PreconditionsUnmet& e) {
    diag(e.what());
    return 2;
  } catch (const std::exception& e) {
    diag(e.what());
    return 2;
  }
  return 0;
}
