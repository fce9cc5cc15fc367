// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lie_check.hpp"
#include "plateau/bench.hpp"
#include "plateau/cli.hpp"
#include "plateau/correction.hpp"
#include "plateau/dynamics.hpp"
#include "plateau/fitting.hpp"
#include "plateau/polycore.hpp"
#include "reference_runs.hpp"
#include "test_support.hpp"

using namespace plateau;
using namespace plateau::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& text) {
    if (!pass) return;
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

std::string num(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Shared Lorenz experiment: defaults regenerated through the CLI config so the
// shipped defaults are what gets accepted.
struct LorenzRun {
  TimeSeries series;
  PhaseSpace space;
  PolynomialMap map;
  std::vector<std::size_t> entries;
  SurveyReport report;
  CorrectionSettings correction;
};

const LorenzRun& lorenz_run() {
  static const LorenzRun run = [] {
    cli::RunConfig config;
    config.set("fit.train_end", "140");
    config.set("survey.start", "300");
    config.set("survey.stop", "500");
    config.set("survey.step", "10");
    std::ostringstream log;
    auto series = cli::load_series(config, log);
    auto space = reconstruct(series, config.embedding());
    auto map = fit_kfold(series, space, config.fit(series.size()));
    auto entries = config.survey_entries();
    SurveyOptions options;
    options.correction = config.correction();
    auto report = survey(map, series, space, entries, options);
    return LorenzRun{std::move(series), std::move(space), std::move(map),
                     std::move(entries), std::move(report), config.correction()};
  }();
  return run;
}

Outcome metric_exactness() {
  Outcome o;
  const double a = percentage_error(-1.041455029, -0.782644049);
  const double b = percentage_error(7.225654731, 7.062374264);
  o.require(std::abs(a - 24.85090309) <= 1e-6, "entry 316 error " + num(a, 12));
  o.require(std::abs(b - 2.259732482) <= 1e-6, "entry 533 error " + num(b, 12));
  o.note(num(a, 10) + "% and " + num(b, 10) + "%");
  return o;
}

Outcome plateau_reproduction() {
  Outcome o;
  std::string found;
  for (const auto& run : {lorenz_entry_316(), lorenz_entry_533()}) {
    const auto k = find_plateau(run.magnitudes, PlateauSearch{}, run.first_k).k_star;
    o.require(k == run.k_star, "entry " + std::to_string(run.entry) + " k*=" + std::to_string(k));
    found += std::to_string(k) + " ";
  }
  for (const auto& run : {heartbeat_entry_737(), heartbeat_entry_1016()}) {
    const auto k = find_plateau(run.magnitudes, PlateauSearch{10, 10, 10}).k_star;
    o.require(k == run.k_star, "entry " + std::to_string(run.entry) + " k*=" + std::to_string(k));
    found += std::to_string(k) + " ";
  }
  o.note("k* = " + found + "(expected 5 3 1 3)");
  return o;
}

Outcome correction_formula() {
  Outcome o;
  // Reference errors of the first five corrected forecasts of entry 316.
  const std::vector<double> reference_errors{0.06845950907, 0.01821336445, 0.001257951581, 0.001901570346,
                                           0.0004798094839};
  double worst = 0.0, worst_magnitude = 0.0;
  for (const auto& run : {lorenz_entry_316(), lorenz_entry_533()}) {
    const auto deltas = signed_differences(run, +1.0);
    for (std::size_t k = 1; k < deltas.size(); ++k) {
      worst_magnitude = std::max(worst_magnitude, std::abs(std::abs(deltas[k]) - run.magnitudes[k - 1]));
    }
    const auto eps = window_from_anchor_differences(deltas, 40);
    const DifferenceTable table(40, eps, 30);
    for (std::size_t k = 1; k <= 20; ++k) {
      const double igf = corrected_forecast(run.gf, table, k);
      const double err = std::abs(igf - run.corrected[k - 1]);
      worst = std::max(worst, err);
      o.require(err <= 1e-6, "entry " + std::to_string(run.entry) + " k=" + std::to_string(k));
      if (run.entry == 316 && k <= reference_errors.size()) {
        const double pct = percentage_error(run.actual, igf);
        o.require(std::abs(pct - reference_errors[k - 1]) <= 1e-6,
                  "entry 316 error at k=" + std::to_string(k) + " is " + num(pct, 10));
      }
    }
    o.require(find_plateau(table).k_star == run.k_star, "plateau of the rebuilt table");
    if (run.entry == 533) {
      o.require(std::abs(deltas[0] - kEntry533Delta0) <= 1e-8, "entry 533 order-zero difference");
    }
  }
  o.note("max |IGF - reference| = " + num(worst, 3) + ", max magnitude mismatch " + num(worst_magnitude, 3));
  return o;
}

Outcome coefficient_counts() {
  Outcome o;
  const std::size_t per_output = enumerate_monomials(3, 5, true).size();
  o.require(per_output * 3 == 168, "count " + std::to_string(per_output * 3));
  const auto flow = build_truncated_flow_map(lorenz_field(LorenzParams{}), 4, 0.01);
  o.require(flow.max_degree() == 5, "flow map degree " + std::to_string(flow.max_degree()));
  o.note(std::to_string(per_output) + " x 3 = " + std::to_string(per_output * 3) +
         " coefficients; order-4 flow map degree " + std::to_string(flow.max_degree()));
  return o;
}

Outcome ratio_shrinkage() {
  Outcome o;
  std::string summary;
  for (unsigned order = 1; order <= 4; ++order) {
    const auto coarse = lorenz_ratio_medians(0.02, order);
    const auto fine = lorenz_ratio_medians(0.01, order);
    o.require(coarse.points_used == 50 && fine.points_used == 50, "fewer than 50 usable anchors");
    for (std::size_t k = 0; k < 3; ++k) {
      o.require(fine.by_order[k] < coarse.by_order[k],
                "N=" + std::to_string(order) + " k=" + std::to_string(k) + ": " + num(coarse.by_order[k], 3) +
                    " -> " + num(fine.by_order[k], 3));
    }
    summary += " N=" + std::to_string(order) + " k0 " + num(coarse.by_order[0], 3) + "->" +
               num(fine.by_order[0], 3);
  }
  o.note("medians shrink for N=1..4, k=0..2;" + summary);
  return o;
}

Outcome lorenz_experiment() {
  Outcome o;
  const auto& run = lorenz_run();
  std::vector<double> ratios;
  std::size_t igf_better = 0;
  for (const auto& p : run.report.log_ratio) ratios.push_back(p.value);
  for (const auto& r : run.report.records) igf_better += *r.igf_error_pct < *r.gf_error_pct;
  const double med = median(ratios);
  o.require(run.series.size() == 600, "series length");
  o.require(run.entries.size() == 21, "entry count");
  o.require(run.report.included == 21, "records in the means");
  o.require(run.report.mean_igf_error_pct <= run.report.mean_gf_error_pct / 50.0, "mean error ratio");
  o.require(med >= 4.0, "median log ratio " + num(med));
  o.note("mean GF " + num(run.report.mean_gf_error_pct) + "%, mean IGF " + num(run.report.mean_igf_error_pct) +
         "% (ratio " + num(run.report.mean_gf_error_pct / run.report.mean_igf_error_pct, 4) +
         "), median ln(GF/IGF) " + num(med, 4) + ", IGF better on " + std::to_string(igf_better) + "/21");
  return o;
}

Outcome oracle_suites() {
  Outcome o;

  // (a) binomial identity.
  std::size_t binomial_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = static_cast<std::size_t>(uniform_int(0, 12));
    const std::size_t window = k + static_cast<std::size_t>(uniform_int(0, 10));
    const auto eps = random_vector(window + 1);
    const DifferenceTable table(window, eps, k);
    double sum = 0.0;
    for (std::size_t j = 0; j <= k; ++j) sum += ((j % 2) ? -1.0 : 1.0) * binomial(k, j) * eps[window - j];
    binomial_failures += std::abs(table.at_anchor(k) - sum) > 1e-10;
  }
  o.require(binomial_failures == 0, std::to_string(binomial_failures) + " binomial mismatches");

  // (b) telescoping: gf + Σ_{k≤K} Δ^k ε(P) + Δ^{K+1} ε(P+1) = actual(P+1) on every surveyed point,
  // and the reported corrected value is the K = k* partial sum.
  const auto& run = lorenz_run();
  const std::size_t a = run.correction.window;
  double telescoping_worst = 0.0;
  for (const auto& record : run.report.records) {
    const std::size_t p = record.point_index;
    std::vector<double> actuals(a + 2), forecasts(a + 2);
    for (std::size_t i = 0; i <= a + 1; ++i) {
      const std::size_t source = p - a - 1 + i;
      forecasts[i] = predict(run.map, run.space.point(source));
      actuals[i] = run.series[run.space.newest_index(source) + 1];
    }
    const auto next = build_difference_table(actuals, forecasts, a, p + 1);
    double partial = forecasts.back();
    o.require(partial == record.gf_forecast, "GF forecast rebuilt at entry " + std::to_string(record.entry));
    for (std::size_t k = 0; k < a; ++k) {
      const auto row = next.row(k);
      partial += row[row.size() - 2];  // Δ^k ε(P)
      const double closed = partial + next.at_anchor(k + 1);
      telescoping_worst = std::max(telescoping_worst, std::abs(closed - *record.actual));
      if (record.k_star && k == *record.k_star) {
        o.require(std::abs(partial - record.igf_forecast) <= 1e-12,
                  "corrected value at entry " + std::to_string(record.entry));
      }
    }
  }
  o.require(telescoping_worst <= 1e-9, "telescoping residual " + num(telescoping_worst, 3));

  // (c) exact recovery of a quadratic delay map.
  std::vector<double> x{0.1, 0.2};
  while (x.size() < 400) {
    const std::size_t k = x.size();
    x.push_back(1.0 - 1.4 * x[k - 1] * x[k - 1] + 0.3 * x[k - 2]);
  }
  const TimeSeries henon(x);
  FitConfig fit;
  fit.include_constant = true;
  fit.training = SeriesRange{0, henon.size()};
  const auto fitted = fit_kfold(henon, reconstruct(henon, EmbeddingParams{1, 2}), fit);
  const std::vector<double> truth{1.0, 0.3, 0.0, 0.0, 0.0, -1.4};
  double recovery = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    recovery = std::max(recovery, std::abs(fitted.coefficients()[i] - truth[i]));
  }
  o.require(recovery <= 1e-6, "quadratic map recovery " + num(recovery, 3));

  // (d) Lie derivative linearity and Leibniz rule, coefficient for coefficient.
  std::size_t lie_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<MultivariatePolynomial> comps;
    for (int i = 0; i < 3; ++i) comps.push_back(random_integer_polynomial(3, 3, 4));
    const VectorField field(comps);
    const auto p = random_integer_polynomial(3, 3, 5);
    const auto q = random_integer_polynomial(3, 3, 5);
    const double s = uniform_int(-4, 4), t = uniform_int(-4, 4);
    lie_failures += !(lie_derivative(field, s * p + t * q) ==
                      s * lie_derivative(field, p) + t * lie_derivative(field, q));
    lie_failures += !(lie_derivative(field, p * q) == lie_derivative(field, p) * q + p * lie_derivative(field, q));
  }
  o.require(lie_failures == 0, std::to_string(lie_failures) + " Lie derivative mismatches");

  // (e) RK4 on x' = λx is multiplication by 1 + z + z²/2 + z³/6 + z⁴/24, z = λh.
  double rk4_worst = 0.0;
  for (double lambda : {1.0, -0.7, 2.5}) {
    const VectorField linear({lambda * MultivariatePolynomial::variable(1, 0)});
    const double h = 0.1, z = lambda * h;
    const double growth = 1.0 + z + z * z / 2 + z * z * z / 6 + z * z * z * z / 24;
    const auto traj = rk4_integrate(linear, std::vector<double>{1.0}, h, 20);
    double expected = 1.0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
      expected *= growth;
      rk4_worst = std::max(rk4_worst, std::abs(traj.state(i)[0] - expected) / std::max(1.0, std::abs(expected)));
    }
  }
  o.require(rk4_worst <= 1e-12, "RK4 closed form " + num(rk4_worst, 3));

  o.note("binomial 1000/1000, telescoping residual " + num(telescoping_worst, 3) + " over 21 points, recovery " +
         num(recovery, 3) + ", Lie 200/200, RK4 " + num(rk4_worst, 3));
  return o;
}

Outcome no_lookahead() {
  Outcome o;
  const auto& run = lorenz_run();
  std::size_t checked = 0;
  for (const auto& record : run.report.records) {
    const std::size_t target = record.target_index;
    for (double replacement : {0.0, 1e6, -run.series[target]}) {
      auto values = std::vector<double>(run.series.values().begin(), run.series.values().end());
      values[target] = replacement;
      const TimeSeries corrupted(values);
      CorrectionSettings settings = run.correction;
      settings.fallback_on_no_plateau = true;
      const auto again = forecast_improved(run.map, corrupted, reconstruct(corrupted, run.space.params()),
                                           record.point_index, settings);
      const bool same = again.gf_forecast == record.gf_forecast && again.igf_forecast == record.igf_forecast &&
                        again.k_star == record.k_star && again.delta_magnitudes == record.delta_magnitudes;
      o.require(same, "entry " + std::to_string(record.entry) + " changed");
      ++checked;
    }
  }
  o.note(std::to_string(checked) + " corrupted targets, outputs bit-identical");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 metric exactness", metric_exactness},
      {"2 plateau reproduction", plateau_reproduction},
      {"3 correction formula reproduction", correction_formula},
      {"4 coefficient counts", coefficient_counts},
      {"5 difference-ratio shrinkage with dt", ratio_shrinkage},
      {"6 end-to-end Lorenz experiment", lorenz_experiment},
      {"7 oracle suites", oracle_suites},
      {"8 no lookahead", no_lookahead},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %s (%.2fs): %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), seconds,
                outcome.detail.c_str());
    failures += !outcome.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
