// Copyright 2026 The dzbar Authors
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

// `dzbar verify`: draws random instances and checks every identity the
// library promises, reporting the worst observed closure error. Each case is
// generated from a sub-seed derived from (seed, check, case index), so a
// failure is replayable from the serialized case alone.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <dzbar/dzbar.hpp>
#include <dzbar/compensated.hpp>
#include <dzbar/report_json.hpp>
#include <dzbar/rng.hpp>

#include "commands.hpp"
#include "output.hpp"

namespace dzbar::cli {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t check, std::uint64_t index) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (check + 1) + 0x517cc1b727220a95ull * (index + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

Vec random_vector(SeededRng& rng, Index n, double lo = -10.0, double hi = 10.0) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

FrequencyVector random_frequencies(SeededRng& rng, Index n) {
  Vec w(n);
  for (Index i = 0; i < n; ++i) w[i] = rng.uniform(0.05, 1.0);
  return FrequencyVector(std::move(w), FrequencyVector::Normalize::yes);
}

DesignMatrix random_design(SeededRng& rng, Index entities, Index predictors) {
  Mat pred(entities, predictors);
  for (Index j = 0; j < entities; ++j) {
    for (Index i = 0; i < predictors; ++i) pred(j, i) = rng.uniform(-5.0, 5.0);
  }
  return DesignMatrix::with_intercept(pred);
}

ContextData random_context(SeededRng& rng, Index entities, Index predictors, const char* label) {
  DesignMatrix x = random_design(rng, entities, predictors);
  const Vec beta = random_vector(rng, predictors + 1, -3.0, 3.0);
  Vec z = x.values() * beta;
  for (Index j = 0; j < entities; ++j) z[j] += rng.uniform(-1.0, 1.0);
  return ContextData(std::move(x), std::move(z), random_frequencies(rng, entities), label);
}

HaploidPopulation random_population(SeededRng& rng, Index loci, Index entities, bool epistatic) {
  Mat geno(entities, loci + 1);
  geno.col(0) = Vec::Ones(entities);
  for (Index i = 1; i <= loci; ++i) {
    while (true) {
      double sum = 0.0;
      for (Index j = 0; j < entities; ++j) {
        geno(j, i) = rng.bernoulli(0.5) ? 1.0 : 0.0;
        sum += geno(j, i);
      }
      if (sum > 0.0 && sum < static_cast<double>(entities)) break;
    }
  }
  const Vec effects = random_vector(rng, loci, -0.1, 0.1);
  Vec fitness(entities);
  for (Index j = 0; j < entities; ++j) {
    double w = 1.0;
    for (Index i = 1; i <= loci; ++i) w += effects[i - 1] * geno(j, i);
    if (epistatic) {
      for (Index i = 1; i <= loci; ++i) {
        for (Index k = i + 1; k <= loci; ++k) {
          w += 0.05 * rng.uniform(-1.0, 1.0) * geno(j, i) * geno(j, k);
        }
      }
    }
    fitness[j] = std::max(w, 0.05);
  }
  return HaploidPopulation(DesignMatrix(std::move(geno)), random_frequencies(rng, entities),
                           std::move(fitness));
}

void matrix_json(JsonWriter& w, const char* key, const Mat& m) {
  w.key(key).begin_array();
  for (Index j = 0; j < m.rows(); ++j) {
    w.number_row(Vec(m.row(j).transpose()));
  }
  w.end_array();
}

struct CheckOutcome {
  double error = 0.0;        // worst normalized error this case
  bool pass = true;
  std::function<void(JsonWriter&)> payload;  // serializes the case inputs
};

struct CheckDef {
  const char* name;
  double tolerance;
  bool closure_metric;  // contributes to the reported worst closure error
  std::function<CheckOutcome(SeededRng&, bool)> run;  // (rng, inject_fault)
};

CheckOutcome check_product_rule(SeededRng& rng, bool inject_fault) {
  const Index n = 1 + static_cast<Index>(rng.uniform01() * 100);
  const DeltaPair b{random_vector(rng, n), random_vector(rng, n)};
  const DeltaPair x{random_vector(rng, n), random_vector(rng, n)};
  ProductRuleTerms terms = product_rule_delta(b, x);
  if (inject_fault) terms.total += 1e-3;
  const double after = dot(b.changed, x.changed);
  const double before = dot(b.initial, x.initial);
  const double scale = std::max({1.0, std::abs(after), std::abs(before)});
  CheckOutcome out;
  out.error = std::abs(terms.total - (after - before)) / scale;
  out.payload = [=](JsonWriter& w) {
    w.number_array("b_initial", b.initial);
    w.number_array("b_changed", b.changed);
    w.number_array("x_initial", x.initial);
    w.number_array("x_changed", x.changed);
  };
  return out;
}

CheckOutcome check_differential(SeededRng& rng, bool) {
  const Index n = 12;
  const Vec b = random_vector(rng, n, 0.5, 1.5);
  const Vec x = random_vector(rng, n, 0.5, 1.5);
  const Vec db0 = random_vector(rng, n, 0.5, 1.5);
  const Vec dx0 = random_vector(rng, n, 0.5, 1.5);
  const double h = 1e-2;
  const double small = differential_remainder(b, Vec(h * db0), x, Vec(h * dx0)).remainder;
  const double large = differential_remainder(b, Vec(10 * h * db0), x, Vec(10 * h * dx0)).remainder;
  const double ratio = small / large;
  CheckOutcome out;
  out.error = std::abs(ratio - 0.01);
  out.pass = ratio >= 0.005 && ratio <= 0.02;
  out.payload = [=](JsonWriter& w) {
    w.number_array("b", b);
    w.number_array("x", x);
    w.number_array("db0", db0);
    w.number_array("dx0", dx0);
    w.field("h", h);
  };
  return out;
}

CheckOutcome check_regression(SeededRng& rng, bool) {
  const Index m = 20 + static_cast<Index>(rng.uniform01() * 181);
  const Index k = 2 + static_cast<Index>(rng.uniform01() * 9);
  DesignMatrix x = random_design(rng, m, k);
  const Vec beta = random_vector(rng, k + 1, -3.0, 3.0);
  Vec z = x.values() * beta;
  for (Index j = 0; j < m; ++j) z[j] += rng.uniform(-1.0, 1.0);
  const FrequencyVector q = random_frequencies(rng, m);

  const RegressionFit fit = fit_weighted_least_squares(x, z, q);
  const double z_rms = std::sqrt(weighted_covariance(z, z, q)) + std::abs(weighted_mean(z, q));

  double worst = std::abs(weighted_mean(fit.residuals, q)) / std::max(1.0, z_rms);
  for (Index i = 0; i < x.cols(); ++i) {
    const double inner =
        compensated_dot(q.weights().cwiseProduct(fit.residuals), x.column(i));
    const double col_rms = std::sqrt(
        std::abs(weighted_mean(Vec(x.column(i).cwiseProduct(x.column(i))), q)));
    worst = std::max(worst, std::abs(inner) / std::max(1.0, col_rms * z_rms));
  }
  const double cov_gz = weighted_covariance(fit.fitted, z, q);
  const double var_g = weighted_covariance(fit.fitted, fit.fitted, q);
  worst = std::max(worst, std::abs(cov_gz - var_g) / std::max(1.0, std::abs(var_g)));

  CheckOutcome out;
  out.error = worst;
  const Mat design_values = x.values();
  out.payload = [=](JsonWriter& w) {
    matrix_json(w, "design", design_values);
    w.number_array("outcome", z);
    w.number_array("freq", q.weights());
  };
  return out;
}

CheckOutcome check_decomposition(SeededRng& rng, bool) {
  const Index k = 1 + static_cast<Index>(rng.uniform01() * 4);
  const Index m1 = k + 4 + static_cast<Index>(rng.uniform01() * 40);
  const Index m2 = k + 4 + static_cast<Index>(rng.uniform01() * 40);
  const ContextData initial = random_context(rng, m1, k, "initial");
  const ContextData changed = random_context(rng, m2, k, "changed");

  double worst = 0.0;
  for (Convention conv :
       {Convention::initial_reference, Convention::changed_reference, Convention::threefold}) {
    const DecompositionReport r = decompose_mean_change(initial, changed, conv);
    worst = std::max(worst,
                     std::abs(r.closure_error) / std::max(1.0, std::abs(r.total_change)));
  }
  CheckOutcome out;
  out.error = worst;
  const Mat xi = initial.design.values();
  const Mat xc = changed.design.values();
  const Vec zi = initial.outcome, zc = changed.outcome;
  const Vec qi = initial.frequencies.weights(), qc = changed.frequencies.weights();
  out.payload = [=](JsonWriter& w) {
    matrix_json(w, "design_initial", xi);
    w.number_array("outcome_initial", zi);
    w.number_array("freq_initial", qi);
    matrix_json(w, "design_changed", xc);
    w.number_array("outcome_changed", zc);
    w.number_array("freq_changed", qc);
  };
  return out;
}

CheckOutcome check_price(SeededRng& rng, bool) {
  const Index n = 2 + static_cast<Index>(rng.uniform01() * 40);
  FrequencyVector q = random_frequencies(rng, n);
  Vec w(n);
  for (Index j = 0; j < n; ++j) w[j] = rng.uniform(0.1, 2.0);
  const Vec scaled = normalize_fitness(w, q);
  const Vec q_changed = q.weights().cwiseProduct(scaled);
  const Vec z = random_vector(rng, n);
  const Vec z_changed = random_vector(rng, n);
  const PairedPopulation pop(FrequencyVector(q.weights()), FrequencyVector(Vec(q_changed)), z,
                             z_changed, Vec(scaled));

  const PricePartition dot_form = price_partition(pop);
  const PricePartition cov_form = price_covariance_form(pop);
  const double direct = compensated_dot(pop.frequencies_changed.weights(), z_changed) -
                        compensated_dot(pop.frequencies_initial.weights(), z);
  const double scale = std::max({1.0, std::abs(dot_form.selection_term),
                                 std::abs(dot_form.transmission_term)});
  double worst = std::abs(dot_form.selection_term - cov_form.selection_term) / scale;
  worst = std::max(worst,
                   std::abs(dot_form.transmission_term - cov_form.transmission_term) / scale);
  worst = std::max(worst, std::abs(dot_form.total - direct) / scale);
  worst = std::max(worst, std::abs(cov_form.total - direct) / scale);

  CheckOutcome out;
  out.error = worst;
  out.payload = [=, qw = pop.frequencies_initial.weights()](JsonWriter& w2) {
    w2.number_array("freq_initial", qw);
    w2.number_array("freq_changed", q_changed);
    w2.number_array("values_initial", z);
    w2.number_array("values_changed", z_changed);
    w2.number_array("fitness", scaled);
  };
  return out;
}

CheckOutcome check_fisher(SeededRng& rng, bool) {
  const Index loci = 2 + static_cast<Index>(rng.uniform01() * 7);
  const Index entities = 16 + static_cast<Index>(rng.uniform01() * 241);
  const HaploidPopulation pop = random_population(rng, loci, entities, rng.bernoulli(0.5));

  const SelectionSummary s = fundamental_theorem_term(pop);
  double worst =
      std::abs(s.ftns_term - s.genetic_variance) / std::max(1.0, std::abs(s.genetic_variance));
  worst = std::max(worst,
                   std::abs(s.closure_error) / std::max(1.0, std::abs(s.total_change)));
  const Vec via_cov = delta_p_via_covariance(pop);
  worst = std::max(worst, (via_cov - s.delta_p).cwiseAbs().maxCoeff());

  CheckOutcome out;
  out.error = worst;
  const Mat geno = pop.genotypes.values();
  const Vec q = pop.frequencies.weights(), w = pop.fitness;
  out.payload = [=](JsonWriter& wr) {
    matrix_json(wr, "genotypes", geno);
    wr.number_array("freq", q);
    wr.number_array("fitness", w);
  };
  return out;
}

CheckOutcome check_cross_module(SeededRng& rng, bool) {
  const Index loci = 2 + static_cast<Index>(rng.uniform01() * 4);
  const Index entities = 16 + static_cast<Index>(rng.uniform01() * 49);
  const HaploidPopulation pop = random_population(rng, loci, entities, rng.bernoulli(0.5));

  const SelectionSummary s = fundamental_theorem_term(pop);
  const Vec scaled = normalize_fitness(pop.fitness, pop.frequencies);
  const HaploidPopulation after = select(pop);
  const ContextData initial(DesignMatrix(pop.genotypes.values()), scaled,
                            FrequencyVector(pop.frequencies.weights()), "before");
  const ContextData changed(DesignMatrix(pop.genotypes.values()), scaled,
                            FrequencyVector(after.frequencies.weights()), "after");
  const DecompositionReport r = decompose_mean_change(initial, changed);

  CheckOutcome out;
  out.error = std::abs(r.coefficients_fixed_term - s.ftns_term) /
              std::max(1.0, std::abs(s.ftns_term));
  const Mat geno = pop.genotypes.values();
  const Vec q = pop.frequencies.weights(), w = pop.fitness;
  out.payload = [=](JsonWriter& wr) {
    matrix_json(wr, "genotypes", geno);
    wr.number_array("freq", q);
    wr.number_array("fitness", w);
  };
  return out;
}

struct CheckReport {
  const char* name;
  std::int64_t cases;
  double worst_error;
  bool pass;
};

}  // namespace

int cmd_verify(const VerifyArgs& args) {
  const std::vector<CheckDef> checks = {
      {"product-rule-closure", 1e-12, true, check_product_rule},
      {"differential-remainder", 0.01, false, check_differential},
      {"regression-identities", 1e-10, true, check_regression},
      {"decomposition-closure", 1e-10, true, check_decomposition},
      {"price-forms", 1e-12, true, check_price},
      {"fisher-identities", 1e-10, true, check_fisher},
      {"cross-module", 1e-10, true, check_cross_module},
  };

  bool inject_fault = false;
#ifdef DZBAR_FAULT_INJECTION
  inject_fault = args.inject_fault;
#endif

  std::vector<CheckReport> reports;
  double worst_closure = 0.0;
  bool all_pass = true;
  std::optional<std::string> failing_case;

  for (std::size_t c = 0; c < checks.size(); ++c) {
    const CheckDef& def = checks[c];
    double worst = 0.0;
    bool pass = true;
    for (std::int64_t i = 0; i < args.cases && pass; ++i) {
      const std::uint64_t case_seed = mix(args.seed, c, static_cast<std::uint64_t>(i));
      SeededRng rng(case_seed);
      CheckOutcome outcome;
      try {
        outcome = def.run(rng, inject_fault && i == 0);
      } catch (const Error& e) {
        outcome.error = std::numeric_limits<double>::infinity();
        outcome.pass = false;
        const std::string what = e.what();
        outcome.payload = [what](JsonWriter& w) { w.field("exception", what); };
      }
      worst = std::max(worst, outcome.error);
      if (!outcome.pass || outcome.error > def.tolerance) {
        pass = false;
        JsonWriter w;
        w.begin_object();
        w.field("check", def.name);
        w.field("case_index", i);
        w.field("case_seed", case_seed);
        w.field("seed", args.seed);
        w.field("error", outcome.error);
        w.field("tolerance", def.tolerance);
        if (outcome.payload) {
          w.key("inputs").begin_object();
          outcome.payload(w);
          w.end_object();
        }
        w.end_object();
        failing_case = w.str();
      }
    }
    if (def.closure_metric) worst_closure = std::max(worst_closure, worst);
    all_pass = all_pass && pass;
    reports.push_back({def.name, args.cases, worst, pass});
    if (!pass) break;
  }

  // report
  if (args.common.format == "machine") {
    JsonWriter w;
    begin_report(w, "verify");
    w.key("options").begin_object();
    w.field("seed", args.seed);
    w.field("cases", args.cases);
    w.end_object();
    w.key("result").begin_object();
    w.field("pass", all_pass);
    w.field("worst_closure_error", worst_closure);
    w.key("checks").begin_array();
    for (const CheckReport& r : reports) {
      w.begin_object();
      w.field("name", r.name);
      w.field("cases", r.cases);
      w.field("worst_error", r.worst_error);
      w.field("pass", r.pass);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    w.end_object();
    emit(w.str(), args.common.out_path);
  } else {
    std::ostringstream out;
    char line[160];
    out << "verify: seed " << args.seed << ", " << args.cases << " cases per check\n";
    for (const CheckReport& r : reports) {
      std::snprintf(line, sizeof(line), "  %-26s %8lld cases   worst %-12s %s\n", r.name,
                    static_cast<long long>(r.cases), fmt6(r.worst_error).c_str(),
                    r.pass ? "pass" : "FAIL");
      out << line;
    }
    out << (all_pass ? "verify: PASS" : "verify: FAIL") << " (worst closure error "
        << fmt6(worst_closure) << ")\n";
    emit(out.str(), args.common.out_path);
  }

  if (!all_pass) {
    if (failing_case) std::cerr << "dzbar: failing case for replay:\n" << *failing_case;
    return exit_verify_failed;
  }
  return exit_ok;
}

}  // namespace dzbar::cli
