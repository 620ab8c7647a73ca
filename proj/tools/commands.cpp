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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include <json.hpp>

#include <dzbar/dzbar.hpp>
#include <dzbar/report_json.hpp>

#include "dataset.hpp"
#include "output.hpp"

namespace dzbar::cli {

namespace {

std::string column_name(const std::vector<std::string>& predictors, Index column) {
  return column == 0 ? std::string("(intercept)")
                     : predictors[static_cast<std::size_t>(column - 1)];
}

std::string name_columns(const std::vector<std::string>& predictors,
                         const std::vector<Index>& columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ", ";
    out += column_name(predictors, columns[i]);
  }
  return out;
}

FrequencyVector load_frequencies(const Dataset& data, bool normalize) {
  try {
    return FrequencyVector(data.frequency_column(),
                           normalize ? FrequencyVector::Normalize::yes
                                     : FrequencyVector::Normalize::no);
  } catch (const ValidationError& e) {
    throw ParseDiagnostic(data.path(), 0, 0, std::string(e.what()) +
                                                 " (use --normalize-freq to rescale)");
  }
}

ContextData load_context(const Dataset& data, const std::string& outcome,
                         const std::vector<std::string>& predictors, bool normalize,
                         const std::string& label) {
  (void)data.ids();  // enforce unique ids
  FrequencyVector q = load_frequencies(data, normalize);
  const Vec z = data.numeric_column(outcome);
  Mat pred(data.rows(), static_cast<Index>(predictors.size()));
  for (std::size_t i = 0; i < predictors.size(); ++i) {
    pred.col(static_cast<Index>(i)) = data.numeric_column(predictors[i]);
  }
  return ContextData(DesignMatrix::with_intercept(pred), z, std::move(q), label);
}

Convention parse_convention(const std::string& name) {
  if (name == "paper") return Convention::initial_reference;
  if (name == "changed-ref") return Convention::changed_reference;
  return Convention::threefold;
}

// ---------------------------------------------------------------- decompose

std::string decompose_machine(const DecomposeArgs& args, const DecompositionReport& r) {
  JsonWriter w;
  begin_report(w, "decompose");

  w.key("inputs").begin_array();
  input_entry(w, "initial", args.initial_path);
  input_entry(w, "changed", args.changed_path);
  w.end_array();

  w.key("options").begin_object();
  w.field("outcome", args.outcome);
  w.key("predictors").begin_array();
  for (const std::string& p : args.predictors) w.value(p);
  w.end_array();
  w.field("convention", to_string(r.convention));
  w.field("delimiter", std::string(1, args.common.delimiter));
  w.field("normalize_freq", args.common.normalize_freq);
  w.field("drop_collinear", args.drop_collinear);
  w.end_object();

  w.key("result").begin_object();
  w.field("total_change", r.total_change);
  w.field("coefficients_fixed_term", r.coefficients_fixed_term);
  w.field("coefficient_change_term", r.coefficient_change_term);
  if (r.interaction_term) w.field("interaction_term", *r.interaction_term);
  w.field("closure_error", r.closure_error);
  w.field("mean_outcome_initial", r.mean_outcome_initial);
  w.field("mean_outcome_changed", r.mean_outcome_changed);
  w.number_array("coefficients_initial", r.coefficients_initial);
  w.number_array("coefficients_changed", r.coefficients_changed);
  w.number_array("predictor_means_initial", r.predictor_means_initial);
  w.number_array("predictor_means_changed", r.predictor_means_changed);
  w.key("per_predictor").begin_array();
  for (const PredictorContribution& c : r.per_predictor) {
    w.begin_object();
    w.field("name", column_name(args.predictors, c.column));
    w.field("coefficients_fixed", c.coefficients_fixed);
    w.field("coefficient_change", c.coefficient_change);
    if (r.interaction_term) w.field("interaction", c.interaction);
    w.end_object();
  }
  w.end_array();
  w.end_object();

  w.end_object();
  return w.str();
}

std::string decompose_table(const DecomposeArgs& args, const DecompositionReport& r,
                            Index entities_initial, Index entities_changed) {
  std::ostringstream out;
  char line[160];
  out << "decompose (" << to_string(r.convention) << " convention)\n";
  out << "  initial: " << args.initial_path << " (" << entities_initial << " entities)\n";
  out << "  changed: " << args.changed_path << " (" << entities_changed << " entities)\n\n";
  out << "  mean outcome: " << fmt6(r.mean_outcome_initial) << " -> "
      << fmt6(r.mean_outcome_changed) << "\n\n";

  std::snprintf(line, sizeof(line), "  %-24s %14s\n", "term", "value");
  out << line;
  std::snprintf(line, sizeof(line), "  %-24s %14s\n", "total change",
                fmt6(r.total_change).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "  %-24s %14s\n", "coefficients-fixed",
                fmt6(r.coefficients_fixed_term).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "  %-24s %14s\n", "coefficient-change",
                fmt6(r.coefficient_change_term).c_str());
  out << line;
  if (r.interaction_term) {
    std::snprintf(line, sizeof(line), "  %-24s %14s\n", "interaction",
                  fmt6(*r.interaction_term).c_str());
    out << line;
  }
  std::snprintf(line, sizeof(line), "  %-24s %14s\n", "closure error",
                fmt6(r.closure_error).c_str());
  out << line << "\n";

  if (r.interaction_term) {
    std::snprintf(line, sizeof(line), "  %-14s %12s %12s %12s %12s %12s\n", "predictor", "b",
                  "b'", "fixed", "change", "interaction");
  } else {
    std::snprintf(line, sizeof(line), "  %-14s %12s %12s %12s %12s\n", "predictor", "b", "b'",
                  "fixed", "change");
  }
  out << line;
  for (const PredictorContribution& c : r.per_predictor) {
    const std::string name = column_name(args.predictors, c.column);
    if (r.interaction_term) {
      std::snprintf(line, sizeof(line), "  %-14s %12s %12s %12s %12s %12s\n", name.c_str(),
                    fmt6(r.coefficients_initial[c.column]).c_str(),
                    fmt6(r.coefficients_changed[c.column]).c_str(),
                    fmt6(c.coefficients_fixed).c_str(), fmt6(c.coefficient_change).c_str(),
                    fmt6(c.interaction).c_str());
    } else {
      std::snprintf(line, sizeof(line), "  %-14s %12s %12s %12s %12s\n", name.c_str(),
                    fmt6(r.coefficients_initial[c.column]).c_str(),
                    fmt6(r.coefficients_changed[c.column]).c_str(),
                    fmt6(c.coefficients_fixed).c_str(), fmt6(c.coefficient_change).c_str());
    }
    out << line;
  }
  return out.str();
}

}  // namespace

int cmd_decompose(const DecomposeArgs& args) {
  try {
    const Dataset initial = Dataset::read_file(args.initial_path, args.common.delimiter);
    const Dataset changed = Dataset::read_file(args.changed_path, args.common.delimiter);
    const ContextData initial_ctx =
        load_context(initial, args.outcome, args.predictors, args.common.normalize_freq,
                     "initial");
    const ContextData changed_ctx =
        load_context(changed, args.outcome, args.predictors, args.common.normalize_freq,
                     "changed");

    FitOptions options;
    options.drop_dependent_columns = args.drop_collinear;
    const DecompositionReport report =
        decompose_mean_change(initial_ctx, changed_ctx, parse_convention(args.convention),
                              options);

    if (args.common.format == "machine") {
      emit(decompose_machine(args, report), args.common.out_path);
    } else {
      emit(decompose_table(args, report, initial.rows(), changed.rows()), args.common.out_path);
    }
    return exit_ok;
  } catch (const ParseDiagnostic& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_parse;
  } catch (const SchemaError& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_schema;
  } catch (const RankDeficiencyError& e) {
    std::cerr << "dzbar: rank-deficient design; collinear columns: "
              << name_columns(args.predictors, e.dependent_columns())
              << " (rerun with --drop-collinear to drop them)\n";
    return exit_degenerate;
  } catch (const DimensionError& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_schema;
  } catch (const Error& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_degenerate;
  } catch (const std::exception& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_parse;
  }
}

// -------------------------------------------------------------------- price

namespace {

struct PriceInputs {
  PairedPopulation population;
  Index entities;
};

PriceInputs load_price_inputs(const PriceArgs& args) {
  const Dataset initial = Dataset::read_file(args.initial_path, args.common.delimiter);
  const Dataset changed = Dataset::read_file(args.changed_path, args.common.delimiter);

  const std::vector<std::string> ids_initial = initial.ids();
  const std::vector<std::string> ids_changed = changed.ids();
  std::unordered_map<std::string, Index> changed_row;
  for (std::size_t r = 0; r < ids_changed.size(); ++r) {
    changed_row.emplace(ids_changed[r], static_cast<Index>(r));
  }
  std::set<std::string> initial_set(ids_initial.begin(), ids_initial.end());

  std::string unmatched;
  for (const std::string& id : ids_changed) {
    if (!initial_set.count(id)) unmatched += unmatched.empty() ? id : ", " + id;
  }
  if (!unmatched.empty()) {
    throw SchemaError("ids present only in the changed context: " + unmatched);
  }
  std::string missing;
  for (const std::string& id : ids_initial) {
    if (!changed_row.count(id)) missing += missing.empty() ? id : ", " + id;
  }
  if (!missing.empty()) {
    throw SchemaError("ids missing from the changed context (extinct entities need an explicit "
                      "freq of 0): " + missing);
  }

  FrequencyVector q = load_frequencies(initial, args.common.normalize_freq);
  const Vec z = initial.numeric_column(args.outcome);
  const Vec q_changed_raw = changed.frequency_column();
  const Vec z_changed_raw = changed.numeric_column(args.outcome);

  // reorder the changed context into the initial file's entity order
  Vec q_changed(q.size()), z_changed(q.size());
  for (Index j = 0; j < q.size(); ++j) {
    const Index r = changed_row.at(ids_initial[static_cast<std::size_t>(j)]);
    q_changed[j] = q_changed_raw[r];
    z_changed[j] = z_changed_raw[r];
  }

  std::optional<Vec> fitness;
  if (!args.fitness.empty()) {
    fitness = initial.numeric_column(args.fitness);
  }

  FrequencyVector q_changed_checked = [&] {
    try {
      return FrequencyVector(q_changed, args.common.normalize_freq
                                            ? FrequencyVector::Normalize::yes
                                            : FrequencyVector::Normalize::no);
    } catch (const ValidationError& e) {
      throw ParseDiagnostic(args.changed_path, 0, 0, std::string(e.what()) +
                                                         " (use --normalize-freq to rescale)");
    }
  }();

  const Index entities = q.size();
  return PriceInputs{PairedPopulation(std::move(q), std::move(q_changed_checked), z, z_changed,
                                      std::move(fitness)),
                     entities};
}

void price_terms_json(JsonWriter& w, const char* key, const PricePartition& p) {
  w.key(key).begin_object();
  w.field("selection_term", p.selection_term);
  w.field("transmission_term", p.transmission_term);
  w.field("total", p.total);
  w.end_object();
}

std::string price_machine(const PriceArgs& args, const PriceInputs& in,
                          const PricePartition& dot_form,
                          const std::optional<PricePartition>& cov_form, double agreement) {
  JsonWriter w;
  begin_report(w, "price");
  w.key("inputs").begin_array();
  input_entry(w, "initial", args.initial_path);
  input_entry(w, "changed", args.changed_path);
  w.end_array();

  w.key("options").begin_object();
  w.field("outcome", args.outcome);
  if (args.fitness.empty()) {
    w.key("fitness").null();
  } else {
    w.field("fitness", args.fitness);
  }
  w.field("delimiter", std::string(1, args.common.delimiter));
  w.field("normalize_freq", args.common.normalize_freq);
  w.end_object();

  w.key("result").begin_object();
  w.field("entities", static_cast<std::int64_t>(in.entities));
  price_terms_json(w, "dot_product", dot_form);
  if (cov_form) {
    price_terms_json(w, "covariance_expectation", *cov_form);
    w.field("cross_form_agreement_error", agreement);
  }
  const double direct = dot_form.total;
  w.field("direct_mean_difference", direct);
  w.end_object();

  w.end_object();
  return w.str();
}

std::string price_table(const PriceArgs& args, const PriceInputs& in,
                        const PricePartition& dot_form,
                        const std::optional<PricePartition>& cov_form, double agreement) {
  std::ostringstream out;
  char line[160];
  out << "price partition (" << in.entities << " paired entities)\n";
  out << "  initial: " << args.initial_path << "\n";
  out << "  changed: " << args.changed_path << "\n\n";
  std::snprintf(line, sizeof(line), "  %-26s %14s %14s %14s\n", "form", "selection",
                "transmission", "total");
  out << line;
  std::snprintf(line, sizeof(line), "  %-26s %14s %14s %14s\n", "dot product",
                fmt6(dot_form.selection_term).c_str(), fmt6(dot_form.transmission_term).c_str(),
                fmt6(dot_form.total).c_str());
  out << line;
  if (cov_form) {
    std::snprintf(line, sizeof(line), "  %-26s %14s %14s %14s\n", "covariance/expectation",
                  fmt6(cov_form->selection_term).c_str(),
                  fmt6(cov_form->transmission_term).c_str(), fmt6(cov_form->total).c_str());
    out << line;
    out << "\n  cross-form agreement error: " << fmt6(agreement) << "\n";
  }
  return out.str();
}

}  // namespace

int cmd_price(const PriceArgs& args) {
  try {
    const PriceInputs in = load_price_inputs(args);

    if (in.population.fitness) {
      const double mean_fitness =
          weighted_mean(*in.population.fitness, in.population.frequencies_initial);
      if (mean_fitness <= 0.0) {
        std::cerr << "dzbar: mean fitness is zero; cannot normalize\n";
        return exit_degenerate;
      }
    }

    const PricePartition dot_form = price_partition(in.population);
    std::optional<PricePartition> cov_form;
    double agreement = 0.0;
    if (in.population.fitness) {
      cov_form = price_covariance_form(in.population);
      agreement = std::max(
          {std::abs(dot_form.selection_term - cov_form->selection_term),
           std::abs(dot_form.transmission_term - cov_form->transmission_term),
           std::abs(dot_form.total - cov_form->total)});
      const double scale = std::max({1.0, std::abs(dot_form.selection_term),
                                     std::abs(dot_form.transmission_term)});
      if (agreement > 1e-9 * scale) {
        std::cerr << "dzbar: price forms disagree by " << agreement
                  << "; input frequencies are not consistent with fitness\n";
        return exit_verify_failed;
      }
    }

    if (args.common.format == "machine") {
      emit(price_machine(args, in, dot_form, cov_form, agreement), args.common.out_path);
    } else {
      emit(price_table(args, in, dot_form, cov_form, agreement), args.common.out_path);
    }
    return exit_ok;
  } catch (const ParseDiagnostic& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_parse;
  } catch (const SchemaError& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_schema;
  } catch (const DimensionError& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_schema;
  } catch (const ValidationError& e) {
    // paired-population consistency (frequencies vs fitness)
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_schema;
  } catch (const Error& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_degenerate;
  } catch (const std::exception& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_parse;
  }
}

// --------------------------------------------------------------- fisher-sim

namespace {

// Invalid config contents; the message starts with the field path.
struct ConfigFieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::int64_t config_int(const nlohmann::json& j, const std::string& field,
                        std::int64_t fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number_integer()) {
    throw ConfigFieldError(field + ": expected an integer");
  }
  return j[field].get<std::int64_t>();
}

double config_number(const nlohmann::json& j, const std::string& field, double fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number()) {
    throw ConfigFieldError(field + ": expected a number");
  }
  return j[field].get<double>();
}

SimulationConfig parse_sim_config(const nlohmann::json& j) {
  static const std::set<std::string> allowed = {
      "seed",       "loci",       "entities",         "generations",
      "additive_effects", "epistasis_magnitude", "environment_shift"};
  if (!j.is_object()) throw ConfigFieldError("(root): expected an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigFieldError(item.key() + ": unknown field");
    }
  }

  SimulationConfig config;
  const std::int64_t seed = config_int(j, "seed", static_cast<std::int64_t>(config.seed));
  if (seed < 0) throw ConfigFieldError("seed: must be nonnegative");
  config.seed = static_cast<std::uint64_t>(seed);
  config.loci = static_cast<int>(config_int(j, "loci", config.loci));
  config.entities = static_cast<int>(config_int(j, "entities", config.entities));
  config.generations = static_cast<int>(config_int(j, "generations", config.generations));
  if (j.contains("additive_effects")) {
    const auto& effects = j["additive_effects"];
    if (effects.is_number()) {
      config.additive_effects = {effects.get<double>()};
    } else if (effects.is_array()) {
      config.additive_effects.clear();
      for (const auto& e : effects) {
        if (!e.is_number()) throw ConfigFieldError("additive_effects: expected numbers");
        config.additive_effects.push_back(e.get<double>());
      }
    } else {
      throw ConfigFieldError("additive_effects: expected a number or an array of numbers");
    }
  }
  config.epistasis_magnitude =
      config_number(j, "epistasis_magnitude", config.epistasis_magnitude);
  config.environment_shift = config_number(j, "environment_shift", config.environment_shift);
  return config;
}

const char* to_string(SimulationStatus status) {
  switch (status) {
    case SimulationStatus::completed: return "completed";
    case SimulationStatus::stopped_rank_deficient: return "stopped_rank_deficient";
    case SimulationStatus::stopped_zero_fitness: return "stopped_zero_fitness";
  }
  return "?";
}

void config_json(JsonWriter& w, const SimulationConfig& config) {
  w.key("config").begin_object();
  w.field("seed", static_cast<std::uint64_t>(config.seed));
  w.field("loci", config.loci);
  w.field("entities", config.entities);
  w.field("generations", config.generations);
  w.key("additive_effects").begin_array();
  for (double s : config.additive_effects) w.value(s);
  w.end_array();
  w.field("epistasis_magnitude", config.epistasis_magnitude);
  w.field("environment_shift", config.environment_shift);
  w.end_object();
}

void summary_json(JsonWriter& w, int generation, const SelectionSummary& s) {
  w.begin_object();
  w.field("generation", generation);
  w.number_array("p", s.p_initial);
  w.number_array("p_changed", s.p_changed);
  w.number_array("delta_p", s.delta_p);
  w.number_array("marginal_fitness", s.marginal_fitness);
  w.number_array("average_excess", s.average_excess);
  w.index_array("undefined_loci", s.undefined_loci);
  w.number_array("coefficients_initial", s.coefficients_initial);
  w.number_array("coefficients_changed", s.coefficients_changed);
  w.index_array("fixed_loci_initial", s.fixed_loci_initial);
  w.index_array("fixed_loci_changed", s.fixed_loci_changed);
  w.field("ftns_term", s.ftns_term);
  w.field("environment_term", s.environment_term);
  w.field("total_change", s.total_change);
  w.field("genetic_variance", s.genetic_variance);
  w.field("closure_error", s.closure_error);
  w.end_object();
}

std::string sim_machine(const FisherSimArgs& args, const SimulationConfig& config,
                        const SimulationResult& result) {
  JsonWriter w;
  begin_report(w, "fisher-sim");
  w.key("inputs").begin_array();
  input_entry(w, "config", args.config_path);
  w.end_array();
  config_json(w, config);
  w.field("status", to_string(result.status));
  if (result.status == SimulationStatus::completed) {
    w.key("stopped_at").null();
  } else {
    w.field("stopped_at", result.stopped_at);
    w.field("message", result.message);
  }
  w.key("generations").begin_array();
  for (std::size_t t = 0; t < result.generations.size(); ++t) {
    summary_json(w, static_cast<int>(t), result.generations[t]);
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string sim_table(const SimulationConfig& config, const SimulationResult& result) {
  std::ostringstream out;
  char line[200];
  out << "fisher-sim: seed " << config.seed << ", " << config.loci << " loci, "
      << config.entities << " entities, " << config.generations << " generations\n\n";
  std::snprintf(line, sizeof(line), "  %4s %14s %14s %14s %14s %12s\n", "gen", "ftns",
                "environment", "total", "Var(g)", "closure");
  out << line;
  for (std::size_t t = 0; t < result.generations.size(); ++t) {
    const SelectionSummary& s = result.generations[t];
    std::snprintf(line, sizeof(line), "  %4zu %14s %14s %14s %14s %12s\n", t,
                  fmt6(s.ftns_term).c_str(), fmt6(s.environment_term).c_str(),
                  fmt6(s.total_change).c_str(), fmt6(s.genetic_variance).c_str(),
                  fmt6(s.closure_error).c_str());
    out << line;
  }
  out << "\n  status: " << to_string(result.status);
  if (result.status != SimulationStatus::completed) {
    out << " at generation " << result.stopped_at << " (" << result.message << ")";
  }
  out << "\n";
  return out.str();
}

}  // namespace

int cmd_fisher_sim(const FisherSimArgs& args) {
  nlohmann::json parsed;
  try {
    std::ifstream in(args.config_path, std::ios::binary);
    if (!in) {
      std::cerr << "dzbar: cannot open config " << args.config_path << "\n";
      return exit_parse;
    }
    parsed = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "dzbar: " << args.config_path << ": " << e.what() << "\n";
    return exit_parse;
  }

  SimulationConfig config;
  try {
    config = parse_sim_config(parsed);
    validate(config);
  } catch (const ConfigFieldError& e) {
    std::cerr << "dzbar: " << args.config_path << ": config." << e.what() << "\n";
    return exit_parse;
  } catch (const ValidationError& e) {
    std::cerr << "dzbar: " << args.config_path << ": config." << e.what() << "\n";
    return exit_parse;
  }

  const SimulationResult result = simulate(config);

  try {
    if (args.common.format == "machine") {
      emit(sim_machine(args, config, result), args.common.out_path);
    } else {
      emit(sim_table(config, result), args.common.out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return exit_parse;
  }
  if (result.generations.empty() && result.status != SimulationStatus::completed) {
    std::cerr << "dzbar: simulation stopped before any generation completed: "
              << result.message << "\n";
    return exit_degenerate;
  }
  return exit_ok;
}

}  // namespace dzbar::cli
