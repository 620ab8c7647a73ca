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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <dzbar/version.hpp>

#include "commands.hpp"

namespace {

void add_common(CLI::App* cmd, dzbar::cli::CommonOptions* common, bool with_dataset_flags) {
  cmd->add_option("--format", common->format, "Output format")
      ->check(CLI::IsMember({"table", "machine"}))
      ->envname("DZBAR_FORMAT")
      ->capture_default_str();
  cmd->add_option("--out", common->out_path, "Write the report to a file instead of stdout");
  if (with_dataset_flags) {
    cmd->add_option("--delimiter", common->delimiter, "Field delimiter")
        ->capture_default_str();
    cmd->add_flag("--normalize-freq", common->normalize_freq,
                  "Rescale freq columns that do not sum to one");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dzbar: exact decomposition of changes in weighted means"};
  app.set_version_flag("--version", std::string("dzbar ") + dzbar::kVersion);
  app.require_subcommand(1);

  dzbar::cli::DecomposeArgs decompose;
  CLI::App* cmd_d = app.add_subcommand(
      "decompose", "Split the change in a fitted mean into coefficients-fixed and "
                   "coefficient-change terms");
  cmd_d->add_option("--initial", decompose.initial_path, "Initial-context dataset")->required();
  cmd_d->add_option("--changed", decompose.changed_path, "Changed-context dataset")->required();
  cmd_d->add_option("--outcome", decompose.outcome, "Outcome column name")->required();
  cmd_d->add_option("--predictors", decompose.predictors, "Predictor column names")
      ->required()
      ->delimiter(',');
  cmd_d->add_option("--convention", decompose.convention, "Reference convention")
      ->check(CLI::IsMember({"paper", "changed-ref", "threefold"}))
      ->capture_default_str();
  cmd_d->add_flag("--drop-collinear", decompose.drop_collinear,
                  "Drop dependent design columns instead of failing");
  add_common(cmd_d, &decompose.common, true);

  dzbar::cli::PriceArgs price;
  CLI::App* cmd_p = app.add_subcommand(
      "price", "Partition the change in a population mean into selection and "
               "transmission terms (entities joined on the id column)");
  cmd_p->add_option("--initial", price.initial_path, "Initial-context dataset")->required();
  cmd_p->add_option("--changed", price.changed_path, "Changed-context dataset")->required();
  cmd_p->add_option("--outcome", price.outcome, "Trait column name")->required();
  cmd_p->add_option("--fitness", price.fitness,
                    "Fitness column in the initial dataset; enables the "
                    "covariance/expectation form");
  add_common(cmd_p, &price.common, true);

  dzbar::cli::FisherSimArgs sim;
  CLI::App* cmd_f = app.add_subcommand(
      "fisher-sim", "Run the seeded haploid selection simulator and report one "
                    "selection summary per generation");
  cmd_f->add_option("--config", sim.config_path, "JSON configuration file")->required();
  add_common(cmd_f, &sim.common, false);

  dzbar::cli::VerifyArgs verify;
  CLI::App* cmd_v = app.add_subcommand(
      "verify", "Check every library identity on random instances and report the "
                "worst closure error");
  cmd_v->add_option("--seed", verify.seed, "Base seed")->capture_default_str();
  cmd_v->add_option("--cases", verify.cases, "Random cases per check")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
#ifdef DZBAR_FAULT_INJECTION
  cmd_v->add_flag("--inject-fault", verify.inject_fault,
                  "Corrupt one internal check (fault-injection builds only)");
#endif
  add_common(cmd_v, &verify.common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "dzbar: " << e.what() << "\n";
    return dzbar::cli::exit_parse;
  }

  if (cmd_d->parsed()) return dzbar::cli::cmd_decompose(decompose);
  if (cmd_p->parsed()) return dzbar::cli::cmd_price(price);
  if (cmd_f->parsed()) return dzbar::cli::cmd_fisher_sim(sim);
  return dzbar::cli::cmd_verify(verify);
}
