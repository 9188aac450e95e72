#include <iostream>

#include "CLI11.hpp"
#include "wavecast_tools/commands.hpp"

using namespace wavecast::cli;

int main(int argc, char** argv) {
  CLI::App app{"wavecast: wave-farm power prediction, tuning and layout analysis"};
  app.require_subcommand(1, 1);

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check a 49-column site file and list every violation");
  v->add_option("--data", validate.data, "CSV file")->required();
  v->add_option("--site", validate.site, "Adelaide, Perth, Sydney or Tasmania");
  v->add_option("--max-issues", validate.max_issues, "Violations to print");

  TrainArgs train;
  std::uint64_t train_seed = 0;
  std::size_t train_jobs = 1, train_epochs = 0;
  std::string train_model;
  std::string train_data, train_output;
  auto* t = app.add_subcommand("train", "Cross-validate one model and write a run directory");
  t->add_option("--config", train.config, "Experiment config file")->required();
  auto* t_data = t->add_option("--data", train_data, "Override the data file");
  auto* t_out = t->add_option("--output", train_output, "Override the run directory");
  auto* t_seed = t->add_option("--seed", train_seed, "Override the seed");
  auto* t_jobs = t->add_option("--jobs", train_jobs, "Folds trained concurrently");
  auto* t_epochs = t->add_option("--epochs", train_epochs, "Override the epoch budget");
  auto* t_model = t->add_option("--model", train_model, "Override the model variant");
  t->add_option("--rows", train.rows, "Seeded subsample size (0 keeps every row)");

  EvaluateArgs evaluate;
  std::size_t eval_fold = 0;
  auto* e = app.add_subcommand("evaluate", "Score a saved run on a data file");
  e->add_option("--run", evaluate.run, "Run directory")->required();
  e->add_option("--data", evaluate.data, "CSV file")->required();
  auto* e_fold = e->add_option("--fold", eval_fold, "Only this fold");

  TuneArgs tune;
  std::string tune_config;
  std::uint64_t tune_seed = 0;
  std::size_t tune_jobs = 1;
  auto* u = app.add_subcommand("tune", "Search hyperparameters and write a trace and best config");
  auto* u_config = u->add_option("--config", tune_config, "Experiment config file");
  u->add_option("--optimizer", tune.optimizer, "egs, nm or random")
      ->check(CLI::IsMember({"egs", "nm", "random"}));
  u->add_option("--objective", tune.objective, "model or synthetic")
      ->check(CLI::IsMember({"model", "synthetic"}));
  u->add_option("--budget", tune.budget, "Maximum objective evaluations");
  u->add_flag("--relax", tune.relax, "Let Nelder-Mead move grid parameters continuously");
  auto* u_seed = u->add_option("--seed", tune_seed, "Override the seed");
  auto* u_jobs = u->add_option("--jobs", tune_jobs, "Folds trained concurrently");
  u->add_option("--rows", tune.rows, "Seeded subsample size (0 keeps every row)");
  u->add_option("--folds", tune.cv_folds, "Cross-validation folds per evaluation");
  u->add_option("--trace", tune.trace, "Trace CSV path");
  u->add_option("--best", tune.best, "Best configuration path");

  LandscapeArgs landscape;
  std::string land_output;
  bool no_interaction = false;
  auto* l = app.add_subcommand("landscape", "Scan the position of one more buoy over the farm");
  l->add_option("--layout", landscape.layout, "CSV with x_m,y_m of the fixed buoys")->required();
  l->add_option("--climate", landscape.climate, "CSV with hs_m,tp_s,beta_rad,occurrence")->required();
  l->add_option("--step", landscape.step, "Grid spacing in metres");
  l->add_option("--jobs", landscape.jobs, "Cells evaluated concurrently");
  l->add_flag("--no-interaction", no_interaction, "Drop the distance interaction kernel");
  auto* l_out = l->add_option("--output", land_output, "CSV path (stdout when omitted)");

  CompareArgs compare;
  std::string compare_output;
  auto* c = app.add_subcommand("compare", "Long-format metrics across run directories");
  c->add_option("--runs", compare.runs, "Run directories")->required()->expected(1, -1);
  auto* c_out = c->add_option("--output", compare_output, "CSV path (stdout when omitted)");

  GenerateArgs generate;
  generate.seed = default_seed();
  auto* g = app.add_subcommand("generate", "Write a synthetic 49-column dataset");
  g->add_option("--site", generate.site, "Site whose illustrative climate is used");
  g->add_option("--rows", generate.rows, "Number of layouts");
  g->add_option("--seed", generate.seed, "Seed");
  g->add_option("--jobs", generate.jobs, "Rows computed concurrently");
  g->add_option("--output", generate.output, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  if (*v) return cmd_validate(validate, std::cout, std::cerr);
  if (*t) {
    if (*t_data) train.data = train_data;
    if (*t_out) train.output = train_output;
    if (*t_seed) train.seed = train_seed;
    if (*t_jobs) train.jobs = train_jobs;
    if (*t_epochs) train.epochs = train_epochs;
    if (*t_model) train.model = train_model;
    return cmd_train(train, std::cout, std::cerr);
  }
  if (*e) {
    if (*e_fold) evaluate.fold = eval_fold;
    return cmd_evaluate(evaluate, std::cout, std::cerr);
  }
  if (*u) {
    if (*u_config) tune.config = tune_config;
    if (*u_seed) tune.seed = tune_seed;
    if (*u_jobs) tune.jobs = tune_jobs;
    return cmd_tune(tune, std::cout, std::cerr);
  }
  if (*l) {
    landscape.interaction = !no_interaction;
    if (*l_out) landscape.output = land_output;
    return cmd_landscape(landscape, std::cout, std::cerr);
  }
  if (*c) {
    if (*c_out) compare.output = compare_output;
    return cmd_compare(compare, std::cout, std::cerr);
  }
  if (*g) return cmd_generate(generate, std::cout, std::cerr);
  return kUsage;
}
