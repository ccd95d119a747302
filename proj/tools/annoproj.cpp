// annoproj: project named-entity tags across a translated or parallel corpus.
//
//   annoproj translate --config run.cfg
//   annoproj project   --config run.cfg --override delta=0.3
//   annoproj evaluate  --config run.cfg
//   annoproj ablate    --config run.cfg

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "annoproj/config.h"
#include "annoproj/error.h"
#include "annoproj/pipeline.h"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
};

void AddCommonArgs(CLI::App *cmd, CommonArgs *args) {
  cmd->add_option("-c,--config", args->config_path, "Run configuration file")
      ->required();
  cmd->add_option("-o,--override", args->overrides,
                  "KEY=VALUE, applied after the config file (repeatable)");
}

annoproj::Config LoadConfig(const CommonArgs &args) {
  auto config = annoproj::Config::Load(args.config_path);
  for (const auto &o : args.overrides) config.ApplyOverride(o);
  return config;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Cross-lingual named-entity annotation projection"};
  app.set_version_flag("--version", std::string("annoproj ") + annoproj::kVersion);
  app.require_subcommand(1);

  bool list_keys = false;
  app.add_flag("--list-keys", list_keys, "Print the accepted config keys");

  CommonArgs translate_args, project_args, evaluate_args, ablate_args;
  auto *translate = app.add_subcommand(
      "translate", "Translate sentences and entities into the cache");
  auto *project = app.add_subcommand(
      "project", "Align entities and write the tagged target corpus");
  auto *evaluate =
      app.add_subcommand("evaluate", "Report miss/excess rates and F1 scores");
  auto *ablate = app.add_subcommand(
      "ablate", "Tagged-entity fraction under cumulative feature settings");
  AddCommonArgs(translate, &translate_args);
  AddCommonArgs(project, &project_args);
  AddCommonArgs(evaluate, &evaluate_args);
  AddCommonArgs(ablate, &ablate_args);

  if (argc == 2 && std::string(argv[1]) == "--list-keys") {
    for (const auto &[key, doc] : annoproj::ConfigKeyDocs()) {
      std::cout << key << "\t" << doc << "\n";
    }
    return annoproj::kExitOk;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? annoproj::kExitOk : annoproj::kExitConfig;
  }

  try {
    if (translate->parsed()) {
      annoproj::RunTranslate(LoadConfig(translate_args), std::cerr);
    } else if (project->parsed()) {
      annoproj::RunProject(LoadConfig(project_args), std::cerr);
    } else if (evaluate->parsed()) {
      annoproj::RunEvaluate(LoadConfig(evaluate_args), std::cout);
    } else if (ablate->parsed()) {
      annoproj::RunAblate(LoadConfig(ablate_args), std::cout);
    }
  } catch (const std::exception &e) {
    int rc = annoproj::ExitCodeForCurrentException();
    std::cerr << "annoproj: " << e.what() << "\n";
    return rc;
  }
  return annoproj::kExitOk;
}
