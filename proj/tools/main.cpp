// coxdiv: batch front end for wall scans, automaton statistics and divergence runs.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "run.hpp"

namespace {

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

const std::vector<Flag> system_flags{
    {"--system", "system.name", "shipped Coxeter system (A2, affine-A2, pentagon, ...)"},
    {"--matrix-file", "system.matrix_file", "Coxeter matrix file"},
};

const std::map<std::string, std::string> descriptions{
    {"divergence", "divergence function Div(n; delta) of a Cayley graph"},
    {"pencil", "largest pairwise parallel wall families per gallery distance"},
    {"pwt", "empirical parallel wall constants for the simple walls"},
    {"automaton-stats", "accepted word counts per length"},
};

const std::map<std::string, std::vector<Flag>> flags_by_command{
    {"divergence",
     {{"--oracle", "oracle.kind", "sl2 | coxeter | grid | free"},
      {"--d", "oracle.d", "grid dimension"},
      {"--rank", "oracle.rank", "free group rank"},
      {"--q", "oracle.q", "field size for sl2 (2 or 3)"},
      {"--degree-bound", "oracle.degree_bound", "largest Laurent entry span for sl2"},
      {"--system", "oracle.system", "Coxeter system for the coxeter oracle"},
      {"--matrix-file", "oracle.matrix_file", "Coxeter matrix file for the coxeter oracle"},
      {"--n", "query.n", "largest pair distance"},
      {"--delta", "query.delta", "rational in (0,1), e.g. 1/2"},
      {"--lambda", "query.lambda", "rational >= 0"},
      {"--mode", "query.mode", "exhaustive | sampled"},
      {"--pairs", "query.pair_count", "sample size for sampled mode"},
      {"--seed", "query.seed", "seed for sampled mode"},
      {"--horizon-factor", "query.horizon_factor", "search horizon as a multiple of n"},
      {"--svg", "output.svg", "write the Div(n)/n chart (true/false)"}}},
    {"pencil",
     {system_flags[0], system_flags[1], {"--radius", "scan.radius", "scan radius"},
      {"--clique-bound", "scan.clique_bound", "largest wall set for exact clique search"}}},
    {"pwt",
     {system_flags[0], system_flags[1], {"--radius", "scan.radius", "scan radius"},
      {"--clique-bound", "scan.clique_bound", "largest wall set for exact clique search"},
      {"--full-orbit", "scan.full_orbit", "scan every wall meeting the half-radius ball (true/false)"}}},
    {"automaton-stats",
     {system_flags[0], system_flags[1], {"--max-length", "stats.max_length", "longest word length counted"},
      {"--language", "stats.language", "shortlex | reduced"}}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coxdiv: Coxeter wall combinatorics and exact Cayley-graph divergence"};
  app.set_version_flag("--version", COXDIV_VERSION);
  app.require_subcommand(1);

  std::map<std::string, std::map<std::string, std::optional<std::string>>> values;
  std::map<std::string, std::string> config_paths;
  std::string run_config;

  for (const auto& [command, flags] : flags_by_command) {
    auto* sub = app.add_subcommand(command, descriptions.at(command));
    auto& slot = values[command];
    sub->add_option("--config", config_paths[command], "config file; flags override its values");
    for (const auto& f : flags) sub->add_option(f.name, slot[f.key], f.help);
    sub->add_option("--workers", slot["workers"], "worker threads");
    sub->add_option("--out-dir", slot["output.dir"], "output directory");
    sub->add_option("--prefix", slot["output.prefix"], "output file prefix");
  }
  auto* run = app.add_subcommand("run", "run a config file whose 'command' key selects the subcommand");
  run->add_option("config", run_config, "config file")->required();
  std::optional<std::string> run_workers;
  run->add_option("--workers", run_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : coxdiv::cli::config_error;
  }

  try {
    if (run->parsed()) {
      auto config = coxdiv::cli::load_config_file(run_config);
      auto it = config.find("command");
      if (it == config.end()) throw coxdiv::Error(coxdiv::ErrorCode::config, "config has no 'command' key");
      if (run_workers) config["workers"] = *run_workers;
      return coxdiv::cli::run(it->second, config, std::cout, std::cerr);
    }
    for (auto* sub : app.get_subcommands()) {
      const std::string command = sub->get_name();
      coxdiv::ConfigMap config;
      if (!config_paths[command].empty()) config = coxdiv::cli::load_config_file(config_paths[command]);
      for (const auto& [key, value] : values[command])
        if (value) config[key] = *value;
      return coxdiv::cli::run(command, config, std::cout, std::cerr);
    }
  } catch (const coxdiv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return coxdiv::cli::exit_code(e.code());
  }
  return coxdiv::cli::internal_error;
}
