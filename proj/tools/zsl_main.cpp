#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "zsl/errors.hpp"
#include "zsl/experiment.hpp"

namespace {

// Invalid command line or configuration.
constexpr int kUsage = 64;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw zsl::IoError("cannot read config " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

zsl::ExperimentConfig load(zsl::ExperimentId id, const std::string& path) {
  if (path.empty()) return zsl::default_config(id);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw zsl::UsageError(path + ": not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw zsl::UsageError(path + ": config must be a JSON object");
  const std::string name = zsl::to_string(id);
  if (!j.contains("experiment")) {
    j["experiment"] = name;
  } else if (j["experiment"] != name) {
    throw zsl::UsageError(path + ": experiment is " + j["experiment"].dump() +
                          " but the subcommand is " + name);
  }
  return zsl::parse_config(j.dump());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soliton-perturbed Zakharov system experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  int threads = 0;
  bool print_config = false;

  const zsl::ExperimentId ids[] = {
      zsl::ExperimentId::soliton_check, zsl::ExperimentId::evolve,
      zsl::ExperimentId::energy_drift,  zsl::ExperimentId::lambda_sweep,
      zsl::ExperimentId::symbol_scan,   zsl::ExperimentId::hyperbolic_check,
  };
  const char* help[] = {
      "ground-state residual and zero-perturbation evolution",
      "time integration with diagnostics and checkpoints",
      "energy drift at dt and dt/2",
      "subsonic limit sweep over lambda",
      "symbol inequality scans",
      "symmetric hyperbolic form checks",
  };
  std::vector<std::pair<CLI::App*, zsl::ExperimentId>> subs;
  for (std::size_t i = 0; i < std::size(ids); ++i) {
    CLI::App* sub = app.add_subcommand(zsl::to_string(ids[i]), help[i]);
    sub->add_option("--config", config_path, "experiment config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--output", output_dir, "output directory (overrides output.dir)");
    sub->add_option("--threads", threads, "worker threads for sweeps and scans")
        ->check(CLI::Range(1, 1024));
    sub->add_flag("--print-config", print_config, "print the resolved config and exit");
    subs.emplace_back(sub, ids[i]);
  }

  CLI11_PARSE(app, argc, argv);

  zsl::ExperimentId id = ids[0];
  for (const auto& [sub, sid] : subs) {
    if (sub->parsed()) id = sid;
  }

  try {
    zsl::ExperimentConfig cfg = load(id, config_path);
    if (!output_dir.empty()) cfg.output.dir = output_dir;
    if (threads > 0) cfg.threads = threads;
    cfg.validate();
    if (print_config) {
      std::cout << zsl::serialize(cfg);
      return 0;
    }
    const int code = zsl::run(cfg);
    std::cout << zsl::to_string(id) << ": "
              << (code == zsl::kOk ? "passed" : code == zsl::kGatingFailed ? "failed" : "aborted")
              << " (" << cfg.output.dir << "/summary.json)\n";
    return code;
  } catch (const zsl::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const zsl::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return zsl::kIoFailure;
  }
}
