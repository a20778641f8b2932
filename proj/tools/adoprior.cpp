#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "adoprior/adoprior.h"

namespace {

int fail(adoprior_status st) {
  std::fprintf(stderr, "adoprior: %s: %s\n", adoprior_status_name(st), adoprior_last_error());
  return 1;
}

int env_workers() {
  const char* v = std::getenv("ADOPRIOR_WORKERS");
  if (!v || !*v) return 1;
  try {
    return std::max(1, std::stoi(v));
  } catch (const std::exception&) {
    return 1;
  }
}

struct ConfigHandle {
  adoprior_config* cfg = nullptr;
  ~ConfigHandle() { adoprior_config_free(cfg); }
};

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive design optimization under prior misinformation"};
  app.set_version_flag("--version", std::string(adoprior_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  int workers = 0;
  bool no_logs = false;
  bool snapshots = false;
  std::string dist_id, spec_id, pop_id, focus, log_path;

  auto* run = app.add_subcommand("run", "Run every cell and replication of a config");
  run->add_option("-c,--config", config_path, "Config file")->required();
  run->add_option("-o,--out", out, "Output directory")->required();
  run->add_option("-w,--workers", workers,
                  "Worker threads (default: ADOPRIOR_WORKERS or 1)");
  run->add_flag("--no-logs", no_logs, "Skip trials.jsonl");
  run->add_flag("--snapshots", snapshots, "Include belief masses in trial logs");

  auto* util = app.add_subcommand("utility", "Dump U(x) over the candidate stimuli");
  util->add_option("-c,--config", config_path, "Config file")->required();
  util->add_option("-d,--dist", dist_id, "Distribution id used as the belief")->required();
  util->add_option("-o,--out", out, "Output CSV (default: stdout)");

  auto* efd = app.add_subcommand("efd", "Dump the expected focal divergence breakdown");
  efd->add_option("-c,--config", config_path, "Config file")->required();
  efd->add_option("-s,--spec", spec_id, "Specified distribution id")->required();
  efd->add_option("-p,--pop", pop_id, "Population distribution id")->required();
  efd->add_option("-f,--focus", focus, "parameter or model (default: config focus)");
  efd->add_option("-o,--out", out, "Output CSV (default: stdout)");

  auto* summ = app.add_subcommand("summarize", "Re-aggregate a trial log");
  summ->add_option("-l,--log", log_path, "trials.jsonl from run")->required();
  summ->add_option("-o,--out", out, "Output CSV (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*summ) {
    const adoprior_status st = adoprior_summarize_log(log_path.c_str(), opt(out));
    return st == ADOPRIOR_OK ? 0 : fail(st);
  }

  ConfigHandle h;
  if (auto st = adoprior_config_load(config_path.c_str(), &h.cfg); st != ADOPRIOR_OK) {
    return fail(st);
  }

  if (*run) {
    adoprior_batch* batch = nullptr;
    const int n = workers > 0 ? workers : env_workers();
    if (auto st = adoprior_run(h.cfg, n, snapshots ? 1 : 0, &batch); st != ADOPRIOR_OK) {
      return fail(st);
    }
    const adoprior_status st = adoprior_batch_write(batch, out.c_str(), no_logs ? 0 : 1);
    adoprior_batch_info info{};
    adoprior_batch_info_get(batch, &info);
    adoprior_batch_free(batch);
    if (st != ADOPRIOR_OK) return fail(st);
    std::fprintf(stderr, "%zu cells, %zu records, %.2fs%s\n", info.n_cells, info.n_records,
                 info.wall_seconds,
                 info.floor_flag ? " (more than 1% of metric records floored)" : "");
    return 0;
  }
  if (*util) {
    const adoprior_status st = adoprior_utility_surface(h.cfg, dist_id.c_str(), opt(out));
    return st == ADOPRIOR_OK ? 0 : fail(st);
  }
  const adoprior_status st =
      adoprior_efd_surface(h.cfg, spec_id.c_str(), pop_id.c_str(), opt(focus), opt(out));
  return st == ADOPRIOR_OK ? 0 : fail(st);
}
