// Batch front-end for the staggered-grid Stokes/Navier-Stokes solvers.
//
//   rmac solve     one manufactured-solution run, error + conservation CSV
//   rmac converge  refinement study with dt = 1/N^2, rates table
//   rmac robust    lambda or mu sweep on a fixed grid
//   rmac conserve  zero-forcing conservation audit
//
// Runs are configured by flags or a flat key=value config file (flags win);
// every run writes the resolved configuration next to its outputs.
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <rmac/diagnostics.hpp>
#include <rmac/experiments.hpp>
#include <rmac/io.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace rmac;

namespace {

struct Options {
  std::string command;
  std::string case_name = "example1";
  std::string scheme = "rmac";
  std::string model;  // defaults per case
  int nx = 10, ny = 10;
  bool uniform = false;
  double ratio = 1.5;
  std::uint64_t seed = 1;
  std::string grid_file;       // import grid instead of generating
  double dt = 0.0;             // 0 -> use dt rule
  std::string dt_rule = "nsq"; // dt = 1/Nx^2
  double t_final = 1.0;
  double mu = 1.0;
  double lambda = 1.0;
  double tol = 1e-11;
  double picard_tol = 1e-10;
  int max_iters = 50;
  int quadrature = 6;
  std::string out_dir = "out";
  std::string snapshots;       // comma list of step indices
  std::string levels = "5,10,20,40,80";
  bool compare_mac = false;
  std::string axis = "lambda";
  std::string values;          // sweep values, defaults per axis
  bool compact = false;
  int steps = 10;
  bool save_grid = false;
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

// Flat key=value config; '#' starts a comment.  Keys mirror the long flag
// names; unknown keys are rejected before anything runs.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config", "expected key=value, got: " + line);
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t\r");
      const auto e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void add_common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--case", o.case_name)->check(CLI::IsMember({"example1", "example2"}));
  cmd->add_option("--scheme", o.scheme)->check(CLI::IsMember({"rmac", "mac"}));
  cmd->add_option("--model", o.model)->check(CLI::IsMember({"stokes", "ns"}));
  cmd->add_option("--nx", o.nx)->check(CLI::PositiveNumber);
  cmd->add_option("--ny", o.ny)->check(CLI::PositiveNumber);
  cmd->add_flag("--uniform", o.uniform);
  cmd->add_option("--ratio", o.ratio)->check(CLI::Range(1.0, 100.0));
  cmd->add_option("--seed", o.seed);
  cmd->add_option("--grid", o.grid_file);
  cmd->add_option("--dt", o.dt);
  cmd->add_option("--dt-rule", o.dt_rule)->check(CLI::IsMember({"nsq"}));
  cmd->add_option("--T", o.t_final)->check(CLI::PositiveNumber);
  cmd->add_option("--mu", o.mu)->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", o.lambda);
  cmd->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
  cmd->add_option("--picard-tol", o.picard_tol)->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", o.max_iters)->check(CLI::PositiveNumber);
  cmd->add_option("--quadrature", o.quadrature)->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out_dir);
  cmd->add_flag("--save-grid", o.save_grid);
}

Model resolve_model(const Options& o) {
  if (o.model Empty_CHECK()) {}
  return Model::stokes;
}

}  // namespace
