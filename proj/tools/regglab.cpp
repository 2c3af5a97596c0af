#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "regglab/experiments.hpp"

using namespace regglab;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string csv;
  unsigned threads = 1;
  int max_enum = 12;
  int max_perm = 9;
  int indent = 2;

  SeedSpec spec() const { return {seed, stream}; }
};

void add_common(CLI::App* app, Common& c, bool sweep) {
  app->set_help_flag("--help", "Print this help message and exit");
  app->add_option("--seed", c.seed, "Base seed")->envname("REGGLAB_SEED");
  app->add_option("--stream", c.stream, "Stream index under the base seed");
  app->add_option("--max-enum", c.max_enum, "Largest n for which R_d(K_n) or R_h(G) may be enumerated")->check(CLI::PositiveNumber);
  app->add_option("--indent", c.indent, "JSON indentation (-1 for one line)");
  if (sweep) {
    app->add_option("--csv", c.csv, "Also write the results table as CSV to this path");
    app->add_option("--threads", c.threads, "Worker threads for trial loops")->check(CLI::PositiveNumber);
  }
}

int emit(const ExperimentReport& r, const Common& c) {
  std::cout << serialize(r, c.indent) << '\n';
  if (!c.csv.empty()) {
    std::ofstream out(c.csv);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + c.csv);
    out << report_csv(r);
  }
  return r.all_checks_pass() ? 0 : 1;
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooLarge:
    case ErrorCode::RejectionBudgetExceeded:
    case ErrorCode::NoConvergence:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular-subgraph counting and coupling experiments"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(toolkit_version));
  app.set_config("--config", "", "Read flag defaults from a key = value file");
  app.require_subcommand(1);

  Common common;

  CountOptions count;
  std::string graph_file;
  auto* c_count = app.add_subcommand("count", "Exact |R_h(G)| with asymptotic estimates");
  c_count->add_option("--graph", graph_file, "Edge-list file: 'n m' then m lines 'u v'");
  c_count->add_option("--complete", count.complete, "Use K_n");
  c_count->add_option("--n", count.n, "Sample a d-regular graph on n vertices");
  c_count->add_option("--d", count.d, "Degree of the sampled graph");
  c_count->add_option("--h", count.h, "Subgraph degree")->capture_default_str();
  add_common(c_count, common, false);

  ConjectureOptions conj;
  auto* c_conj = app.add_subcommand("conjectures", "Moments of |R_d1(G_{d1+d2})| and the sprinkling coupling");
  c_conj->add_option("--n", conj.n)->required();
  c_conj->add_option("--d1", conj.d1)->required();
  c_conj->add_option("--d2", conj.d2)->required();
  c_conj->add_option("--mode", conj.mode)->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
  c_conj->add_option("--trials", conj.trials)->capture_default_str();
  add_common(c_conj, common, true);

  OverlapOptions ov;
  ov.alphas.clear();
  auto* c_ov = app.add_subcommand("overlap", "Law of |H1 ∩ σ(H2)| for a uniform relabelling σ");
  c_ov->add_option("--n", ov.n)->required();
  c_ov->add_option("--h", ov.h)->capture_default_str();
  c_ov->add_option("--mode", ov.mode)->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
  c_ov->add_option("--trials", ov.trials)->capture_default_str();
  c_ov->add_option("--alpha", ov.alphas, "Tail-bound alpha (repeatable; default e)");
  c_ov->add_option("--max-perm", common.max_perm, "Largest n for exhaustive permutation runs")->check(CLI::PositiveNumber);
  add_common(c_ov, common, true);

  SpectraOptions sp;
  auto* c_sp = app.add_subcommand("spectra", "log det Q against the determinant band");
  c_sp->add_option("--n", sp.n)->required();
  c_sp->add_option("--d", sp.d)->required();
  c_sp->add_option("--samples", sp.samples)->capture_default_str();
  c_sp->add_option("--regime", sp.regime)->check(CLI::IsMember({"dense", "quasirandom"}))->capture_default_str();
  c_sp->add_option("--alpha", sp.alpha, "Dense regime: d >= alpha n")->capture_default_str();
  c_sp->add_option("--eps", sp.eps, "Quasirandom regime: target deviation (0 measures it per graph)");
  add_common(c_sp, common, true);

  MomentsOptions mo;
  auto* c_mo = app.add_subcommand("moments", "Isserlis moments against Gaussian Monte Carlo");
  c_mo->add_option("--n", mo.n)->required();
  c_mo->add_option("--d", mo.d)->required();
  c_mo->add_option("--h", mo.h)->capture_default_str();
  c_mo->add_option("--samples", mo.samples)->capture_default_str();
  c_mo->add_option("--mc-trials", mo.mc_trials)->capture_default_str();
  add_common(c_mo, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_count->parsed()) {
      if (!graph_file.empty()) count.graph_file = graph_file;
      count.seed = common.spec();
      count.max_enum = common.max_enum;
      return emit(cmd_count(count), common);
    }
    if (c_conj->parsed()) {
      conj.seed = common.spec();
      conj.max_enum = common.max_enum;
      conj.threads = common.threads;
      return emit(cmd_conjectures(conj), common);
    }
    if (c_ov->parsed()) {
      if (ov.alphas.empty()) ov.alphas = {std::numbers::e};
      ov.seed = common.spec();
      ov.max_perm = common.max_perm;
      ov.threads = common.threads;
      return emit(cmd_overlap(ov), common);
    }
    if (c_sp->parsed()) {
      sp.seed = common.spec();
      sp.threads = common.threads;
      return emit(cmd_spectra(sp), common);
    }
    if (c_mo->parsed()) {
      mo.seed = common.spec();
      mo.max_enum = common.max_enum;
      mo.threads = common.threads;
      return emit(cmd_moments(mo), common);
    }
  } catch (const Error& e) {
    std::cerr << "regglab: " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "regglab: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
