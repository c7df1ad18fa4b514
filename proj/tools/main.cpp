// Command line front end for the Borda manipulation solvers.
//
// Exit codes: 0 solved (and matched --expect if given), 1 verdict differs
// from --expect, 2 bad input or usage, 3 a resource guard tripped, 70 an
// internal consistency check failed.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "borda/election.hpp"
#include "borda/errors.hpp"
#include "borda/fmm.hpp"
#include "borda/io.hpp"
#include "borda/oracle.hpp"
#include "borda/single_peaked.hpp"
#include "borda/ubm.hpp"
#include "borda/wbm.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitExpectMismatch = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;
constexpr int kExitInternalError = 70;

struct SolveArgs {
  std::string problem;
  std::string input;
  std::string export_ilp;
  std::string expect;
  bool certify = false;
  bool oracle = false;
  bool dump_table = false;
  bool no_timing = false;
  std::uint64_t max_states = std::uint64_t{1} << 26;
  int threads = 1;
};

const borda::HarmoniousOrder& require_axis(const borda::Election& election,
                                           const std::string& problem) {
  if (!election.axis) {
    throw borda::InputError("the " + problem +
                            " solver needs a \"harmonious_order\" (axis) in "
                            "the input");
  }
  return *election.axis;
}

borda::SolveOutcome run_solver(const SolveArgs& args,
                               const borda::Election& election) {
  const borda::ManipulationInstance& inst = election.instance;

  if (args.oracle) {
    borda::BruteLimits limits;
    limits.max_nodes = args.max_states;
    std::optional<std::vector<borda::Vote>> votes;
    if (args.problem == "wbm" || args.problem == "ubm") {
      votes = borda::brute_wbm(inst, limits);
    } else {
      votes = borda::brute_sp(inst, require_axis(election, args.problem),
                              limits);
    }
    borda::SolveOutcome outcome;
    outcome.manipulable = votes.has_value();
    if (votes) outcome.coalition_votes = std::move(*votes);
    return outcome;
  }

  if (args.problem == "wbm") {
    borda::WbmOptions options;
    options.max_states = args.max_states;
    options.threads = args.threads;
    options.paranoid = args.certify;
    if (args.dump_table) options.table_dump = &std::cerr;
    return borda::solve_wbm(inst, options);
  }
  if (args.problem == "ubm") {
    borda::FmmOptions options;
    options.max_states = args.max_states;
    return borda::solve_ubm(inst, options);
  }
  if (args.problem == "ubm1sp") {
    return borda::solve_ubm1sp(inst, require_axis(election, args.problem));
  }
  return borda::solve_ubm2sp(inst, require_axis(election, args.problem));
}

int run_solve(const SolveArgs& args) {
  const borda::ElectionDocument doc =
      borda::load_election_document(args.input);
  const borda::Election election = borda::resolve(doc);

  if (args.dump_table && args.problem != "wbm") {
    throw borda::InputError("--dump-table is only available with -p wbm");
  }
  if (!args.export_ilp.empty()) {
    if (args.problem != "ubm") {
      throw borda::InputError("--export-ilp is only available with -p ubm");
    }
    const borda::UbmReduction reduction =
        borda::reduce_ubm_to_fmm(election.instance);
    if (!reduction.fmm) {
      throw borda::InputError(
          "cannot export the filling model: a rival already exceeds the "
          "distinguished candidate's reachable score");
    }
    std::ofstream out(args.export_ilp, std::ios::binary);
    if (!out) {
      throw borda::InputError("cannot write \"" + args.export_ilp + "\"");
    }
    out << borda::export_ilp(*reduction.fmm);
  }

  const auto start = std::chrono::steady_clock::now();
  const borda::SolveOutcome outcome = run_solver(args, election);
  const auto elapsed = std::chrono::steady_clock::now() - start;

  if (args.certify && outcome.manipulable) {
    std::string diag;
    if (!borda::verify_manipulation(election.instance, outcome.coalition_votes,
                                    &diag)) {
      throw borda::InternalError("certificate verification failed: " + diag);
    }
    if (args.problem == "ubm1sp" || args.problem == "ubm2sp") {
      for (const borda::Vote& vote : outcome.coalition_votes) {
        if (!borda::is_coincident(vote, *election.axis)) {
          throw borda::InternalError(
              "certificate verification failed: a coalition ballot is not "
              "coincident with the axis");
        }
      }
    }
  }

  borda::RunReport report = borda::make_report(args.problem, election, outcome);
  report.elapsed_ms =
      args.no_timing
          ? 0
          : std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
                .count();
  std::cout << borda::report_to_json_text(report);

  if (!args.expect.empty()) {
    const bool expected = args.expect == "yes";
    if (expected != outcome.manipulable) return kExitExpectMismatch;
  }
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for Borda manipulation problems"};
  app.set_version_flag("--version", "borda-manip 0.1.0");
  app.require_subcommand(1);

  SolveArgs args;
  CLI::App* solve =
      app.add_subcommand("solve", "Decide manipulability of one election");
  solve->add_option("-p,--problem", args.problem, "Problem variant")
      ->required()
      ->check(CLI::IsMember({"wbm", "ubm", "ubm1sp", "ubm2sp"}));
  solve->add_option("-i,--input", args.input, "Election description file")
      ->required();
  solve->add_flag("--certify", args.certify,
                  "Re-verify any winning certificate before printing it");
  solve->add_option("--export-ilp", args.export_ilp,
                    "Write the integer program for the matrix filling step "
                    "(ubm only)");
  solve->add_flag("--oracle", args.oracle,
                  "Use the exhaustive reference solver instead");
  solve->add_option("--expect", args.expect,
                    "Exit 1 unless the verdict matches")
      ->check(CLI::IsMember({"yes", "no"}));
  solve->add_option("--max-states", args.max_states,
                    "Abort after storing this many search states");
  solve->add_option("--threads", args.threads,
                    "Worker threads for the subset sweep (wbm only)")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--dump-table", args.dump_table,
                  "Print reachable search states to stderr (wbm only)");
  solve->add_flag("--no-timing", args.no_timing,
                  "Report elapsed_ms as 0 for byte-stable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    return run_solve(args);
  } catch (const borda::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const borda::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const borda::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitInternalError;
  }
}
