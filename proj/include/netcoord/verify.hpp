#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netcoord/maxcut.hpp"
#include "netcoord/reduction.hpp"

namespace netcoord {

// One property-suite check. `replay_seed` reproduces any reported failure.
struct CheckResult {
  std::string name;
  bool pass = true;
  bool vacuous = false;
  std::uint64_t cases_run = 0;
  std::uint64_t failures = 0;
  std::uint64_t replay_seed = 0;
  double seconds = 0.0;
  std::string detail;
};

// Potential-delta identity over random (instance, profile, deviation) triples.
CheckResult check_potential_identity(std::uint64_t triples, int max_n, int max_k,
                                     std::uint64_t seed);

// <L_t, A> equals the recorded potential delta at every step of random traces.
CheckResult check_transformation_identity(std::uint64_t traces,
                                          std::uint64_t seed);

// Converged BRA outputs are members of the brute-force PNE set; that set is
// never empty. Instances sized so k^n stays within the oracle cap.
CheckResult check_bra_vs_oracle(std::uint64_t instances, std::uint64_t seed);

// The critical-subsequence finder returns an equality-tight, inclusion-minimal
// subrange on improving traces truncated to length 2nk.
CheckResult check_critical_subsequence(std::uint64_t traces, std::uint64_t seed);

// Rank lemmas: separated blocks (inactive player present, complete graphs),
// all-active corollary, cyclic-sum rank, cyclic-sum sanity.
CheckResult check_rank_lemmas(std::uint64_t traces_per_class, std::uint64_t seed);

// k -> 2-FlipMaxCut reduction: local optima valid, value identity, lifted
// PNE membership, weak-smoothness certificate, s-t separation.
CheckResult check_reduction_k2(std::uint64_t instances, std::uint64_t seed);

// 2-strategy -> 1-FlipMaxCut: every local optimum lifts to a PNE.
CheckResult check_reduction_21(std::uint64_t instances, std::uint64_t seed);

// Figure-1 embedding: potential equals cut value on all profiles; local
// optima correspond to PNE.
CheckResult check_figure1(std::uint64_t graphs, std::uint64_t seed);

// Congestion identities: cost delta = potential delta, <L,C> = potential
// delta, BRA termination, (k,l) caps.
CheckResult check_congestion(std::uint64_t deviations, std::uint64_t moves,
                             std::uint64_t seed);

// Smoothed convergence measurement: complete graphs, k=2, phi=1/2,
// n in n_values, `trials` runs each; asserts 100% convergence within the cap
// and reports per-n median step counts (optionally to a CSV file).
CheckResult check_smoothed_convergence(std::uint64_t trials,
                                       const std::vector<int>& n_values,
                                       std::uint64_t step_cap,
                                       const std::optional<std::string>& csv_path,
                                       std::uint64_t seed);

// Single-artifact value identity (delta(S) == 2 * extended potential on every
// valid cut); exposed so corrupted fixtures can be checked directly.
struct ValueIdentityReport {
  bool pass = true;
  std::optional<std::vector<int>> witness_cut;  // s-side ids of a violation
};
ValueIdentityReport reduction_value_identity(const ReductionArtifacts& artifacts);

struct VerifySuiteConfig {
  // Empty = all checks. Unknown names throw InvalidInput.
  std::vector<std::string> checks;
  double scale = 1.0;  // multiplies default case counts (min 1)
  std::uint64_t seed = 20240101;
  std::optional<std::string> convergence_csv;
};

VerifySuiteConfig verify_config_from_json(const nlohmann::json& j);

std::vector<std::string> verify_check_names();

// Runs the configured checks at scaled sizes. An explicitly empty check list
// yields a vacuous pass (flagged as such by the caller via the empty result).
std::vector<CheckResult> verify_suite(const VerifySuiteConfig& config);

nlohmann::json check_results_to_json(const std::vector<CheckResult>& results);

}  // namespace netcoord
