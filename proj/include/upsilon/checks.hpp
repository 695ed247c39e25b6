#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "upsilon/cp_map.hpp"

namespace upsilon {

// One executable identity check: passed <=> residual <= tolerance. The digest
// fingerprints the input that produced the worst residual, so failures can be
// replayed.
struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool passed;
  int trials;
  std::string worst_case_input_digest;
};

enum class ZooChannel { gamma, delta, gamma_c, delta_c };
const char* zoo_channel_name(ZooChannel c);

CheckResult check_purity_identity(int d, double t, int trials, std::uint64_t seed);
CheckResult check_tradeoff(int d, int trials, std::uint64_t seed);
CheckResult check_purity_inequality(int trials, std::uint64_t seed);
CheckResult check_adjoint_square(ZooChannel which, int d, double param);
CheckResult check_complementary_invariance(std::uint64_t seed, int trials);
CheckResult check_transpose_trick(std::uint64_t seed, int trials);
CheckResult check_werner_reconstruction(int d, double t);
CheckResult check_gamma_square(int d, double t, int trials, std::uint64_t seed);
CheckResult check_self_adjoint(ZooChannel which, int d, double param, int trials,
                               std::uint64_t seed);
CheckResult check_hs_multiplicativity(int trials, std::uint64_t seed);
CheckResult check_swap_trick(int trials, std::uint64_t seed);
CheckResult check_tau_spectrum_numeric(int d, double t);
CheckResult check_subset_purity(int d, double t, int n, int trials, std::uint64_t seed);
CheckResult check_criterion_fit(ZooChannel which, int d, double param);
CheckResult check_state_map_roundtrip(int trials, std::uint64_t seed);
CheckResult check_choi_roundtrip(int trials, std::uint64_t seed);
CheckResult check_optimizer_closed_form(int d, double t, int restarts,
                                        std::uint64_t seed);

struct SuiteConfig {
  std::uint64_t seed = 0x5eedULL;
  std::vector<int> dims = {2, 3};
  int t_points = 5;
  int trials = 50;
  // When nonnegative, replaces every check's default tolerance.
  double tolerance_override = -1.0;
  bool include_optimizer = true;
  int optimizer_restarts = 4;
  bool include_multiplicativity = false;
  int multiplicativity_restarts = 4;
};

// Names of every check family the default suite executes.
std::vector<std::string> suite_manifest();

// Deterministic given the config; per-check seeds are derived from the master
// seed and the check name.
std::vector<CheckResult> run_suite(const SuiteConfig& config);

bool all_passed(const std::vector<CheckResult>& results);

// FNV-1a fingerprints used for worst-case digests.
std::string digest_matrix(const Matrix& m);
std::string digest_values(const std::vector<double>& values);

}  // namespace upsilon
