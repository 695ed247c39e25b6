#include <doctest.h>

#include "upsilon/checks.hpp"
#include "upsilon/closed_form.hpp"

using namespace upsilon;

TEST_CASE("individual checks pass with default tolerances") {
  CHECK(check_purity_identity(2, 1.0 / 3.0, 30, 5).passed);
  CHECK(check_tradeoff(2, 30, 5).passed);
  CHECK(check_purity_inequality(30, 5).passed);
  CHECK(check_adjoint_square(ZooChannel::gamma_c, 2, 1.0 / 3.0).passed);
  CHECK(check_adjoint_square(ZooChannel::delta_c, 2, 1.0).passed);
  CHECK(check_adjoint_square(ZooChannel::gamma, 2, 0.0).passed);
  CHECK(check_complementary_invariance(5, 20).passed);
  CHECK(check_transpose_trick(5, 12).passed);
  CHECK(check_werner_reconstruction(2, 1.0 / 3.0).passed);
  CHECK(check_werner_reconstruction(3, -0.3).passed);
  CHECK(check_gamma_square(2, -0.7, 20, 5).passed);
  CHECK(check_self_adjoint(ZooChannel::delta, 3, 0.5, 20, 5).passed);
  CHECK(check_hs_multiplicativity(20, 5).passed);
  CHECK(check_swap_trick(20, 5).passed);
  CHECK(check_tau_spectrum_numeric(4, -0.2).passed);
  CHECK(check_subset_purity(2, 1.0 / 3.0, 2, 10, 5).passed);
  CHECK(check_criterion_fit(ZooChannel::delta_c, 3, 0.25).passed);
  CHECK(check_state_map_roundtrip(10, 5).passed);
  CHECK(check_choi_roundtrip(5, 5).passed);
}

TEST_CASE("adjoint square constants match the published table") {
  // (a, b) for gamma_c at d=2, t=1/3 is (4/9, 1/9).
  const AbPair ab = gamma_complement_ab(2, 1.0 / 3.0);
  CHECK(ab.a == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(ab.b == doctest::Approx(1.0 / 9.0).epsilon(1e-15));

  // delta_c at p=1: (1/d, 0).
  const AbPair dc = delta_complement_ab(2, 1.0);
  CHECK(dc.a == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dc.b == doctest::Approx(0.0).epsilon(1e-15));

  // gamma at t=0: (0, 1/d).
  const AbPair g0 = gamma_ab(3, 0.0);
  CHECK(g0.a == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g0.b == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("checks are deterministic given the seed") {
  const CheckResult a = check_purity_identity(2, -0.5, 25, 77);
  const CheckResult b = check_purity_identity(2, -0.5, 25, 77);
  CHECK(a.residual == b.residual);
  CHECK(a.worst_case_input_digest == b.worst_case_input_digest);

  const CheckResult c = check_complementary_invariance(91, 10);
  const CheckResult d = check_complementary_invariance(91, 10);
  CHECK(c.residual == d.residual);
  CHECK(c.worst_case_input_digest == d.worst_case_input_digest);
}

TEST_CASE("run_suite aggregates and honors tolerance overrides") {
  SuiteConfig config;
  config.dims = {2};
  config.t_points = 2;
  config.trials = 8;
  config.include_optimizer = false;
  config.include_multiplicativity = false;

  const auto results = run_suite(config);
  CHECK(results.size() > 10);
  CHECK(all_passed(results));
  for (const auto& r : results) CHECK(r.passed == (r.residual <= r.tolerance));

  // Deterministic rerun.
  const auto again = run_suite(config);
  REQUIRE(results.size() == again.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(results[i].name == again[i].name);
    CHECK(results[i].residual == again[i].residual);
  }

  // Impossible tolerance: everything is reported as failed, nothing throws.
  config.tolerance_override = 0.0;
  const auto strict = run_suite(config);
  CHECK_FALSE(all_passed(strict));
  int failures = 0;
  for (const auto& r : strict)
    if (!r.passed) ++failures;
  CHECK(failures > 0);
}

TEST_CASE("run_suite with an empty grid returns an empty list") {
  SuiteConfig config;
  config.dims = {};
  config.trials = 0;
  config.include_optimizer = false;
  config.include_multiplicativity = false;
  CHECK(run_suite(config).empty());
}

TEST_CASE("suite manifest names every check family") {
  const auto manifest = suite_manifest();
  CHECK(manifest.size() >= 16);

  SuiteConfig config;
  config.dims = {2};
  config.t_points = 2;
  config.trials = 4;
  config.include_optimizer = false;
  config.include_multiplicativity = false;
  const auto results = run_suite(config);
  // Every emitted result name starts with a manifest family.
  for (const auto& r : results) {
    bool found = false;
    for (const auto& family : manifest)
      if (r.name.rfind(family, 0) == 0) found = true;
    CHECK_MESSAGE(found, r.name);
  }
}
