#include "upsilon/checks.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>

#include "upsilon/channels.hpp"
#include "upsilon/closed_form.hpp"
#include "upsilon/feasible.hpp"
#include "upsilon/rng.hpp"

namespace upsilon {

namespace {

std::uint64_t fnv1a(const unsigned char* data, std::size_t len,
                    std::uint64_t h = 0xcbf29ce484222325ull) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Tracks the largest residual seen and the digest of the input it came from.
struct Worst {
  double residual = -std::numeric_limits<double>::infinity();
  std::string digest = "-";
  void update(double r, const std::string& d) {
    if (r > residual) {
      residual = r;
      digest = d;
    }
  }
};

CheckResult finish(std::string name, const Worst& w, double tol, int trials) {
  return CheckResult{std::move(name), w.residual, tol, w.residual <= tol, trials,
                     w.digest};
}

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

FeasibleState random_feasible(Rng& rng, const std::vector<int>& dims, int dim_a) {
  int total = 1;
  for (int d : dims) total *= d;
  return project_feasible(SquareOperator(rng.random_density(total), dims), dim_a);
}

std::vector<CpMap> make_random_cp(Rng& rng, int din, int dout, int count,
                                  bool normalize) {
  std::vector<CpMap> maps;
  for (int i = 0; i < count; ++i) {
    const int r = uniform_int(rng, 1, din);
    std::vector<Matrix> kraus;
    for (int k = 0; k < r; ++k) kraus.push_back(rng.gaussian_matrix(dout, din));
    if (normalize) {
      Matrix acc = Matrix::Zero(din, din);
      for (const auto& k : kraus) acc += k.adjoint() * k;
      Eigen::SelfAdjointEigenSolver<Matrix> es(acc);
      Matrix inv_sqrt = es.operatorInverseSqrt();
      for (auto& k : kraus) k = k * inv_sqrt;
    }
    maps.emplace_back(std::move(kraus));
  }
  return maps;
}

double spectrum_distance(const SquareOperator& x, const SquareOperator& y) {
  RealVector ex = hermitian_eig(x).eigenvalues;
  RealVector ey = hermitian_eig(y).eigenvalues;
  const Eigen::Index n = std::max(ex.size(), ey.size());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = i < ex.size() ? ex(i) : 0.0;
    const double b = i < ey.size() ? ey(i) : 0.0;
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

CpMap zoo_channel(ZooChannel which, int d, double param) {
  switch (which) {
    case ZooChannel::gamma: return make_transpose_depolarizing(d, param);
    case ZooChannel::delta: return make_depolarizing(d, param);
    case ZooChannel::gamma_c: return make_gamma_complement(d, param);
    case ZooChannel::delta_c: return make_delta_complement(d, param);
  }
  throw std::logic_error("zoo_channel: bad enum");
}

AbPair zoo_ab(ZooChannel which, int d, double param) {
  switch (which) {
    case ZooChannel::gamma: return gamma_ab(d, param);
    case ZooChannel::delta: return delta_ab(d, param);
    case ZooChannel::gamma_c: return gamma_complement_ab(d, param);
    case ZooChannel::delta_c: return delta_complement_ab(d, param);
  }
  throw std::logic_error("zoo_ab: bad enum");
}

}  // namespace

const char* zoo_channel_name(ZooChannel c) {
  switch (c) {
    case ZooChannel::gamma: return "gamma";
    case ZooChannel::delta: return "delta";
    case ZooChannel::gamma_c: return "gamma_c";
    case ZooChannel::delta_c: return "delta_c";
  }
  return "?";
}

std::string digest_matrix(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double re = m(r, c).real(), im = m(r, c).imag();
      unsigned char bytes[16];
      std::memcpy(bytes, &re, 8);
      std::memcpy(bytes + 8, &im, 8);
      h = fnv1a(bytes, 16, h);
    }
  }
  return hex64(h);
}

std::string digest_values(const std::vector<double>& values) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (double v : values) {
    unsigned char bytes[8];
    std::memcpy(bytes, &v, 8);
    h = fnv1a(bytes, 8, h);
  }
  return hex64(h);
}

CheckResult check_purity_identity(int d, double t, int trials, std::uint64_t seed) {
  Rng rng(seed, 1);
  const CpMap gamma = make_transpose_depolarizing(d, t);
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    FeasibleState sigma = random_feasible(rng, {d, d * d}, d);
    const SquareOperator omega = apply_to_factor(gamma, sigma.op, 0);
    const double lhs = purity(omega);
    const double rhs = t * t * purity(sigma.op) +
                       (1.0 - t * t) / d * purity(partial_trace(sigma.op, {1}));
    worst.update(std::abs(lhs - rhs), digest_matrix(sigma.op.entries()));
  }
  // Maximally entangled witness: both sides equal ||tau||_2^2.
  {
    const SquareOperator phi = maximally_entangled_state(d);
    const double lhs = purity(apply_to_factor(gamma, phi, 0));
    const double rhs = tau_norm(d, t, 2.0);
    worst.update(std::abs(lhs - rhs * rhs), digest_matrix(phi.entries()));
  }
  return finish("purity-identity/d=" + std::to_string(d) + ",t=" + format_param(t),
                worst, 1e-10, trials + 1);
}

CheckResult check_tradeoff(int d, int trials, std::uint64_t seed) {
  Rng rng(seed, 2);
  const double bound = 1.0 + 1.0 / d;
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    FeasibleState sigma = random_feasible(rng, {d, d * d}, d);
    const double value =
        purity(sigma.op) + purity(partial_trace(sigma.op, {1}));
    worst.update(value - bound, digest_matrix(sigma.op.entries()));
  }
  {
    const SquareOperator phi = maximally_entangled_state(d);
    const double value = purity(phi) + purity(partial_trace(phi, {1}));
    worst.update(std::abs(value - bound), digest_matrix(phi.entries()));
  }
  return finish("purity-tradeoff/d=" + std::to_string(d), worst, 1e-9, trials + 1);
}

CheckResult check_purity_inequality(int trials, std::uint64_t seed) {
  Rng rng(seed, 3);
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const int db = uniform_int(rng, 2, 4);
    const int de = uniform_int(rng, 2, 4);
    SquareOperator rho(rng.random_density(db * de), {db, de});
    const double lhs = purity(partial_trace(rho, {0})) + purity(partial_trace(rho, {1}));
    const double rhs = 1.0 + purity(rho);
    worst.update(lhs - rhs, digest_matrix(rho.entries()));
  }
  return finish("purity-inequality", worst, 1e-10, trials);
}

CheckResult check_adjoint_square(ZooChannel which, int d, double param) {
  const CpMap n = zoo_channel(which, d, param);
  const AbPair ab = zoo_ab(which, d, param);
  const Matrix s = superoperator_matrix(compose(hs_adjoint(n), n));
  Vector vec_id = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) vec_id(i + i * d) = 1.0;
  const Matrix fitted = ab.a * Matrix::Identity(d * d, d * d) +
                        ab.b * (vec_id * vec_id.transpose());
  Worst worst;
  worst.update((s - fitted).norm(), digest_values({static_cast<double>(d), param}));
  return finish(std::string("adjoint-square/") + zoo_channel_name(which) +
                    "/d=" + std::to_string(d) + ",param=" + format_param(param),
                worst, 1e-11, 1);
}

CheckResult check_complementary_invariance(std::uint64_t seed, int trials) {
  Rng rng(seed, 4);
  const double ps[] = {1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()};
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const int d_bp = uniform_int(rng, 2, 3);
    const int d_a = uniform_int(rng, 2, 3);
    const int d_e = uniform_int(rng, 2, 3);
    const CpMap omega = make_random_cp(rng, d_bp, d_a, 1, false)[0];
    const CpMap lambda = make_random_cp(rng, d_bp, d_e, 1, true)[0];

    const SquareOperator phi = maximally_entangled_state(d_bp);
    const SquareOperator lhs =
        apply_to_factor(omega, apply_to_factor(lambda, phi, 1), 0);
    const SquareOperator rhs = apply_to_factor(
        complementary(omega), apply_to_factor(complementary(lambda), phi, 1), 0);

    double dev = 0.0;
    for (double p : ps)
      dev = std::max(dev, std::abs(schatten_norm(lhs, p) - schatten_norm(rhs, p)));
    worst.update(dev, digest_matrix(omega.kraus()[0]));
  }
  return finish("complementary-invariance", worst, 1e-9, trials);
}

CheckResult check_transpose_trick(std::uint64_t seed, int trials) {
  Rng rng(seed, 5);
  const int shapes[3][2] = {{2, 2}, {2, 3}, {3, 2}};
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const int d_a = shapes[i % 3][0];
    const int d_b = shapes[i % 3][1];
    const bool normalize = (i % 2) == 0;
    const CpMap n = make_random_cp(rng, d_a, d_b, 1, normalize)[0];

    const SquareOperator lhs =
        apply_to_factor(n, maximally_entangled_state(d_a), 1);
    std::vector<Matrix> transposed;
    for (const auto& k : n.kraus()) transposed.push_back(k.transpose());
    const CpMap m(std::move(transposed));
    SquareOperator rhs = apply_to_factor(m, maximally_entangled_state(d_b), 0);
    const Matrix scaled =
        (static_cast<double>(d_b) / d_a) * rhs.entries();
    worst.update((lhs.entries() - scaled).norm(), digest_matrix(n.kraus()[0]));
  }
  return finish("transpose-trick", worst, 1e-10, trials);
}

CheckResult check_werner_reconstruction(int d, double t) {
  const CpMap gamma = make_transpose_depolarizing(d, t);
  const int r = gamma.kraus_count();

  // Purification |W> = (I (x) V)|Phi_d> with V the Kraus dilation of Gamma_t.
  const Matrix v = stinespring_operator(gamma);
  Vector phi = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  const Matrix lift = kron(Matrix::Identity(d, d), v);
  const Vector psi = lift * phi;
  SquareOperator pure(psi * psi.adjoint(), {d, d, r});

  Worst worst;
  const SquareOperator w_marginal = partial_trace(pure, {0, 1});
  worst.update((w_marginal.entries() - werner_state(d, t).entries()).norm(),
               digest_values({static_cast<double>(d), t}));

  const SquareOperator w_complement = partial_trace(pure, {0, 2});

  // d ((Gamma_t^c)^dag (x) id)(Phi (x) Phi), with the two primed factors
  // grouped in front.
  SquareOperator pairs = tensor_product(maximally_entangled_state(d),
                                        maximally_entangled_state(d));
  pairs = permute_factors(pairs, {0, 2, 1, 3});
  pairs = pairs.with_factors({d * d, d, d});
  SquareOperator recon = apply_to_factor(werner_complement_map(d, t), pairs, 0);
  SquareOperator scaled(d * recon.entries(), recon.factor_dims());

  worst.update(std::abs(trace(scaled).real() - 1.0),
               digest_values({static_cast<double>(d), t, 1.0}));
  worst.update(spectrum_distance(w_complement, scaled),
               digest_values({static_cast<double>(d), t, 2.0}));
  // Complementary marginals of the pure state: Tr_C rho shares its nonzero
  // spectrum with rho_C = Gamma_t(I/d) = I/d.
  worst.update(spectrum_distance(w_complement,
                                 SquareOperator(Matrix::Identity(d, d) / d, {d})),
               digest_values({static_cast<double>(d), t, 3.0}));
  return finish("werner-reconstruction/d=" + std::to_string(d) + ",t=" + format_param(t),
                worst, 1e-9, 4);
}

CheckResult check_gamma_square(int d, double t, int trials, std::uint64_t seed) {
  Rng rng(seed, 6);
  const CpMap gamma = make_transpose_depolarizing(d, t);
  const CpMap squared = compose(gamma, gamma);
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const Matrix x = rng.gaussian_matrix(d, d);
    const SquareOperator out = apply(squared, SquareOperator(x, {d}));
    const Matrix expected =
        t * t * x + (1.0 - t * t) * x.trace() * Matrix::Identity(d, d) / d;
    worst.update((out.entries() - expected).norm(), digest_matrix(x));
  }
  return finish("gamma-square/d=" + std::to_string(d) + ",t=" + format_param(t),
                worst, 1e-10, trials);
}

CheckResult check_self_adjoint(ZooChannel which, int d, double param, int trials,
                               std::uint64_t seed) {
  Rng rng(seed, 7);
  const CpMap n = zoo_channel(which, d, param);
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const Matrix x = rng.gaussian_matrix(d, d);
    const Matrix y = rng.gaussian_matrix(d, d);
    const Complex lhs =
        (y * apply(n, SquareOperator(x, {d})).entries()).trace();
    const Complex rhs =
        (apply(n, SquareOperator(y, {d})).entries() * x).trace();
    worst.update(std::abs(lhs - rhs), digest_matrix(x));
  }
  return finish(std::string("self-adjoint/") + zoo_channel_name(which) +
                    "/d=" + std::to_string(d) + ",param=" + format_param(param),
                worst, 1e-10, trials);
}

CheckResult check_hs_multiplicativity(int trials, std::uint64_t seed) {
  Rng rng(seed, 8);
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const int m = uniform_int(rng, 2, 4);
    const int n = uniform_int(rng, 2, 4);
    const Matrix x = rng.gaussian_matrix(m, m);
    const Matrix y = rng.gaussian_matrix(n, n);
    const double lhs = schatten_norm(SquareOperator(kron(x, y), {m * n}), 2.0);
    const double rhs = schatten_norm(SquareOperator(x, {m}), 2.0) *
                       schatten_norm(SquareOperator(y, {n}), 2.0);
    worst.update(std::abs(lhs - rhs), digest_matrix(x));
  }
  return finish("hs-norm-multiplicativity", worst, 1e-10, trials);
}

CheckResult check_swap_trick(int trials, std::uint64_t seed) {
  Rng rng(seed, 9);
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const int n = uniform_int(rng, 2, 5);
    const Matrix rho = rng.random_density(n);
    const double lhs = (rho * rho).trace().real();
    const Matrix pi = swap_operator(n).entries();
    const double rhs = (kron(rho, rho) * pi).trace().real();
    worst.update(std::abs(lhs - rhs), digest_matrix(rho));
  }
  return finish("swap-trick", worst, 1e-10, trials);
}

CheckResult check_tau_spectrum_numeric(int d, double t) {
  const CpMap gamma = make_transpose_depolarizing(d, t);
  const SquareOperator tau =
      apply_to_factor(gamma, maximally_entangled_state(d), 0);
  const HermitianSpectrum spec = hermitian_eig(tau);
  const auto clusters = cluster_eigenvalues(spec.eigenvalues, 1e-8);
  const TauSpectrum analytic = tau_spectrum(d, t);

  Worst worst;
  const std::string digest = digest_matrix(tau.entries());
  // The symmetric-subspace eigenvalue is the larger one only for t > 0.
  const bool plus_on_top = analytic.lambda_plus >= analytic.lambda_minus;
  const double hi = plus_on_top ? analytic.lambda_plus : analytic.lambda_minus;
  const double lo = plus_on_top ? analytic.lambda_minus : analytic.lambda_plus;
  const int hi_mult = plus_on_top ? analytic.mult_plus : analytic.mult_minus;
  const int lo_mult = plus_on_top ? analytic.mult_minus : analytic.mult_plus;
  if (hi - lo > 1e-8) {
    if (clusters.size() != 2) {
      worst.update(1.0, digest);
    } else {
      worst.update(std::abs(clusters[0].first - hi), digest);
      worst.update(std::abs(clusters[1].first - lo), digest);
      worst.update(clusters[0].second == hi_mult ? 0.0 : 1.0, digest);
      worst.update(clusters[1].second == lo_mult ? 0.0 : 1.0, digest);
    }
  } else {
    // Degenerate point t = 0: one flat cluster.
    worst.update(clusters.size() == 1 ? 0.0 : 1.0, digest);
    worst.update(std::abs(clusters[0].first - hi), digest);
  }
  return finish("tau-spectrum/d=" + std::to_string(d) + ",t=" + format_param(t),
                worst, 1e-10, 1);
}

CheckResult check_subset_purity(int d, double t, int n, int trials,
                                std::uint64_t seed) {
  Rng rng(seed, 10);
  const CpMap gamma = make_transpose_depolarizing(d, t);
  const CpMap power = tensor_power(gamma, n);
  std::vector<int> dims(n, d);
  dims.push_back(d);
  Worst worst;
  int total = 1;
  for (int dd : dims) total *= dd;
  for (int i = 0; i < trials; ++i) {
    FeasibleState sigma = random_feasible(rng, dims, total / d);
    const double lhs = quadratic_objective(sigma, power);
    const double rhs =
        subset_purity_objective(sigma, t * t, (1.0 - t * t) / d, n);
    worst.update(std::abs(lhs - rhs), digest_matrix(sigma.op.entries()));
  }
  return finish("subset-purity/d=" + std::to_string(d) + ",t=" + format_param(t) +
                    ",n=" + std::to_string(n),
                worst, 1e-9, trials);
}

CheckResult check_criterion_fit(ZooChannel which, int d, double param) {
  const CpMap n = zoo_channel(which, d, param);
  const CriterionConstants fit = extract_ab(n);
  const AbPair expected = zoo_ab(which, d, param);
  Worst worst;
  const std::string digest = digest_values({static_cast<double>(d), param});
  worst.update(fit.residual, digest);
  worst.update(std::abs(fit.a - expected.a), digest);
  worst.update(std::abs(fit.b - expected.b), digest);
  return finish(std::string("criterion-fit/") + zoo_channel_name(which) +
                    "/d=" + std::to_string(d) + ",param=" + format_param(param),
                worst, 1e-10, 1);
}

CheckResult check_state_map_roundtrip(int trials, std::uint64_t seed) {
  Rng rng(seed, 11);
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const int da = uniform_int(rng, 2, 3);
    const int db = uniform_int(rng, 2, 3);
    SquareOperator rho(rng.random_density(da * db), {da, db});
    const CpMap omega = state_to_cp_map(rho);
    const SquareOperator recon =
        apply_to_factor(omega, maximally_entangled_state(db), 0);
    worst.update((recon.entries() - rho.entries()).norm(),
                 digest_matrix(rho.entries()));
  }
  return finish("state-map-roundtrip", worst, 1e-10, trials);
}

CheckResult check_choi_roundtrip(int trials, std::uint64_t seed) {
  Rng rng(seed, 12);
  Worst worst;
  for (int i = 0; i < trials; ++i) {
    const int din = uniform_int(rng, 2, 3);
    const int dout = uniform_int(rng, 2, 3);
    const CpMap n = make_random_cp(rng, din, dout, 1, true)[0];
    const CpMap back = choi_to_channel(choi_state(n));
    double dev = 0.0;
    for (int probe = 0; probe < 20; ++probe) {
      SquareOperator rho(rng.random_density(din), {din});
      dev = std::max(dev,
                     (apply(n, rho).entries() - apply(back, rho).entries()).norm());
    }
    worst.update(dev, digest_matrix(n.kraus()[0]));
  }
  return finish("choi-roundtrip", worst, 1e-10, trials);
}

CheckResult check_optimizer_closed_form(int d, double t, int restarts,
                                        std::uint64_t seed) {
  const CpMap gamma = make_transpose_depolarizing(d, t);
  const OptimizationReport report =
      optimize_upsilon2(gamma, d * d, restarts, seed);
  const double analytic = upsilon2_gamma(d, t).upsilon2;
  Worst worst;
  worst.update(std::abs(report.best_value - analytic),
               digest_values({static_cast<double>(d), t, static_cast<double>(seed)}));
  return finish("optimizer-closed-form/d=" + std::to_string(d) + ",t=" + format_param(t),
                worst, 1e-4, restarts);
}

std::vector<std::string> suite_manifest() {
  return {
      "purity-identity",       "purity-tradeoff",
      "purity-inequality",     "gamma-square",
      "self-adjoint",          "hs-norm-multiplicativity",
      "swap-trick",            "tau-spectrum",
      "subset-purity",         "adjoint-square",
      "criterion-fit",         "complementary-invariance",
      "transpose-trick",       "werner-reconstruction",
      "state-map-roundtrip",   "choi-roundtrip",
      "optimizer-closed-form", "multiplicativity-gap",
  };
}

std::vector<CheckResult> run_suite(const SuiteConfig& config) {
  std::vector<CheckResult> results;
  auto emit = [&](CheckResult r) {
    if (config.tolerance_override >= 0.0) {
      r.tolerance = config.tolerance_override;
      r.passed = r.residual <= r.tolerance;
    }
    results.push_back(std::move(r));
  };

  auto t_grid = [&](int d) {
    std::vector<double> grid;
    const double lo = gamma_t_min(d), hi = gamma_t_max(d);
    const int points = std::max(2, config.t_points);
    for (int i = 0; i < points; ++i)
      grid.push_back(lo + (hi - lo) * i / (points - 1));
    return grid;
  };
  const std::vector<double> p_grid = {0.25, 0.5, 1.0};

  for (int d : config.dims) {
    for (double t : t_grid(d)) {
      emit(check_purity_identity(d, t, config.trials, config.seed));
      emit(check_gamma_square(d, t, config.trials, config.seed));
      emit(check_tau_spectrum_numeric(d, t));
      emit(check_adjoint_square(ZooChannel::gamma, d, t));
      emit(check_adjoint_square(ZooChannel::gamma_c, d, t));
      emit(check_criterion_fit(ZooChannel::gamma, d, t));
      emit(check_criterion_fit(ZooChannel::gamma_c, d, t));
      emit(check_self_adjoint(ZooChannel::gamma, d, t, config.trials, config.seed));
      emit(check_werner_reconstruction(d, t));
    }
    for (double p : p_grid) {
      emit(check_adjoint_square(ZooChannel::delta, d, p));
      emit(check_adjoint_square(ZooChannel::delta_c, d, p));
      emit(check_criterion_fit(ZooChannel::delta, d, p));
      emit(check_criterion_fit(ZooChannel::delta_c, d, p));
      emit(check_self_adjoint(ZooChannel::delta, d, p, config.trials, config.seed));
    }
    emit(check_tradeoff(d, config.trials, config.seed));
    emit(check_subset_purity(d, gamma_t_max(d), 2, std::min(config.trials, 20),
                             config.seed));
  }

  if (config.trials > 0) {
    emit(check_purity_inequality(config.trials, config.seed));
    emit(check_hs_multiplicativity(config.trials, config.seed));
    emit(check_swap_trick(config.trials, config.seed));
    emit(check_complementary_invariance(config.seed, config.trials));
    emit(check_transpose_trick(config.seed, std::max(config.trials, 9)));
    emit(check_state_map_roundtrip(std::min(config.trials, 20), config.seed));
    emit(check_choi_roundtrip(std::min(config.trials, 10), config.seed));
  }

  if (config.include_optimizer) {
    for (int d : config.dims) {
      emit(check_optimizer_closed_form(d, gamma_t_min(d), config.optimizer_restarts,
                                       config.seed));
      emit(check_optimizer_closed_form(d, gamma_t_max(d), config.optimizer_restarts,
                                       config.seed));
    }
  }

  if (config.include_multiplicativity) {
    struct MultCase {
      ZooChannel channel;
      double param;
    };
    const MultCase cases[] = {{ZooChannel::gamma, 0.0},
                              {ZooChannel::gamma, 1.0 / 3.0},
                              {ZooChannel::delta, 0.5}};
    for (const auto& mc : cases) {
      const CpMap n = zoo_channel(mc.channel, 2, mc.param);
      const double gap = multiplicativity_gap(n, 2, 4, config.multiplicativity_restarts,
                                              config.seed);
      const std::string base = std::string("multiplicativity-gap/") +
                               zoo_channel_name(mc.channel) +
                               "/d=2,param=" + format_param(mc.param);
      const std::string digest = digest_values({2.0, mc.param, gap});
      CheckResult upper{base + "/upper", gap, 1e-4, gap <= 1e-4, 1, digest};
      CheckResult lower{base + "/lower", -gap, 1e-6, -gap <= 1e-6, 1, digest};
      if (config.tolerance_override >= 0.0) {
        upper.tolerance = lower.tolerance = config.tolerance_override;
        upper.passed = upper.residual <= upper.tolerance;
        lower.passed = lower.residual <= lower.tolerance;
      }
      results.push_back(std::move(upper));
      results.push_back(std::move(lower));
    }
  }

  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace upsilon
