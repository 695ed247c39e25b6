#include <doctest.h>

#include "oracles.hpp"
#include "upsilon/channels.hpp"
#include "upsilon/cp_map.hpp"
#include "upsilon/rng.hpp"

using namespace upsilon;

namespace {

CpMap random_cptp(Rng& rng, int din, int dout, int count) {
  std::vector<Matrix> kraus;
  for (int k = 0; k < count; ++k) kraus.push_back(rng.gaussian_matrix(dout, din));
  Matrix acc = Matrix::Zero(din, din);
  for (const auto& k : kraus) acc += k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<Matrix> es(acc);
  const Matrix fix = es.operatorInverseSqrt();
  for (auto& k : kraus) k = k * fix;
  return CpMap(std::move(kraus));
}

CpMap constant_output_map(const Vector& psi) {
  // Lambda_psi(X) = Tr(X) |psi><psi| via Kraus {|psi><i|}.
  std::vector<Matrix> kraus;
  const int din = 2;  // callers use qubit inputs in these tests
  for (int i = 0; i < din; ++i) {
    Matrix k = Matrix::Zero(psi.size(), din);
    k.col(i) = psi;
    kraus.push_back(std::move(k));
  }
  return CpMap(std::move(kraus));
}

}  // namespace

TEST_CASE("apply fixes the maximally mixed state for every Gamma_t") {
  for (int d : {2, 3}) {
    for (double t : {gamma_t_min(d), 0.0, gamma_t_max(d)}) {
      const CpMap gamma = make_transpose_depolarizing(d, t);
      CHECK(gamma.trace_preserving());
      const SquareOperator mixed(Matrix::Identity(d, d) / d, {d});
      CHECK((apply(gamma, mixed).entries() - mixed.entries()).norm() < 1e-12);
    }
  }
}

TEST_CASE("completely depolarizing map sends everything to I/d") {
  Rng rng(3);
  const CpMap dmap = make_completely_depolarizing(3);
  const SquareOperator rho(rng.random_density(3), {3});
  CHECK((apply(dmap, rho).entries() - Matrix::Identity(3, 3) / 3.0).norm() < 1e-12);
}

TEST_CASE("Gamma_{1/3} on |0><0| for d=2") {
  const CpMap gamma = make_transpose_depolarizing(2, 1.0 / 3.0);
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  const Matrix out = apply(gamma, SquareOperator(rho, {2})).entries();
  CHECK(out(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(out(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(out(0, 1)) < 1e-12);
}

TEST_CASE("apply rejects dimension mismatches") {
  const CpMap gamma = make_transpose_depolarizing(2, 0.0);
  CHECK_THROWS_AS(apply(gamma, SquareOperator::identity(3)), std::invalid_argument);
}

TEST_CASE("(Gamma_t (x) id)(Phi) equals the explicit seed operator") {
  for (int d : {2, 3}) {
    for (double t : {gamma_t_min(d), -0.1, 0.2 / (d + 1)}) {
      const CpMap gamma = make_transpose_depolarizing(d, t);
      const SquareOperator tau =
          apply_to_factor(gamma, maximally_entangled_state(d), 0);
      CHECK((tau.entries() - oracle::explicit_tau(d, t)).norm() < 1e-12);
    }
  }
}

TEST_CASE("constant-output postprocessing of tau gives I/d (x) |psi><psi|") {
  const int d = 2;
  const CpMap gamma = make_transpose_depolarizing(d, 1.0 / 3.0);
  const SquareOperator tau = apply_to_factor(gamma, maximally_entangled_state(d), 0);

  Rng rng(5);
  const Vector psi = rng.random_unit_vector(3);
  const SquareOperator out = apply_to_factor(constant_output_map(psi), tau, 1);
  const Matrix expected =
      kron(Matrix::Identity(d, d) / d, Matrix(psi * psi.adjoint()));
  CHECK((out.entries() - expected).norm() < 1e-12);
}

TEST_CASE("identity extension leaves input unchanged") {
  Rng rng(7);
  const SquareOperator rho(rng.random_density(6), {2, 3});
  for (int f : {0, 1}) {
    const CpMap id = identity_map(rho.factor_dims()[f]);
    CHECK((apply_to_factor(id, rho, f).entries() - rho.entries()).norm() == 0.0);
  }
}

TEST_CASE("hs_adjoint pairing identity and involution") {
  Rng rng(11);
  const CpMap n = random_cptp(rng, 3, 2, 2);
  const CpMap adj = hs_adjoint(n);
  const CpMap back = hs_adjoint(adj);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = rng.gaussian_matrix(3, 3);
    const Matrix y = rng.gaussian_matrix(2, 2);
    const Complex lhs = (y.adjoint() * apply(n, SquareOperator(x, {3})).entries()).trace();
    const Complex rhs = (apply(adj, SquareOperator(y, {2})).entries().adjoint() * x).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);

    const Matrix direct = apply(n, SquareOperator(x, {3})).entries();
    const Matrix again = apply(back, SquareOperator(x, {3})).entries();
    CHECK((direct - again).norm() < 1e-12);
  }
}

TEST_CASE("hs_adjoint of Gamma_t acts like Gamma_t") {
  Rng rng(13);
  const CpMap gamma = make_transpose_depolarizing(3, -0.3);
  const CpMap adj = hs_adjoint(gamma);
  for (int trial = 0; trial < 5; ++trial) {
    const SquareOperator x(rng.gaussian_matrix(3, 3), {3});
    CHECK((apply(gamma, x).entries() - apply(adj, x).entries()).norm() < 1e-10);
  }
}

TEST_CASE("hs_adjoint of a unitary conjugation is the inverse conjugation") {
  Matrix u(2, 2);
  const double s = std::sqrt(0.5);
  u << Complex(s), Complex(s), Complex(s), Complex(-s);
  const CpMap adj = hs_adjoint(unitary_map(u));
  CHECK((adj.kraus()[0] - u.adjoint()).norm() == 0.0);
}

TEST_CASE("compose matches sequential application and algebraic identities") {
  Rng rng(17);
  const int d = 3;
  const double t = 0.2;
  const CpMap gamma = make_transpose_depolarizing(d, t);
  const CpMap squared = compose(gamma, gamma);
  const CpMap dmap = make_completely_depolarizing(d);

  for (int trial = 0; trial < 10; ++trial) {
    const SquareOperator x(rng.gaussian_matrix(d, d), {d});
    const Matrix seq = apply(gamma, apply(gamma, x)).entries();
    CHECK((apply(squared, x).entries() - seq).norm() < 1e-10);

    const Matrix expected = t * t * x.entries() +
                            (1.0 - t * t) * x.entries().trace() *
                                Matrix::Identity(d, d) / d;
    CHECK((apply(squared, x).entries() - expected).norm() < 1e-10);

    // D composed after anything trace preserving is D again.
    CHECK((apply(compose(dmap, gamma), x).entries() -
           apply(dmap, x).entries()).norm() < 1e-10);

    CHECK((apply(compose(identity_map(d), gamma), x).entries() -
           apply(gamma, x).entries()).norm() < 1e-12);
  }

  CHECK_THROWS_AS(compose(make_transpose_depolarizing(2, 0.0), gamma),
                  std::invalid_argument);
}

TEST_CASE("tensor_power product action and norm multiplicativity") {
  Rng rng(19);
  const int d = 2;
  const double t = 1.0 / 3.0;
  const CpMap gamma = make_transpose_depolarizing(d, t);

  const CpMap one = tensor_power(gamma, 1);
  const SquareOperator rho(rng.random_density(d), {d});
  CHECK((apply(one, rho).entries() - apply(gamma, rho).entries()).norm() < 1e-12);

  const CpMap two = tensor_power(gamma, 2);
  const SquareOperator pair = tensor_product(rho, rho);
  const Matrix product = kron(apply(gamma, rho).entries(), apply(gamma, rho).entries());
  CHECK((apply(two, pair.with_factors({4})).entries() - product).norm() < 1e-10);

  // Two copies acting on the A-side of Phi (x) Phi give a state with the
  // squared seed norm.
  SquareOperator pairs = tensor_product(maximally_entangled_state(d),
                                        maximally_entangled_state(d));
  pairs = permute_factors(pairs, {0, 2, 1, 3}).with_factors({4, 4});
  const SquareOperator out = apply_to_factor(two, pairs, 0);
  const double tau_norm2 = schatten_norm(
      SquareOperator(oracle::explicit_tau(d, t), {d, d}), 2.0);
  CHECK(schatten_norm(out, 2.0) == doctest::Approx(tau_norm2 * tau_norm2).epsilon(1e-11));

  CHECK_THROWS_AS(tensor_power(gamma, 7), std::invalid_argument);
}

TEST_CASE("complementary of a unitary conjugation is the trace functional") {
  Matrix u(2, 2);
  u << Complex(0, 1), Complex(0), Complex(0), Complex(0, -1);
  const CpMap comp = complementary(unitary_map(u));
  CHECK(comp.dim_out() == 1);
  Rng rng(23);
  const Matrix x = rng.gaussian_matrix(2, 2);
  const Matrix out = apply(comp, SquareOperator(x, {2})).entries();
  CHECK(std::abs(out(0, 0) - x.trace()) < 1e-12);
}

TEST_CASE("double complement has the spectra of the original on probes") {
  Rng rng(29);
  const CpMap n = random_cptp(rng, 3, 2, 3);
  const CpMap twice = complementary(complementary(n));
  for (int trial = 0; trial < 5; ++trial) {
    const SquareOperator rho(rng.random_density(3), {3});
    const auto direct = hermitian_eig(apply(n, rho)).eigenvalues;
    const auto doubled = hermitian_eig(apply(twice, rho)).eigenvalues;
    const Eigen::Index m = std::max(direct.size(), doubled.size());
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = i < direct.size() ? direct(i) : 0.0;
      const double b = i < doubled.size() ? doubled(i) : 0.0;
      CHECK(std::abs(a - b) < 1e-9);
    }
  }
}

TEST_CASE("stinespring operator reproduces the map and its complement") {
  Rng rng(31);
  const CpMap n = random_cptp(rng, 2, 3, 2);
  const Matrix w = stinespring_operator(n);
  CHECK((Matrix(w.adjoint() * w) - Matrix::Identity(2, 2)).norm() < 1e-10);

  const SquareOperator rho(rng.random_density(2), {2});
  const Matrix dilated = w * rho.entries() * w.adjoint();
  const SquareOperator full(dilated, {n.dim_out(), n.kraus_count()});
  CHECK((partial_trace(full, {0}).entries() - apply(n, rho).entries()).norm() < 1e-11);
  CHECK((partial_trace(full, {1}).entries() -
         apply(complementary(n), rho).entries()).norm() < 1e-11);
}

TEST_CASE("choi state of the identity is Phi and inverts to the identity") {
  const CpMap id = identity_map(3);
  const ChoiState sigma = choi_state(id);
  CHECK(sigma.normalized);
  CHECK((sigma.op.entries() - maximally_entangled_state(3).entries()).norm() < 1e-13);

  const CpMap back = choi_to_channel(sigma);
  Rng rng(37);
  const SquareOperator rho(rng.random_density(3), {3});
  CHECK((apply(back, rho).entries() - rho.entries()).norm() < 1e-11);
}

TEST_CASE("choi state I/d (x) pure inverts to the constant-output channel") {
  const int d = 2;
  Rng rng(41);
  const Vector psi = rng.random_unit_vector(3);
  const Matrix sigma = kron(Matrix::Identity(d, d) / d, Matrix(psi * psi.adjoint()));
  const CpMap lambda = choi_to_channel(ChoiState{SquareOperator(sigma, {d, 3}), true});
  const SquareOperator rho(rng.random_density(d), {d});
  const Matrix expected = rho.entries().trace() * (psi * psi.adjoint());
  CHECK((apply(lambda, rho).entries() - expected).norm() < 1e-11);
}

TEST_CASE("choi round-trip preserves action on random probes") {
  Rng rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    const CpMap n = random_cptp(rng, 3, 3, 2);
    const CpMap back = choi_to_channel(choi_state(n));
    for (int probe = 0; probe < 20; ++probe) {
      const SquareOperator rho(rng.random_density(3), {3});
      CHECK((apply(n, rho).entries() - apply(back, rho).entries()).norm() < 1e-10);
    }
  }
}

TEST_CASE("choi_to_channel rejects unpinned marginals") {
  Rng rng(47);
  const Matrix rho = rng.random_density(4);
  CHECK_THROWS_AS(choi_to_channel(ChoiState{SquareOperator(rho, {2, 2}), true}),
                  std::invalid_argument);
}

TEST_CASE("superoperator matrix reproduces the Kraus action") {
  Rng rng(53);
  const CpMap n = random_cptp(rng, 3, 2, 2);
  const Matrix s = superoperator_matrix(n);
  const Matrix x = rng.gaussian_matrix(3, 3);
  Vector vec_x(9);
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) vec_x(r + c * 3) = x(r, c);
  const Vector vec_out = s * vec_x;
  const Matrix out = apply(n, SquareOperator(x, {3})).entries();
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < 2; ++r) CHECK(std::abs(vec_out(r + c * 2) - out(r, c)) < 1e-12);
}
