#include <doctest.h>

#include "oracles.hpp"
#include "upsilon/rng.hpp"
#include "upsilon/square_operator.hpp"

using namespace upsilon;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("tensor product identity and projector cases") {
  const SquareOperator i2 = SquareOperator::identity(2);
  const SquareOperator i4 = tensor_product(i2, i2);
  CHECK((i4.entries() - Matrix::Identity(4, 4)).norm() == 0.0);
  CHECK(i4.factor_dims() == std::vector<int>{2, 2});

  const SquareOperator p = tensor_product(SquareOperator(diag2(1, 0), {2}),
                                          SquareOperator(diag2(0, 1), {2}));
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  CHECK((p.entries() - expected).norm() == 0.0);
}

TEST_CASE("tensor product of swaps acts as independent swaps") {
  const SquareOperator pi2 = swap_operator(2);
  const SquareOperator both = tensor_product(pi2, pi2);
  // Oracle: index permutation (a,b,c,e) -> (b,a,e,c) on the 4-factor space.
  const std::vector<int> dims{2, 2, 2, 2};
  for (int col = 0; col < 16; ++col) {
    auto idx = oracle::decode(col, dims);
    const int row = oracle::encode({idx[1], idx[0], idx[3], idx[2]}, dims);
    for (int r = 0; r < 16; ++r)
      CHECK(both.entries()(r, col) == (r == row ? Complex(1.0) : Complex(0.0)));
  }
}

TEST_CASE("tensor product matches brute-force kron on random input") {
  Rng rng(7);
  const Matrix a = rng.gaussian_matrix(3, 3);
  const Matrix b = rng.gaussian_matrix(2, 2);
  const SquareOperator t = tensor_product(SquareOperator(a, {3}), SquareOperator(b, {2}));
  CHECK((t.entries() - oracle::naive_kron(a, b)).norm() == 0.0);
}

TEST_CASE("partial trace of the maximally entangled projector") {
  const SquareOperator phi = maximally_entangled_state(3);
  const SquareOperator marginal = partial_trace(phi, {0});
  CHECK((marginal.entries() - Matrix::Identity(3, 3) / 3.0).norm() < 1e-14);
}

TEST_CASE("partial trace of a product operator") {
  Rng rng(11);
  const Matrix a = rng.gaussian_matrix(2, 2);
  const Matrix b = rng.gaussian_matrix(3, 3);
  const SquareOperator prod = tensor_product(SquareOperator(a, {2}), SquareOperator(b, {3}));
  const SquareOperator kept = partial_trace(prod, {0});
  CHECK((kept.entries() - b.trace() * a).norm() < 1e-12);
}

TEST_CASE("partial trace preserves trace and matches the summation oracle") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix rho = rng.random_density(4);
    const SquareOperator m(rho, {2, 2});
    for (const std::vector<int>& keep : {std::vector<int>{0}, std::vector<int>{1}}) {
      const SquareOperator out = partial_trace(m, keep);
      CHECK(std::abs(trace(out).real() - trace(m).real()) < 1e-12);
      CHECK((out.entries() - oracle::naive_partial_trace(rho, {2, 2}, keep)).norm() < 1e-14);
    }
  }
}

TEST_CASE("partial trace rejects bad index sets") {
  const SquareOperator m(Matrix::Identity(4, 4), {2, 2});
  CHECK_THROWS_AS(partial_trace(m, {2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(m, {1, 0}), std::invalid_argument);
}

TEST_CASE("partial transpose fixes I (x) sigma") {
  Rng rng(17);
  const Matrix sigma = rng.random_density(3);
  const SquareOperator m =
      tensor_product(SquareOperator::identity(2), SquareOperator(sigma, {3}));
  CHECK((partial_transpose(m, 0).entries() - m.entries()).norm() == 0.0);
}

TEST_CASE("partial transpose of Phi_d is the flip operator over d") {
  for (int d : {2, 3, 4}) {
    const SquareOperator phi = maximally_entangled_state(d);
    const SquareOperator pt = partial_transpose(phi, 0);
    CHECK((pt.entries() - swap_operator(d).entries() / d).norm() < 1e-14);
    CHECK((pt.entries() -
           oracle::naive_partial_transpose(phi.entries(), {d, d}, 0)).norm() == 0.0);
  }
}

TEST_CASE("partial transpose is an involution and an HS isometry") {
  Rng rng(19);
  for (int d : {2, 3, 4}) {
    const Matrix x = rng.gaussian_matrix(d * d, d * d);
    const SquareOperator m(x, {d, d});
    const SquareOperator once = partial_transpose(m, 0);
    CHECK((partial_transpose(once, 0).entries() - x).norm() == 0.0);
    CHECK(schatten_norm(once, 2.0) ==
          doctest::Approx(oracle::eig_schatten_norm(x, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("swap operator basics") {
  CHECK(swap_operator(1).entries()(0, 0) == Complex(1.0));

  const Matrix pi = swap_operator(2).entries();
  Vector v = Vector::Zero(4);
  v(1) = 1.0;  // |01>
  Vector w = pi * v;
  CHECK(w(2) == Complex(1.0));  // |10>
  CHECK((pi * pi - Matrix::Identity(4, 4)).norm() == 0.0);
  CHECK(pi(0, 0) == Complex(1.0));
  CHECK(pi(3, 3) == Complex(1.0));
}

TEST_CASE("swap operator spectrum has the symmetric/antisymmetric split") {
  for (int d : {2, 3, 4}) {
    const HermitianSpectrum spec = hermitian_eig(swap_operator(d));
    const auto clusters = cluster_eigenvalues(spec.eigenvalues);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].first == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(clusters[0].second == d * (d + 1) / 2);
    CHECK(clusters[1].first == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(clusters[1].second == d * (d - 1) / 2);
  }
}

TEST_CASE("schatten norm closed cases") {
  for (int d : {2, 3, 5}) {
    const SquareOperator mixed(Matrix::Identity(d, d) / d, {d});
    CHECK(schatten_norm(mixed, 2.0) ==
          doctest::Approx(std::pow(d, -0.5)).epsilon(1e-14));
  }

  // Seed-operator norm: eigenvalue-sum oracle against the closed form.
  const Matrix tau = oracle::explicit_tau(2, 1.0 / 3.0);
  const SquareOperator m(tau, {2, 2});
  const double expected = 0.5 * std::sqrt(1.0 + (1.0 / 9.0) * 3.0);
  CHECK(schatten_norm(m, 2.0) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(oracle::eig_schatten_norm(tau, 2.0) == doctest::Approx(expected).epsilon(1e-13));

  Rng rng(23);
  const Vector v = rng.random_unit_vector(4);
  const SquareOperator proj(Matrix(v * v.adjoint()), {4});
  for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()})
    CHECK(schatten_norm(proj, p) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(schatten_norm(proj, 0.5), std::domain_error);
}

TEST_CASE("schatten 2-norm squared equals Tr(X^dag X)") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = rng.gaussian_matrix(5, 5);
    const double n2 = schatten_norm(SquareOperator(x, {5}), 2.0);
    CHECK(n2 * n2 == doctest::Approx((x.adjoint() * x).trace().real()).epsilon(1e-10));
  }
}

TEST_CASE("hermitian_eig on identity and seed operators") {
  const HermitianSpectrum flat = hermitian_eig(SquareOperator::identity(4));
  for (int i = 0; i < 4; ++i) CHECK(flat.eigenvalues(i) == doctest::Approx(1.0));

  const SquareOperator tau(oracle::explicit_tau(2, 1.0 / 3.0), {2, 2});
  const HermitianSpectrum spec = hermitian_eig(tau);
  const auto clusters = cluster_eigenvalues(spec.eigenvalues);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].first == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(clusters[0].second == 3);
  CHECK(clusters[1].first == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(clusters[1].second == 1);

  const SquareOperator tau0(oracle::explicit_tau(3, 0.0), {3, 3});
  const auto flat_clusters = cluster_eigenvalues(hermitian_eig(tau0).eigenvalues);
  REQUIRE(flat_clusters.size() == 1);
  CHECK(flat_clusters[0].first == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig reconstruction and rejection") {
  Rng rng(31);
  const Matrix g = rng.gaussian_matrix(6, 6);
  const Matrix h = 0.5 * (g + Matrix(g.adjoint()));
  const HermitianSpectrum spec = hermitian_eig(SquareOperator(h, {6}));
  const Matrix recon = spec.eigenvectors *
                       spec.eigenvalues.cast<Complex>().asDiagonal() *
                       spec.eigenvectors.adjoint();
  CHECK((recon - h).norm() < 1e-10 * std::max(1.0, h.norm()));
  for (int i = 0; i + 1 < 6; ++i) CHECK(spec.eigenvalues(i) >= spec.eigenvalues(i + 1));

  CHECK_THROWS_AS(hermitian_eig(SquareOperator(g, {6})), std::invalid_argument);
}

TEST_CASE("swap trick purity identity on random density operators") {
  Rng rng(37);
  for (int d : {2, 3, 4, 5}) {
    const Matrix rho = rng.random_density(d);
    const double direct = (rho * rho).trace().real();
    const double swapped =
        (kron(rho, rho) * swap_operator(d).entries()).trace().real();
    CHECK(direct == doctest::Approx(swapped).epsilon(1e-10));
  }
}

TEST_CASE("permute_factors relabels indices consistently") {
  Rng rng(41);
  const Matrix a = rng.gaussian_matrix(2, 2);
  const Matrix b = rng.gaussian_matrix(3, 3);
  const Matrix c = rng.gaussian_matrix(2, 2);
  const SquareOperator abc = tensor_product(
      tensor_product(SquareOperator(a, {2}), SquareOperator(b, {3})),
      SquareOperator(c, {2}));
  const SquareOperator cab = permute_factors(abc, {2, 0, 1});
  const SquareOperator expected = tensor_product(
      tensor_product(SquareOperator(c, {2}), SquareOperator(a, {2})),
      SquareOperator(b, {3}));
  CHECK((cab.entries() - expected.entries()).norm() < 1e-13);
  CHECK(cab.factor_dims() == std::vector<int>{2, 2, 3});
}

TEST_CASE("constructor invariants") {
  CHECK_THROWS_AS(SquareOperator(Matrix::Identity(4, 4), {2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(SquareOperator(Matrix::Zero(2, 3)), std::invalid_argument);
}
