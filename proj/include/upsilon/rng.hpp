#pragma once

#include <cstdint>
#include <cmath>

#include "upsilon/square_operator.hpp"

namespace upsilon {

// Counter-based SplitMix64 generator. A (seed, stream) pair fully determines
// the sequence, so runs are reproducible and independent streams can be
// derived per restart / per check.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) * 0.7071067811865475244;
  }

  Matrix gaussian_matrix(int rows, int cols) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) g(i, j) = complex_normal();
    return g;
  }

  // Wishart-type density: G G^dag normalized to unit trace.
  Matrix random_density(int dim) {
    Matrix g = gaussian_matrix(dim, dim);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
  }

  Vector random_unit_vector(int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complex_normal();
    return v / v.norm();
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace upsilon
