#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace cbnorm {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when a matrix factorization produces non-finite output.
class FactorizationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(const ComplexMatrix& a) {
  return a.allFinite();
}

inline void require_finite(const ComplexMatrix& a, const char* what) {
  if (!is_finite(a)) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

/// E_{a,b}: 1 in entry (a,b), zero elsewhere. Indices are 0-based.
inline ComplexMatrix elementary(int n, int a, int b) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(a, b) = 1.0;
  return e;
}

inline ComplexMatrix identity(int n) {
  return ComplexMatrix::Identity(n, n);
}

/// Deterministic Gaussian source. Uses mt19937_64 plus an explicit
/// Box-Muller transform so streams are identical across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform_open();
    double u2 = uniform_open();
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
  }

  cplx cnormal() {
    double re = normal();
    double im = normal();
    return cplx(re, im) / std::sqrt(2.0);
  }

  /// Uniform in (0, 1]; never returns 0 so log() stays finite.
  double uniform_open() {
    std::uint64_t bits = engine_();
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
  }

  std::uint64_t raw() { return engine_(); }

  /// Independent substream for e.g. restart index i (splitmix64 mix).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline ComplexMatrix gaussian_matrix(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      g(i, j) = rng.cnormal();
    }
  }
  return g;
}

}  // namespace cbnorm
