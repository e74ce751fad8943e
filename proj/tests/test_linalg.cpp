#include "cbnorm/linalg.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cbnorm;

namespace {

// Independent trace-norm oracle: Tr sqrt(A^*A) via eigenvalues of A^*A.
double trace_norm_eig_oracle(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a.adjoint() * a);
  double sum = 0.0;
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    sum += std::sqrt(std::max(0.0, eig.eigenvalues()(i)));
  }
  return sum;
}

ComplexMatrix swap_operator(int n) {
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      s(b * n + a, a * n + b) = 1.0;
    }
  }
  return s;
}

}  // namespace

TEST_CASE("svd basics") {
  auto id = svd(ComplexMatrix::Identity(2, 2));
  REQUIRE_THAT(id.singular_values(0), Catch::Matchers::WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(id.singular_values(1), Catch::Matchers::WithinAbs(1.0, 1e-14));

  auto e12 = svd(elementary(2, 0, 1));
  REQUIRE_THAT(e12.singular_values(0), Catch::Matchers::WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(e12.singular_values(1), Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("svd reconstruction and orthonormality on random input") {
  Rng rng(7);
  ComplexMatrix a = gaussian_matrix(4, 3, rng);
  auto r = svd(a);
  ComplexMatrix rebuilt = r.left * r.singular_values.asDiagonal() * r.right.adjoint();
  REQUIRE((a - rebuilt).norm() < 1e-12 * r.singular_values(0));
  REQUIRE((r.left.adjoint() * r.left - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
  REQUIRE((r.right.adjoint() * r.right - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
  for (int i = 1; i < r.singular_values.size(); ++i) {
    REQUIRE(r.singular_values(i) <= r.singular_values(i - 1));
  }
}

TEST_CASE("trace norm") {
  REQUIRE_THAT(trace_norm(ComplexMatrix::Identity(2, 2)),
               Catch::Matchers::WithinAbs(2.0, 1e-14));
  // Choi matrix of the 2x2 transpose is the swap operator.
  REQUIRE_THAT(trace_norm(swap_operator(2)), Catch::Matchers::WithinAbs(4.0, 1e-12));

  Rng rng(21);
  ComplexMatrix a = gaussian_matrix(3, 3, rng);
  REQUIRE_THAT(trace_norm(a),
               Catch::Matchers::WithinAbs(trace_norm_eig_oracle(a), 1e-11));
}

TEST_CASE("operator norm") {
  REQUIRE_THAT(operator_norm(ComplexMatrix::Identity(3, 3)),
               Catch::Matchers::WithinAbs(1.0, 1e-14));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  REQUIRE_THAT(operator_norm(d), Catch::Matchers::WithinAbs(3.0, 1e-14));

  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix a = gaussian_matrix(3, 4, rng);
    REQUIRE(operator_norm(a) <= trace_norm(a) + 1e-12);
  }
}

TEST_CASE("hahn decomposition") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 2.0;
  h(1, 1) = -1.0;
  auto d = hahn_decompose(h);
  REQUIRE_THAT(d.positive_part(0, 0).real(), Catch::Matchers::WithinAbs(2.0, 1e-14));
  REQUIRE_THAT(d.negative_part(1, 1).real(), Catch::Matchers::WithinAbs(1.0, 1e-14));
  REQUIRE(d.positive_part.norm() == Catch::Approx(2.0));
  REQUIRE(d.negative_part.norm() == Catch::Approx(1.0));

  Rng rng(5);
  ComplexMatrix psd = random_density(3, rng);
  auto dp = hahn_decompose(psd);
  REQUIRE((dp.positive_part - psd).norm() < 1e-12);
  REQUIRE(dp.negative_part.norm() < 1e-12);

  REQUIRE_THROWS_AS(hahn_decompose(gaussian_matrix(3, 3, rng)), std::invalid_argument);
}

TEST_CASE("hahn trace-norm identity on random Hermitian input") {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix h = random_hermitian(4, rng);
    auto d = hahn_decompose(h);
    REQUIRE((d.positive_part - d.negative_part - h).norm() < 1e-12);
    REQUIRE((d.positive_part * d.negative_part).norm() < 1e-10);
    double tn = trace_norm(h);
    double split = d.positive_part.trace().real() + d.negative_part.trace().real();
    REQUIRE_THAT(tn, Catch::Matchers::WithinAbs(split, 1e-10));
  }
}

TEST_CASE("kronecker product") {
  REQUIRE((kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)) -
           ComplexMatrix::Identity(6, 6))
              .norm() == 0.0);

  ComplexMatrix k = kron(elementary(2, 0, 0), elementary(2, 1, 1));
  REQUIRE(k.rows() == 4);
  REQUIRE(std::abs(k(1, 1) - cplx(1.0, 0.0)) == 0.0);
  REQUIRE_THAT(k.norm(), Catch::Matchers::WithinAbs(1.0, 1e-15));

  Rng rng(9);
  ComplexMatrix a = gaussian_matrix(2, 3, rng);
  ComplexMatrix b = gaussian_matrix(3, 2, rng);
  REQUIRE_THAT(trace_norm(kron(a, b)),
               Catch::Matchers::WithinAbs(trace_norm(a) * trace_norm(b), 1e-10));
}

TEST_CASE("partial trace") {
  Rng rng(11);
  ComplexMatrix a = gaussian_matrix(3, 3, rng);
  ComplexMatrix b = gaussian_matrix(2, 2, rng);
  ComplexMatrix x = kron(a, b);
  REQUIRE((partial_trace(x, 3, 2, Factor::right) - b.trace() * a).norm() < 1e-13);
  REQUIRE((partial_trace(x, 3, 2, Factor::left) - a.trace() * b).norm() < 1e-13);

  ComplexMatrix tau = max_entangled_state(3);
  REQUIRE((partial_trace(tau, 3, 3, Factor::left) -
           ComplexMatrix::Identity(3, 3) / 3.0)
              .norm() < 1e-14);
  REQUIRE((partial_trace(tau, 3, 3, Factor::right) -
           ComplexMatrix::Identity(3, 3) / 3.0)
              .norm() < 1e-14);

  ComplexMatrix y = gaussian_matrix(6, 6, rng);
  REQUIRE(std::abs(partial_trace(y, 2, 3, Factor::left).trace() - y.trace()) < 1e-12);
  REQUIRE(std::abs(partial_trace(y, 2, 3, Factor::right).trace() - y.trace()) < 1e-12);
}

TEST_CASE("partial transpose") {
  Rng rng(12);
  ComplexMatrix a = gaussian_matrix(2, 2, rng);
  ComplexMatrix b = gaussian_matrix(3, 3, rng);
  ComplexMatrix x = kron(a, b);
  REQUIRE((partial_transpose(x, 2, 3, Factor::left) - kron(a.transpose(), b)).norm() <
          1e-14);
  REQUIRE((partial_transpose(x, 2, 3, Factor::right) - kron(a, b.transpose())).norm() <
          1e-14);

  // Negativity of the maximally entangled state reaches its maximum n.
  for (int n = 2; n <= 4; ++n) {
    ComplexMatrix tau = max_entangled_state(n);
    REQUIRE_THAT(trace_norm(partial_transpose(tau, n, n, Factor::left)),
                 Catch::Matchers::WithinAbs(static_cast<double>(n), 1e-12));
  }

  ComplexMatrix y = gaussian_matrix(6, 6, rng);
  ComplexMatrix twice =
      partial_transpose(partial_transpose(y, 2, 3, Factor::left), 2, 3, Factor::left);
  REQUIRE((twice - y).norm() < 1e-14);
  REQUIRE(std::abs(partial_transpose(y, 2, 3, Factor::right).trace() - y.trace()) <
          1e-13);
}

TEST_CASE("maximally entangled state") {
  ComplexMatrix tau1 = max_entangled_state(1);
  REQUIRE(tau1.rows() == 1);
  REQUIRE(std::abs(tau1(0, 0) - cplx(1.0, 0.0)) == 0.0);

  ComplexMatrix tau2 = max_entangled_state(2);
  for (int r : {0, 3}) {
    for (int c : {0, 3}) {
      REQUIRE_THAT(tau2(r, c).real(), Catch::Matchers::WithinAbs(0.5, 1e-15));
    }
  }
  REQUIRE_THAT(tau2.norm(), Catch::Matchers::WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(tau2.trace().real(), Catch::Matchers::WithinAbs(1.0, 1e-15));

  ComplexVector v = max_entangled_vector(3);
  REQUIRE((max_entangled_state(3) - v * v.adjoint()).norm() < 1e-15);
}

TEST_CASE("random generators have their defining properties") {
  Rng rng(31);
  ComplexMatrix u = random_unitary(3, rng);
  REQUIRE((u.adjoint() * u - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);

  ComplexMatrix v = random_isometry(6, 2, rng);
  REQUIRE((v.adjoint() * v - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);

  ComplexMatrix rho = random_density(4, rng);
  REQUIRE_THAT(rho.trace().real(), Catch::Matchers::WithinAbs(1.0, 1e-12));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho);
  REQUIRE(eig.eigenvalues().minCoeff() > -1e-12);

  // Determinism given the seed.
  Rng rng_a(77), rng_b(77);
  REQUIRE((random_unitary(4, rng_a) - random_unitary(4, rng_b)).norm() == 0.0);
}

TEST_CASE("trace norm is unitarily invariant") {
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix a = gaussian_matrix(4, 3, rng);
    ComplexMatrix u = random_unitary(4, rng);
    ComplexMatrix w = random_isometry(5, 3, rng);
    REQUIRE_THAT(trace_norm(u * a * w.adjoint()),
                 Catch::Matchers::WithinAbs(trace_norm(a), 1e-10));
  }
}

TEST_CASE("trace norm duality against unitary pairings") {
  Rng rng(42);
  ComplexMatrix a = gaussian_matrix(3, 3, rng);
  double tn = trace_norm(a);
  double best = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    ComplexMatrix w = random_unitary(3, rng);
    best = std::max(best, std::abs((w.adjoint() * a).trace().real()));
  }
  REQUIRE(best <= tn + 1e-10);
  auto f = svd(a);
  ComplexMatrix polar = f.left * f.right.adjoint();
  REQUIRE_THAT((polar.adjoint() * a).trace().real(),
               Catch::Matchers::WithinAbs(tn, 1e-11));
}

TEST_CASE("matricize round trip") {
  Rng rng(55);
  ComplexVector u = random_unit_vector(6, rng);
  ComplexMatrix m = matricize(u, 2, 3);
  for (int a = 0; a < 2; ++a) {
    for (int i = 0; i < 3; ++i) {
      REQUIRE(m(a, i) == u(a * 3 + i));
    }
  }
}
