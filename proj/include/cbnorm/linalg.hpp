#pragma once

#include "cbnorm/complex_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>

namespace cbnorm {

// Relative tolerance for factorization residuals (matrices up to ~100 rows).
inline constexpr double kFactorizationTol = 1e-12;
// Singular values below this multiple of the largest are treated as rank noise.
inline constexpr double kRankCutoff = 1e-9;

struct SvdResult {
  ComplexMatrix left;          // columns orthonormal
  RealVector singular_values;  // non-increasing, nonnegative
  ComplexMatrix right;         // columns orthonormal; A = left * diag(s) * right^*
};

inline SvdResult svd(const ComplexMatrix& a) {
  require_finite(a, "svd");
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult result{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  if (!result.left.allFinite() || !result.singular_values.allFinite() ||
      !result.right.allFinite()) {
    throw FactorizationError("svd: factorization did not converge to finite values");
  }
  return result;
}

inline RealVector singular_values(const ComplexMatrix& a) {
  require_finite(a, "singular_values");
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  return solver.singularValues();
}

/// Sum of singular values, Tr sqrt(A^* A).
inline double trace_norm(const ComplexMatrix& a) {
  return singular_values(a).sum();
}

/// Largest singular value.
inline double operator_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return singular_values(a)(0);
}

struct HahnDecomposition {
  ComplexMatrix positive_part;  // PSD
  ComplexMatrix negative_part;  // PSD, orthogonal to positive_part
};

/// Unique split H = P - Q with P, Q >= 0 and PQ = 0. Eigenvalues in
/// [-tol, tol] are assigned to the positive part.
inline HahnDecomposition hahn_decompose(const ComplexMatrix& h, double tol = 1e-10) {
  require_finite(h, "hahn_decompose");
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("hahn_decompose: matrix must be square");
  }
  double herm_residual = (h - h.adjoint()).norm();
  if (herm_residual > tol * std::max(1.0, h.norm())) {
    throw std::invalid_argument("hahn_decompose: input is not Hermitian");
  }
  ComplexMatrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw FactorizationError("hahn_decompose: eigensolver failed");
  }
  const RealVector& vals = eig.eigenvalues();
  const ComplexMatrix& vecs = eig.eigenvectors();
  ComplexMatrix p = ComplexMatrix::Zero(h.rows(), h.cols());
  ComplexMatrix q = ComplexMatrix::Zero(h.rows(), h.cols());
  for (int i = 0; i < vals.size(); ++i) {
    ComplexMatrix proj = vecs.col(i) * vecs.col(i).adjoint();
    if (vals(i) >= -tol) {
      p += vals(i) * proj;
    } else {
      q -= vals(i) * proj;
    }
  }
  return {p, q};
}

/// Kronecker product, left factor major: entry ((a,i),(b,j)) = A_ab * B_ij.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ar = 0; ar < a.rows(); ++ar) {
    for (int ac = 0; ac < a.cols(); ++ac) {
      out.block(ar * b.rows(), ac * b.cols(), b.rows(), b.cols()) = a(ar, ac) * b;
    }
  }
  return out;
}

enum class Factor { left, right };

inline void check_bipartite(const ComplexMatrix& x, int dim_left, int dim_right,
                            const char* what) {
  if (dim_left < 1 || dim_right < 1 ||
      x.rows() != static_cast<Eigen::Index>(dim_left) * dim_right ||
      x.cols() != x.rows()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

/// Traces out the selected tensor factor of X acting on C^l (x) C^r.
inline ComplexMatrix partial_trace(const ComplexMatrix& x, int dim_left, int dim_right,
                                   Factor which) {
  check_bipartite(x, dim_left, dim_right, "partial_trace");
  if (which == Factor::right) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_left, dim_left);
    for (int a = 0; a < dim_left; ++a) {
      for (int b = 0; b < dim_left; ++b) {
        cplx sum = 0.0;
        for (int i = 0; i < dim_right; ++i) {
          sum += x(a * dim_right + i, b * dim_right + i);
        }
        out(a, b) = sum;
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_right, dim_right);
  for (int i = 0; i < dim_right; ++i) {
    for (int j = 0; j < dim_right; ++j) {
      cplx sum = 0.0;
      for (int a = 0; a < dim_left; ++a) {
        sum += x(a * dim_right + i, a * dim_right + j);
      }
      out(i, j) = sum;
    }
  }
  return out;
}

/// Transposes the selected tensor factor of X acting on C^l (x) C^r.
inline ComplexMatrix partial_transpose(const ComplexMatrix& x, int dim_left,
                                       int dim_right, Factor which) {
  check_bipartite(x, dim_left, dim_right, "partial_transpose");
  ComplexMatrix out(x.rows(), x.cols());
  for (int a = 0; a < dim_left; ++a) {
    for (int b = 0; b < dim_left; ++b) {
      for (int i = 0; i < dim_right; ++i) {
        for (int j = 0; j < dim_right; ++j) {
          if (which == Factor::left) {
            out(a * dim_right + i, b * dim_right + j) =
                x(b * dim_right + i, a * dim_right + j);
          } else {
            out(a * dim_right + i, b * dim_right + j) =
                x(a * dim_right + j, b * dim_right + i);
          }
        }
      }
    }
  }
  return out;
}

/// tau_n = (1/n) sum_{a,b} E_ab (x) E_ab: the canonical maximally entangled state.
inline ComplexMatrix max_entangled_state(int n) {
  if (n < 1) throw std::invalid_argument("max_entangled_state: n must be >= 1");
  ComplexMatrix tau = ComplexMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      tau(a * n + a, b * n + b) = 1.0 / n;
    }
  }
  return tau;
}

/// Unit vector (1/sqrt(n)) sum_a e_a (x) e_a, so tau_n = v v^*.
inline ComplexVector max_entangled_vector(int n) {
  ComplexVector v = ComplexVector::Zero(n * n);
  for (int a = 0; a < n; ++a) {
    v(a * n + a) = 1.0 / std::sqrt(static_cast<double>(n));
  }
  return v;
}

/// Haar unitary via QR of a Gaussian matrix with phase-corrected R diagonal.
inline ComplexMatrix random_unitary(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_unitary: n must be >= 1");
  ComplexMatrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cplx d = r(i, i);
    double mag = std::abs(d);
    q.col(i) *= (mag > 0) ? d / mag : cplx(1.0, 0.0);
  }
  return q;
}

/// First `cols` columns of a Haar unitary on C^rows.
inline ComplexMatrix random_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols || cols < 1) {
    throw std::invalid_argument("random_isometry: need rows >= cols >= 1");
  }
  return random_unitary(rows, rng).leftCols(cols);
}

/// Normalized G G^* for Gaussian G: full-rank density matrix.
inline ComplexMatrix random_density(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_density: n must be >= 1");
  ComplexMatrix g = gaussian_matrix(n, n, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline ComplexVector random_unit_vector(int n, Rng& rng) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.cnormal();
  return v / v.norm();
}

inline ComplexMatrix random_hermitian(int n, Rng& rng) {
  ComplexMatrix g = gaussian_matrix(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

/// Reshapes u in C^l (x) C^r (left factor major) into the l x r matrix
/// M with M(a, i) = u(a*r + i), so u = sum_ai M(a,i) e_a (x) e_i.
inline ComplexMatrix matricize(const ComplexVector& u, int dim_left, int dim_right) {
  if (u.size() != static_cast<Eigen::Index>(dim_left) * dim_right) {
    throw std::invalid_argument("matricize: dimension mismatch");
  }
  ComplexMatrix m(dim_left, dim_right);
  for (int a = 0; a < dim_left; ++a) {
    for (int i = 0; i < dim_right; ++i) {
      m(a, i) = u(a * dim_right + i);
    }
  }
  return m;
}

inline int numerical_rank(const RealVector& sv, double cutoff = kRankCutoff) {
  if (sv.size() == 0) return 0;
  double threshold = cutoff * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  return r;
}

}  // namespace cbnorm
