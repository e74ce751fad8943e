#pragma once

#include "cbnorm/linalg.hpp"

#include <functional>
#include <iostream>
#include <optional>
#include <utility>
#include <vector>

namespace cbnorm {

/// A linear map M_n -> M_m stored by its Choi matrix
///   J(Phi) = sum_{a,b} Phi(E_ab) (x) E_ab
/// with the output factor on the left: row index (p, a) = p*n + a for
/// p in [m], a in [n]. All partial-trace/transpose calls below name the
/// factors by role (output = left, input = right).
struct LinearMapRep {
  int in_dim = 0;   // n
  int out_dim = 0;  // m
  ComplexMatrix choi;

  LinearMapRep() = default;
  LinearMapRep(int n, int m, ComplexMatrix j) : in_dim(n), out_dim(m), choi(std::move(j)) {
    if (n < 1 || m < 1 || choi.rows() != static_cast<Eigen::Index>(n) * m ||
        choi.cols() != choi.rows()) {
      throw std::invalid_argument("LinearMapRep: Choi matrix dimension mismatch");
    }
    require_finite(choi, "LinearMapRep");
  }
};

/// Kraus form Phi(X) = sum_i L_i X R_i^*; right absent means R = L.
struct KrausSet {
  std::vector<ComplexMatrix> left;
  std::optional<std::vector<ComplexMatrix>> right;
};

namespace detail {
inline ComplexVector stack_columns_interleaved(const ComplexMatrix& l) {
  // w(L) = sum_a (L e_a) (x) e_a in C^m (x) C^n, left factor major.
  const int m = static_cast<int>(l.rows());
  const int n = static_cast<int>(l.cols());
  ComplexVector w(m * n);
  for (int p = 0; p < m; ++p) {
    for (int a = 0; a < n; ++a) {
      w(p * n + a) = l(p, a);
    }
  }
  return w;
}
}  // namespace detail

inline LinearMapRep map_from_kraus(const KrausSet& k) {
  if (k.left.empty()) throw std::invalid_argument("map_from_kraus: empty Kraus set");
  const int m = static_cast<int>(k.left[0].rows());
  const int n = static_cast<int>(k.left[0].cols());
  const auto& right = k.right ? *k.right : k.left;
  if (right.size() != k.left.size()) {
    throw std::invalid_argument("map_from_kraus: left/right length mismatch");
  }
  ComplexMatrix j = ComplexMatrix::Zero(m * n, m * n);
  for (std::size_t i = 0; i < k.left.size(); ++i) {
    if (k.left[i].rows() != m || k.left[i].cols() != n || right[i].rows() != m ||
        right[i].cols() != n) {
      throw std::invalid_argument("map_from_kraus: operator dimension mismatch");
    }
    j += detail::stack_columns_interleaved(k.left[i]) *
         detail::stack_columns_interleaved(right[i]).adjoint();
  }
  return LinearMapRep(n, m, std::move(j));
}

/// Phi(X)[p,q] = sum_{a,c} J[(p,a),(q,c)] X[a,c].
inline ComplexMatrix apply(const LinearMapRep& phi, const ComplexMatrix& x) {
  const int n = phi.in_dim;
  const int m = phi.out_dim;
  if (x.rows() != n || x.cols() != n) {
    throw std::invalid_argument("apply: input dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      cplx sum = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int c = 0; c < n; ++c) {
          sum += phi.choi(p * n + a, q * n + c) * x(a, c);
        }
      }
      out(p, q) = sum;
    }
  }
  return out;
}

using MatrixAction = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Assembles the Choi matrix by evaluating `action` on all n^2 elementary
/// matrices. Linearity is spot-checked on 5 random pairs (warning only).
inline LinearMapRep choi_from_apply(const MatrixAction& action, int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("choi_from_apply: bad dimensions");
  ComplexMatrix j = ComplexMatrix::Zero(m * n, m * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      ComplexMatrix img = action(elementary(n, a, b));
      if (img.rows() != m || img.cols() != m) {
        throw std::invalid_argument("choi_from_apply: action output has wrong dimensions");
      }
      for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
          j(p * n + a, q * n + b) += img(p, q);
        }
      }
    }
  }
  LinearMapRep rep(n, m, std::move(j));
  Rng rng(0x11ab0d1eULL);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix x = gaussian_matrix(n, n, rng);
    ComplexMatrix y = gaussian_matrix(n, n, rng);
    cplx alpha = rng.cnormal();
    double residual =
        (action(x + alpha * y) - action(x) - alpha * action(y)).norm();
    if (residual > 1e-10 * (1.0 + x.norm() + y.norm())) {
      std::cerr << "choi_from_apply: warning: action failed linearity spot-check"
                << " (residual " << residual << ")\n";
      break;
    }
  }
  return rep;
}

inline LinearMapRep identity_map(int n) {
  ComplexMatrix j = ComplexMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      j(a * n + a, b * n + b) = 1.0;  // E_ab (x) E_ab
    }
  }
  return LinearMapRep(n, n, std::move(j));
}

inline LinearMapRep transpose_map(int n) {
  ComplexMatrix j = ComplexMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      j(b * n + a, a * n + b) = 1.0;  // E_ba (x) E_ab: the swap operator
    }
  }
  return LinearMapRep(n, n, std::move(j));
}

inline LinearMapRep scale(const LinearMapRep& phi, double c) {
  return LinearMapRep(phi.in_dim, phi.out_dim, phi.choi * c);
}

inline LinearMapRep add(const LinearMapRep& phi, const LinearMapRep& psi) {
  if (phi.in_dim != psi.in_dim || phi.out_dim != psi.out_dim) {
    throw std::invalid_argument("add: dimension mismatch");
  }
  return LinearMapRep(phi.in_dim, phi.out_dim, phi.choi + psi.choi);
}

inline LinearMapRep subtract(const LinearMapRep& phi, const LinearMapRep& psi) {
  if (phi.in_dim != psi.in_dim || phi.out_dim != psi.out_dim) {
    throw std::invalid_argument("subtract: dimension mismatch");
  }
  return LinearMapRep(phi.in_dim, phi.out_dim, phi.choi - psi.choi);
}

/// Composite phi . psi (apply psi first).
inline LinearMapRep compose(const LinearMapRep& phi, const LinearMapRep& psi) {
  if (phi.in_dim != psi.out_dim) {
    throw std::invalid_argument("compose: inner dimension mismatch");
  }
  const int n = psi.in_dim;
  const int m = phi.out_dim;
  ComplexMatrix j = ComplexMatrix::Zero(m * n, m * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      ComplexMatrix img = apply(phi, apply(psi, elementary(n, a, b)));
      for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
          j(p * n + a, q * n + b) = img(p, q);
        }
      }
    }
  }
  return LinearMapRep(n, m, std::move(j));
}

/// Phi . T_n, computed as the input-factor partial transpose of J(Phi).
inline LinearMapRep compose_transpose(const LinearMapRep& phi) {
  return LinearMapRep(phi.in_dim, phi.out_dim,
                      partial_transpose(phi.choi, phi.out_dim, phi.in_dim, Factor::right));
}

/// Phi (x) id_k : M_{nk} -> M_{mk}, input space ordered as C^n (x) C^k.
inline LinearMapRep tensor_with_identity(const LinearMapRep& phi, int k) {
  if (k < 1) throw std::invalid_argument("tensor_with_identity: k must be >= 1");
  if (k == 1) return phi;
  const int n = phi.in_dim;
  const int m = phi.out_dim;
  const int nk = n * k;
  ComplexMatrix j = ComplexMatrix::Zero(m * k * nk, m * k * nk);
  // J[( (p,i), (a,i) ), ( (q,j), (b,j) )] = J_phi[(p,a),(q,b)]
  for (int p = 0; p < m; ++p) {
    for (int a = 0; a < n; ++a) {
      for (int q = 0; q < m; ++q) {
        for (int b = 0; b < n; ++b) {
          cplx v = phi.choi(p * n + a, q * n + b);
          if (v == cplx(0.0, 0.0)) continue;
          for (int i = 0; i < k; ++i) {
            for (int jx = 0; jx < k; ++jx) {
              int row = (p * k + i) * nk + (a * k + i);
              int col = (q * k + jx) * nk + (b * k + jx);
              j(row, col) = v;
            }
          }
        }
      }
    }
  }
  return LinearMapRep(nk, m * k, std::move(j));
}

/// Hilbert-Schmidt adjoint: <A, Phi(B)> = <Phi^*(A), B>.
inline LinearMapRep adjoint_map(const LinearMapRep& phi) {
  const int n = phi.in_dim;
  const int m = phi.out_dim;
  ComplexMatrix j(n * m, n * m);
  // J(Phi^*)[(a,c),(b,d)] = conj(J(Phi)[(c,a),(d,b)])
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < m; ++c) {
      for (int b = 0; b < n; ++b) {
        for (int d = 0; d < m; ++d) {
          j(a * m + c, b * m + d) = std::conj(phi.choi(c * n + a, d * n + b));
        }
      }
    }
  }
  return LinearMapRep(m, n, std::move(j));
}

struct PredicateResult {
  bool value = false;
  double residual = 0.0;
  explicit operator bool() const { return value; }
};

/// Choi criterion: J(Phi) PSD.
inline PredicateResult is_completely_positive(const LinearMapRep& phi, double tol = 1e-10) {
  double herm = (phi.choi - phi.choi.adjoint()).norm();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig((phi.choi + phi.choi.adjoint()) / 2.0);
  double min_eig = eig.eigenvalues().minCoeff();
  double residual = std::max(herm, std::max(0.0, -min_eig));
  return {residual <= tol, residual};
}

/// Choi criterion: Tr_out J(Phi) = I_n.
inline PredicateResult is_trace_preserving(const LinearMapRep& phi, double tol = 1e-10) {
  ComplexMatrix tr = partial_trace(phi.choi, phi.out_dim, phi.in_dim, Factor::left);
  double residual = (tr - ComplexMatrix::Identity(phi.in_dim, phi.in_dim)).norm();
  return {residual <= tol, residual};
}

/// Choi criterion: J(Phi) Hermitian.
inline PredicateResult is_hermiticity_preserving(const LinearMapRep& phi,
                                                 double tol = 1e-10) {
  double residual = (phi.choi - phi.choi.adjoint()).norm();
  return {residual <= tol, residual};
}

struct WernerHolevoPair {
  LinearMapRep phi0;  // X -> (Tr(X) I + X^t) / (n+1)
  LinearMapRep phi1;  // X -> (Tr(X) I - X^t) / (n-1)
  double lambda = 0.0;  // (n+1) / (2n)
};

inline WernerHolevoPair wh_channels(int n) {
  if (n < 2) throw std::invalid_argument("wh_channels: n must be >= 2");
  ComplexMatrix eye = ComplexMatrix::Identity(n * n, n * n);
  ComplexMatrix swap = transpose_map(n).choi;
  // J(Phi0) = (I + swap)/(n+1), J(Phi1) = (I - swap)/(n-1)
  LinearMapRep phi0(n, n, (eye + swap) / (n + 1.0));
  LinearMapRep phi1(n, n, (eye - swap) / (n - 1.0));
  return {std::move(phi0), std::move(phi1), (n + 1.0) / (2.0 * n)};
}

/// Random CPTP map: Gaussian-Choi PSD matrix, renormalized so Tr_out J = I.
inline LinearMapRep random_channel(int n, int m, Rng& rng, int choi_rank = 0) {
  const int d = n * m;
  if (choi_rank < 1 || choi_rank > d) choi_rank = d;
  ComplexMatrix g = gaussian_matrix(d, choi_rank, rng);
  ComplexMatrix j = g * g.adjoint();
  ComplexMatrix k = partial_trace(j, m, n, Factor::left);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(k);
  ComplexMatrix k_inv_sqrt = eig.operatorInverseSqrt();
  ComplexMatrix corr = kron(ComplexMatrix::Identity(m, m), k_inv_sqrt);
  return LinearMapRep(n, m, corr * j * corr.adjoint());
}

/// Random Hermiticity-preserving map: Gaussian Hermitian Choi matrix.
inline LinearMapRep random_hermiticity_preserving_map(int n, int m, Rng& rng) {
  return LinearMapRep(n, m, random_hermitian(n * m, rng));
}

}  // namespace cbnorm
