#pragma once

#include <cstddef>
#include <cstdint>

#include "gclust/csr_matrix.hpp"

namespace gclust::kernels {

/// Compute backend for the arithmetic inner loops. Every kernel has a plain
/// scalar reference implementation and an AVX2+FMA variant; the active one
/// is picked at startup from CPUID and can be overridden (tests pin both
/// backends and cross-check them).
enum class Backend { Auto, Scalar, Avx2 };

bool avx2_supported() noexcept;
void set_backend(Backend b);
Backend active_backend() noexcept;
const char* backend_name() noexcept;

// ---------------------------------------------------------------------------
// Dense matrix product kernels. Row-major storage throughout. Outputs are
// overwritten, never accumulated. Parallelised over output rows with a
// static schedule, so results are bitwise independent of thread count.
// ---------------------------------------------------------------------------

/// C(m×n) = A(m×k) · B(k×n)
void gemm_nn(Index m, Index n, Index k, const double* a, const double* b, double* c);

/// C(m×n) = A(k×m)ᵀ · B(k×n)
void gemm_tn(Index m, Index n, Index k, const double* a, const double* b, double* c);

/// C(m×n) = A(m×k) · B(n×k)ᵀ
void gemm_nt(Index m, Index n, Index k, const double* a, const double* b, double* c);

// ---------------------------------------------------------------------------
// Sparse-dense products.
// ---------------------------------------------------------------------------

/// out(rows×n) = S · X with X dense (s.cols × n).
void spmm(const CsrMatrix& s, const double* x, Index n, double* out);

/// Rows [row_begin, row_end) of S·X only; out has (row_end-row_begin) rows.
/// Each output row is produced by the same arithmetic as in the full product,
/// so slicing is bitwise consistent with spmm.
void spmm_rows(const CsrMatrix& s, Index row_begin, Index row_end, const double* x, Index n,
               double* out);

// ---------------------------------------------------------------------------
// Elementwise and reduction kernels.
// ---------------------------------------------------------------------------

/// out = x if x >= 0 else slope*x. The x == 0 case takes the positive branch.
void prelu(const double* x, double* out, std::size_t n, double slope);

/// gx[i] = up[i] * (x[i] >= 0 ? 1 : slope); returns Σ_{x<0} up[i]*x[i],
/// the exact subgradient wrt the slope under the positive-branch-at-zero
/// convention.
double prelu_grad(const double* x, const double* up, double* gx, std::size_t n, double slope);

/// out[i*kk + j] = ||h_i - c_j||². Computed by direct differencing (not the
/// norm/dot expansion) so exact zeros stay exact and entries never go
/// negative from cancellation.
void pairwise_sqdist(const double* h, Index b, const double* c, Index kk, Index d, double* out);

/// Bias-corrected Adam update at step t (t >= 1): updates p, m, v in place.
void adam_update(double* p, const double* g, double* m, double* v, std::size_t n, double lr,
                 double beta1, double beta2, double eps, std::int64_t t);

/// y += a*x
void axpy(double a, const double* x, double* y, std::size_t n);

}  // namespace gclust::kernels
