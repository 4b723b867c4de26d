// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86-64; the dispatch layer only hands out this table when
// CPUID reports both features. The dgemm follows the usual packed-panel
// design: 6x8 register micro-tile, KC/MC/NC cache blocking, packing of both
// operands, parallelised over contiguous row ranges so every output row is
// produced by exactly one thread in a fixed arithmetic order.

#include "kernels_impl.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gclust::kernels::detail {
namespace {

constexpr Index MR = 6;
constexpr Index NR = 8;
constexpr Index KC = 256;
constexpr Index MC = 96;
constexpr Index NC = 1024;

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

// ---------------------------------------------------------------------------
// dgemm
// ---------------------------------------------------------------------------

// Packed A panel layout: micro-panels of MR rows, k-major within a panel,
// zero-padded to MR. Packed B: micro-panels of NR columns, k-major,
// zero-padded to NR.

void pack_a(bool trans, const double* a, Index lda, Index i0, Index p0, Index mc, Index kc,
            double* ap) {
    for (Index ir = 0; ir < mc; ir += MR) {
        double* panel = ap + (ir / MR) * MR * kc;
        const Index rows = std::min(MR, mc - ir);
        for (Index p = 0; p < kc; ++p) {
            for (Index r = 0; r < rows; ++r) {
                const Index gi = i0 + ir + r;
                const Index gp = p0 + p;
                panel[p * MR + r] = trans ? a[gp * lda + gi] : a[gi * lda + gp];
            }
            for (Index r = rows; r < MR; ++r) panel[p * MR + r] = 0.0;
        }
    }
}

void pack_b(bool trans, const double* b, Index ldb, Index p0, Index j0, Index kc, Index nc,
            double* bp) {
    for (Index jr = 0; jr < nc; jr += NR) {
        double* panel = bp + (jr / NR) * NR * kc;
        const Index colsn = std::min(NR, nc - jr);
        for (Index p = 0; p < kc; ++p) {
            for (Index cc = 0; cc < colsn; ++cc) {
                const Index gp = p0 + p;
                const Index gj = j0 + jr + cc;
                panel[p * NR + cc] = trans ? b[gj * ldb + gp] : b[gp * ldb + gj];
            }
            for (Index cc = colsn; cc < NR; ++cc) panel[p * NR + cc] = 0.0;
        }
    }
}

void micro_6x8(Index kc, const double* ap, const double* bp, double* c, Index ldc, bool acc) {
    __m256d c00, c01, c10, c11, c20, c21, c30, c31, c40, c41, c50, c51;
    if (acc) {
        c00 = _mm256_loadu_pd(c + 0 * ldc);
        c01 = _mm256_loadu_pd(c + 0 * ldc + 4);
        c10 = _mm256_loadu_pd(c + 1 * ldc);
        c11 = _mm256_loadu_pd(c + 1 * ldc + 4);
        c20 = _mm256_loadu_pd(c + 2 * ldc);
        c21 = _mm256_loadu_pd(c + 2 * ldc + 4);
        c30 = _mm256_loadu_pd(c + 3 * ldc);
        c31 = _mm256_loadu_pd(c + 3 * ldc + 4);
        c40 = _mm256_loadu_pd(c + 4 * ldc);
        c41 = _mm256_loadu_pd(c + 4 * ldc + 4);
        c50 = _mm256_loadu_pd(c + 5 * ldc);
        c51 = _mm256_loadu_pd(c + 5 * ldc + 4);
    } else {
        c00 = c01 = c10 = c11 = c20 = c21 = _mm256_setzero_pd();
        c30 = c31 = c40 = c41 = c50 = c51 = _mm256_setzero_pd();
    }
    for (Index p = 0; p < kc; ++p) {
        const __m256d b0 = _mm256_loadu_pd(bp + p * NR);
        const __m256d b1 = _mm256_loadu_pd(bp + p * NR + 4);
        __m256d av = _mm256_broadcast_sd(ap + p * MR + 0);
        c00 = _mm256_fmadd_pd(av, b0, c00);
        c01 = _mm256_fmadd_pd(av, b1, c01);
        av = _mm256_broadcast_sd(ap + p * MR + 1);
        c10 = _mm256_fmadd_pd(av, b0, c10);
        c11 = _mm256_fmadd_pd(av, b1, c11);
        av = _mm256_broadcast_sd(ap + p * MR + 2);
        c20 = _mm256_fmadd_pd(av, b0, c20);
        c21 = _mm256_fmadd_pd(av, b1, c21);
        av = _mm256_broadcast_sd(ap + p * MR + 3);
        c30 = _mm256_fmadd_pd(av, b0, c30);
        c31 = _mm256_fmadd_pd(av, b1, c31);
        av = _mm256_broadcast_sd(ap + p * MR + 4);
        c40 = _mm256_fmadd_pd(av, b0, c40);
        c41 = _mm256_fmadd_pd(av, b1, c41);
        av = _mm256_broadcast_sd(ap + p * MR + 5);
        c50 = _mm256_fmadd_pd(av, b0, c50);
        c51 = _mm256_fmadd_pd(av, b1, c51);
    }
    _mm256_storeu_pd(c + 0 * ldc, c00);
    _mm256_storeu_pd(c + 0 * ldc + 4, c01);
    _mm256_storeu_pd(c + 1 * ldc, c10);
    _mm256_storeu_pd(c + 1 * ldc + 4, c11);
    _mm256_storeu_pd(c + 2 * ldc, c20);
    _mm256_storeu_pd(c + 2 * ldc + 4, c21);
    _mm256_storeu_pd(c + 3 * ldc, c30);
    _mm256_storeu_pd(c + 3 * ldc + 4, c31);
    _mm256_storeu_pd(c + 4 * ldc, c40);
    _mm256_storeu_pd(c + 4 * ldc + 4, c41);
    _mm256_storeu_pd(c + 5 * ldc, c50);
    _mm256_storeu_pd(c + 5 * ldc + 4, c51);
}

struct PackBuffers {
    std::vector<double> ap;
    std::vector<double> bp;
};

PackBuffers& buffers() {
    thread_local PackBuffers bufs;
    return bufs;
}

// One thread's share: rows [m0, m1) of C. m_total is the full row count of
// the logical A (needed as the stored leading dimension when A is transposed).
void gemm_rows(bool ta, bool tb, Index m0, Index m1, Index m_total, Index n, Index k,
               const double* a, const double* b, double* c) {
    PackBuffers& bufs = buffers();
    bufs.ap.resize(static_cast<std::size_t>(MC * KC));
    bufs.bp.resize(static_cast<std::size_t>(KC * NC));

    const Index lda = ta ? m_total : k;
    const Index ldb = tb ? k : n;

    for (Index jc = 0; jc < n; jc += NC) {
        const Index ncur = std::min(NC, n - jc);
        for (Index pc = 0; pc < k; pc += KC) {
            const Index kcur = std::min(KC, k - pc);
            const bool acc = pc > 0;
            pack_b(tb, b, ldb, pc, jc, kcur, ncur, bufs.bp.data());
            for (Index ic = m0; ic < m1; ic += MC) {
                const Index mcur = std::min(MC, m1 - ic);
                pack_a(ta, a, lda, ic, pc, mcur, kcur, bufs.ap.data());
                for (Index jr = 0; jr < ncur; jr += NR) {
                    const Index nr = std::min(NR, ncur - jr);
                    const double* bpan = bufs.bp.data() + (jr / NR) * NR * kcur;
                    for (Index ir = 0; ir < mcur; ir += MR) {
                        const Index mr = std::min(MR, mcur - ir);
                        const double* apan = bufs.ap.data() + (ir / MR) * MR * kcur;
                        double* cpos = c + (ic + ir) * n + jc + jr;
                        if (mr == MR && nr == NR) {
                            micro_6x8(kcur, apan, bpan, cpos, n, acc);
                        } else {
                            alignas(32) double tmp[MR * NR];
                            micro_6x8(kcur, apan, bpan, tmp, NR, false);
                            for (Index r = 0; r < mr; ++r) {
                                double* crow = cpos + r * n;
                                const double* trow = tmp + r * NR;
                                if (acc)
                                    for (Index cc = 0; cc < nr; ++cc) crow[cc] += trow[cc];
                                else
                                    for (Index cc = 0; cc < nr; ++cc) crow[cc] = trow[cc];
                            }
                        }
                    }
                }
            }
        }
    }
}

void gemm_any(bool ta, bool tb, Index m, Index n, Index k, const double* a, const double* b,
              double* c) {
    if (m <= 0 || n <= 0) return;
    if (k <= 0) {
        std::fill(c, c + m * n, 0.0);
        return;
    }
#ifdef _OPENMP
    const double work = double(m) * double(n) * double(k);
    if (work >= 262144.0) {
#pragma omp parallel
        {
            const Index nt = omp_get_num_threads();
            const Index tid = omp_get_thread_num();
            const Index chunk = (m + nt - 1) / nt;
            const Index r0 = std::min(m, tid * chunk);
            const Index r1 = std::min(m, r0 + chunk);
            if (r0 < r1) gemm_rows(ta, tb, r0, r1, m, n, k, a, b, c);
        }
        return;
    }
#endif
    gemm_rows(ta, tb, 0, m, m, n, k, a, b, c);
}

void a_gemm_nn(Index m, Index n, Index k, const double* a, const double* b, double* c) {
    gemm_any(false, false, m, n, k, a, b, c);
}
void a_gemm_tn(Index m, Index n, Index k, const double* a, const double* b, double* c) {
    gemm_any(true, false, m, n, k, a, b, c);
}
void a_gemm_nt(Index m, Index n, Index k, const double* a, const double* b, double* c) {
    gemm_any(false, true, m, n, k, a, b, c);
}

// ---------------------------------------------------------------------------
// Sparse-dense product
// ---------------------------------------------------------------------------

void a_spmm_rows(const CsrMatrix& s, Index row_begin, Index row_end, const double* x, Index n,
                 double* out) {
#pragma omp parallel for schedule(static)
    for (Index i = row_begin; i < row_end; ++i) {
        double* oi = out + (i - row_begin) * n;
        std::fill(oi, oi + n, 0.0);
        for (Index e = s.row_offsets[i]; e < s.row_offsets[i + 1]; ++e) {
            const double v = s.values[static_cast<std::size_t>(e)];
            const double* xr = x + s.col_indices[static_cast<std::size_t>(e)] * n;
            const __m256d vv = _mm256_set1_pd(v);
            Index j = 0;
            for (; j + 8 <= n; j += 8) {
                __m256d o0 = _mm256_loadu_pd(oi + j);
                __m256d o1 = _mm256_loadu_pd(oi + j + 4);
                o0 = _mm256_fmadd_pd(vv, _mm256_loadu_pd(xr + j), o0);
                o1 = _mm256_fmadd_pd(vv, _mm256_loadu_pd(xr + j + 4), o1);
                _mm256_storeu_pd(oi + j, o0);
                _mm256_storeu_pd(oi + j + 4, o1);
            }
            for (; j < n; ++j) oi[j] += v * xr[j];
        }
    }
}

// ---------------------------------------------------------------------------
// Elementwise kernels
// ---------------------------------------------------------------------------

void a_prelu(const double* x, double* out, std::size_t n, double slope) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sl = _mm256_set1_pd(slope);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d pos = _mm256_cmp_pd(xv, zero, _CMP_GE_OQ);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(_mm256_mul_pd(sl, xv), xv, pos));
    }
    for (; i < n; ++i) out[i] = x[i] >= 0.0 ? x[i] : slope * x[i];
}

double a_prelu_grad(const double* x, const double* up, double* gx, std::size_t n, double slope) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sl = _mm256_set1_pd(slope);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d uv = _mm256_loadu_pd(up + i);
        const __m256d pos = _mm256_cmp_pd(xv, zero, _CMP_GE_OQ);
        _mm256_storeu_pd(gx + i, _mm256_blendv_pd(_mm256_mul_pd(uv, sl), uv, pos));
        acc = _mm256_add_pd(acc, _mm256_blendv_pd(_mm256_mul_pd(uv, xv), zero, pos));
    }
    double gslope = hsum(acc);
    for (; i < n; ++i) {
        if (x[i] >= 0.0) {
            gx[i] = up[i];
        } else {
            gx[i] = up[i] * slope;
            gslope += up[i] * x[i];
        }
    }
    return gslope;
}

void a_pairwise_sqdist(const double* h, Index b, const double* c, Index kk, Index d, double* out) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < b; ++i) {
        const double* hi = h + i * d;
        double* oi = out + i * kk;
        for (Index j = 0; j < kk; ++j) {
            const double* cj = c + j * d;
            __m256d acc0 = _mm256_setzero_pd();
            __m256d acc1 = _mm256_setzero_pd();
            Index t = 0;
            for (; t + 8 <= d; t += 8) {
                const __m256d d0 =
                    _mm256_sub_pd(_mm256_loadu_pd(hi + t), _mm256_loadu_pd(cj + t));
                const __m256d d1 =
                    _mm256_sub_pd(_mm256_loadu_pd(hi + t + 4), _mm256_loadu_pd(cj + t + 4));
                acc0 = _mm256_fmadd_pd(d0, d0, acc0);
                acc1 = _mm256_fmadd_pd(d1, d1, acc1);
            }
            for (; t + 4 <= d; t += 4) {
                const __m256d d0 =
                    _mm256_sub_pd(_mm256_loadu_pd(hi + t), _mm256_loadu_pd(cj + t));
                acc0 = _mm256_fmadd_pd(d0, d0, acc0);
            }
            double s = hsum(_mm256_add_pd(acc0, acc1));
            for (; t < d; ++t) {
                const double diff = hi[t] - cj[t];
                s += diff * diff;
            }
            oi[j] = s;
        }
    }
}

void a_adam_update(double* p, const double* g, double* m, double* v, std::size_t n, double lr,
                   double beta1, double beta2, double eps, std::int64_t t) {
    const double c1 = 1.0 / (1.0 - std::pow(beta1, static_cast<double>(t)));
    const double c2 = 1.0 / (1.0 - std::pow(beta2, static_cast<double>(t)));
    const __m256d b1 = _mm256_set1_pd(beta1);
    const __m256d b2 = _mm256_set1_pd(beta2);
    const __m256d ob1 = _mm256_set1_pd(1.0 - beta1);
    const __m256d ob2 = _mm256_set1_pd(1.0 - beta2);
    const __m256d c1v = _mm256_set1_pd(c1);
    const __m256d c2v = _mm256_set1_pd(c2);
    const __m256d lrv = _mm256_set1_pd(lr);
    const __m256d epsv = _mm256_set1_pd(eps);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        __m256d mv = _mm256_loadu_pd(m + i);
        __m256d vv = _mm256_loadu_pd(v + i);
        mv = _mm256_fmadd_pd(b1, mv, _mm256_mul_pd(ob1, gv));
        vv = _mm256_fmadd_pd(b2, vv, _mm256_mul_pd(ob2, _mm256_mul_pd(gv, gv)));
        _mm256_storeu_pd(m + i, mv);
        _mm256_storeu_pd(v + i, vv);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(_mm256_mul_pd(vv, c2v)), epsv);
        const __m256d step = _mm256_div_pd(_mm256_mul_pd(lrv, _mm256_mul_pd(mv, c1v)), denom);
        _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), step));
    }
    for (; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        p[i] -= lr * (m[i] * c1) / (std::sqrt(v[i] * c2) + eps);
    }
}

void a_axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{a_gemm_nn, a_gemm_tn,         a_gemm_nt,
                                   a_spmm_rows, a_prelu,         a_prelu_grad,
                                   a_pairwise_sqdist, a_adam_update, a_axpy};
    return &table;
}

}  // namespace gclust::kernels::detail

#else  // non-x86 or AVX2 not enabled for this TU

namespace gclust::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace gclust::kernels::detail

#endif
