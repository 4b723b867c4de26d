#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

// Scalar reference kernels. Deliberately plain loops: these define the
// semantics that the SIMD variants are equivalence-tested against, and they
// are the fallback on CPUs without AVX2. Parallelism is only ever over
// output rows, so results do not depend on the thread count.

namespace gclust::kernels::detail {
namespace {

void s_gemm_nn(Index m, Index n, Index k, const double* a, const double* b, double* c) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < m; ++i) {
        double* ci = c + i * n;
        std::fill(ci, ci + n, 0.0);
        const double* ai = a + i * k;
        for (Index p = 0; p < k; ++p) {
            const double av = ai[p];
            const double* bp = b + p * n;
            for (Index j = 0; j < n; ++j) ci[j] += av * bp[j];
        }
    }
}

void s_gemm_tn(Index m, Index n, Index k, const double* a, const double* b, double* c) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < m; ++i) {
        double* ci = c + i * n;
        std::fill(ci, ci + n, 0.0);
        for (Index p = 0; p < k; ++p) {
            const double av = a[p * m + i];
            const double* bp = b + p * n;
            for (Index j = 0; j < n; ++j) ci[j] += av * bp[j];
        }
    }
}

void s_gemm_nt(Index m, Index n, Index k, const double* a, const double* b, double* c) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < m; ++i) {
        const double* ai = a + i * k;
        double* ci = c + i * n;
        for (Index j = 0; j < n; ++j) {
            const double* bj = b + j * k;
            double s = 0.0;
            for (Index p = 0; p < k; ++p) s += ai[p] * bj[p];
            ci[j] = s;
        }
    }
}

void s_spmm_rows(const CsrMatrix& s, Index row_begin, Index row_end, const double* x, Index n,
                 double* out) {
#pragma omp parallel for schedule(static)
    for (Index i = row_begin; i < row_end; ++i) {
        double* oi = out + (i - row_begin) * n;
        std::fill(oi, oi + n, 0.0);
        for (Index e = s.row_offsets[i]; e < s.row_offsets[i + 1]; ++e) {
            const double v = s.values[static_cast<std::size_t>(e)];
            const double* xr = x + s.col_indices[static_cast<std::size_t>(e)] * n;
            for (Index j = 0; j < n; ++j) oi[j] += v * xr[j];
        }
    }
}

void s_prelu(const double* x, double* out, std::size_t n, double slope) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] >= 0.0 ? x[i] : slope * x[i];
}

double s_prelu_grad(const double* x, const double* up, double* gx, std::size_t n, double slope) {
    double gslope = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] >= 0.0) {
            gx[i] = up[i];
        } else {
            gx[i] = up[i] * slope;
            gslope += up[i] * x[i];
        }
    }
    return gslope;
}

void s_pairwise_sqdist(const double* h, Index b, const double* c, Index kk, Index d, double* out) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < b; ++i) {
        const double* hi = h + i * d;
        double* oi = out + i * kk;
        for (Index j = 0; j < kk; ++j) {
            const double* cj = c + j * d;
            double s = 0.0;
            for (Index t = 0; t < d; ++t) {
                const double diff = hi[t] - cj[t];
                s += diff * diff;
            }
            oi[j] = s;
        }
    }
}

void s_adam_update(double* p, const double* g, double* m, double* v, std::size_t n, double lr,
                   double beta1, double beta2, double eps, std::int64_t t) {
    const double c1 = 1.0 / (1.0 - std::pow(beta1, static_cast<double>(t)));
    const double c2 = 1.0 / (1.0 - std::pow(beta2, static_cast<double>(t)));
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        p[i] -= lr * (m[i] * c1) / (std::sqrt(v[i] * c2) + eps);
    }
}

void s_axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{s_gemm_nn, s_gemm_tn,        s_gemm_nt,
                                   s_spmm_rows, s_prelu,        s_prelu_grad,
                                   s_pairwise_sqdist, s_adam_update, s_axpy};
    return table;
}

}  // namespace gclust::kernels::detail
