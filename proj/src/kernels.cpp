#include "gclust/kernels.hpp"

#include "gclust/errors.hpp"
#include "kernels_impl.hpp"

namespace gclust::kernels {

namespace {

Backend g_requested = Backend::Auto;

const detail::KernelTable* resolve(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return &detail::scalar_table();
        case Backend::Avx2: {
            const detail::KernelTable* t = avx2_supported() ? detail::avx2_table() : nullptr;
            if (t == nullptr) throw ArgumentError("AVX2 backend not available on this CPU/build");
            return t;
        }
        case Backend::Auto:
        default: {
            const detail::KernelTable* t = avx2_supported() ? detail::avx2_table() : nullptr;
            return t != nullptr ? t : &detail::scalar_table();
        }
    }
}

const detail::KernelTable*& active_table() {
    static const detail::KernelTable* table = resolve(Backend::Auto);
    return table;
}

}  // namespace

bool avx2_supported() noexcept {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void set_backend(Backend b) {
    active_table() = resolve(b);
    g_requested = b;
}

Backend active_backend() noexcept {
    if (g_requested != Backend::Auto) return g_requested;
    return active_table() == &detail::scalar_table() ? Backend::Scalar : Backend::Avx2;
}

const char* backend_name() noexcept {
    return active_table() == &detail::scalar_table() ? "scalar" : "avx2";
}

void gemm_nn(Index m, Index n, Index k, const double* a, const double* b, double* c) {
    active_table()->gemm_nn(m, n, k, a, b, c);
}
void gemm_tn(Index m, Index n, Index k, const double* a, const double* b, double* c) {
    active_table()->gemm_tn(m, n, k, a, b, c);
}
void gemm_nt(Index m, Index n, Index k, const double* a, const double* b, double* c) {
    active_table()->gemm_nt(m, n, k, a, b, c);
}
void spmm(const CsrMatrix& s, const double* x, Index n, double* out) {
    active_table()->spmm_rows(s, 0, s.rows, x, n, out);
}
void spmm_rows(const CsrMatrix& s, Index row_begin, Index row_end, const double* x, Index n,
               double* out) {
    active_table()->spmm_rows(s, row_begin, row_end, x, n, out);
}
void prelu(const double* x, double* out, std::size_t n, double slope) {
    active_table()->prelu(x, out, n, slope);
}
double prelu_grad(const double* x, const double* up, double* gx, std::size_t n, double slope) {
    return active_table()->prelu_grad(x, up, gx, n, slope);
}
void pairwise_sqdist(const double* h, Index b, const double* c, Index kk, Index d, double* out) {
    active_table()->pairwise_sqdist(h, b, c, kk, d, out);
}
void adam_update(double* p, const double* g, double* m, double* v, std::size_t n, double lr,
                 double beta1, double beta2, double eps, std::int64_t t) {
    active_table()->adam_update(p, g, m, v, n, lr, beta1, beta2, eps, t);
}
void axpy(double a, const double* x, double* y, std::size_t n) {
    active_table()->axpy(a, x, y, n);
}

}  // namespace gclust::kernels
