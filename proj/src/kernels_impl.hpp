#pragma once

#include "gclust/kernels.hpp"

// Internal backend table. Each backend provides the full kernel set; the
// dispatch layer in kernels.cpp selects one table at startup.

namespace gclust::kernels::detail {

struct KernelTable {
    void (*gemm_nn)(Index, Index, Index, const double*, const double*, double*);
    void (*gemm_tn)(Index, Index, Index, const double*, const double*, double*);
    void (*gemm_nt)(Index, Index, Index, const double*, const double*, double*);
    void (*spmm_rows)(const CsrMatrix&, Index, Index, const double*, Index, double*);
    void (*prelu)(const double*, double*, std::size_t, double);
    double (*prelu_grad)(const double*, const double*, double*, std::size_t, double);
    void (*pairwise_sqdist)(const double*, Index, const double*, Index, Index, double*);
    void (*adam_update)(double*, const double*, double*, double*, std::size_t, double, double,
                        double, double, std::int64_t);
    void (*axpy)(double, const double*, double*, std::size_t);
};

const KernelTable& scalar_table();

/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table();

}  // namespace gclust::kernels::detail
