// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#include "posediff/core/blas.hpp"

#include <cblas.h>

#include <cstdlib>

extern "C" void openblas_set_num_threads(int);

namespace posediff {
namespace {

void blas_init_once() {
    static const bool done = [] {
        // OPENBLAS_CORETYPE is read when the library dispatches its first
        // call, so setting it here (without overwriting a user's choice)
        // is early enough.
#if defined(__x86_64__) || defined(_M_X64)
        __builtin_cpu_init();
        if (__builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512vl") &&
            __builtin_cpu_supports("avx512bw") && __builtin_cpu_supports("avx512dq")) {
            setenv("OPENBLAS_CORETYPE", "SKYLAKEX", 0);
        } else if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            setenv("OPENBLAS_CORETYPE", "HASWELL", 0);
        }
#endif
        openblas_set_num_threads(1);
        return true;
    }();
    (void)done;
}

}  // namespace

void gemm(bool trans_a, bool trans_b, int m, int n, int k, float alpha, const float* a, int lda, const float* b,
          int ldb, float beta, float* c, int ldc) {
    blas_init_once();
    cblas_sgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans, trans_b ? CblasTrans : CblasNoTrans, m, n, k,
                alpha, a, lda, b, ldb, beta, c, ldc);
}

void gemm(bool trans_a, bool trans_b, int m, int n, int k, double alpha, const double* a, int lda, const double* b,
          int ldb, double beta, double* c, int ldc) {
    blas_init_once();
    cblas_dgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans, trans_b ? CblasTrans : CblasNoTrans, m, n, k,
                alpha, a, lda, b, ldb, beta, c, ldc);
}

}  // namespace posediff
