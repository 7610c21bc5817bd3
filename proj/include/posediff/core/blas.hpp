// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace posediff {

// Row-major GEMM: C = alpha * op(A) * op(B) + beta * C.
// Backed by OpenBLAS; on first use the wrapper pins the kernel set to the
// actual ISA (cpuid detection fails on hypervisors that mask the CPU model,
// which silently drops OpenBLAS to its SSE2 fallback) and forces
// single-threaded mode -- outer loops own the parallelism here.
void gemm(bool trans_a, bool trans_b, int m, int n, int k, float alpha, const float* a, int lda, const float* b,
          int ldb, float beta, float* c, int ldc);
void gemm(bool trans_a, bool trans_b, int m, int n, int k, double alpha, const double* a, int lda, const double* b,
          int ldb, double beta, double* c, int ldc);

}  // namespace posediff
