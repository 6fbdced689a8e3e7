// Copyright 2026 The pagen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <immintrin.h>

#include <cmath>

#include "pagen/kernels.hpp"

namespace pagen::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_avx2(const double* p, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(p + i + 4));
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += p[i];
    return s;
}

// Skips whole 8-wide blocks while the remainder stays positive, then walks
// the block that crosses zero one element at a time.
std::size_t scan_subtract_avx2(const double* p, std::size_t n, double* u) {
    double r = *u;
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const double block = hsum(_mm256_add_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(p + i + 4)));
        if (r - block > 0.0) {
            r -= block;
            continue;
        }
        for (std::size_t j = i; j < i + 8; ++j) {
            r -= p[j];
            if (r <= 0.0) {
                *u = r;
                return j;
            }
        }
    }
    for (; i < n; ++i) {
        r -= p[i];
        if (r <= 0.0) {
            *u = r;
            return i;
        }
    }
    *u = r;
    return n;
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        m = _mm256_max_pd(m, _mm256_andnot_pd(sign, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double r = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
    for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i] - b[i]));
    return r;
}

}  // namespace

const KernelTable avx2_table{Isa::avx2, sum_avx2, scan_subtract_avx2, max_abs_diff_avx2};

}  // namespace pagen::kernels::detail
