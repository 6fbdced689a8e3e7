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

#include <arm_neon.h>

#include <cmath>

#include "pagen/kernels.hpp"

namespace pagen::kernels::detail {

namespace {

double sum_neon(const double* p, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vld1q_f64(p + i));
        acc1 = vaddq_f64(acc1, vld1q_f64(p + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += p[i];
    return s;
}

std::size_t scan_subtract_neon(const double* p, std::size_t n, double* u) {
    double r = *u;
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        float64x2_t s = vaddq_f64(vaddq_f64(vld1q_f64(p + i), vld1q_f64(p + i + 2)),
                                  vaddq_f64(vld1q_f64(p + i + 4), vld1q_f64(p + i + 6)));
        const double block = vaddvq_f64(s);
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

double max_abs_diff_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        m = vmaxnmq_f64(m, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    double r = vmaxnmvq_f64(m);
    for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i] - b[i]));
    return r;
}

}  // namespace

const KernelTable neon_table{Isa::neon, sum_neon, scan_subtract_neon, max_abs_diff_neon};

}  // namespace pagen::kernels::detail
