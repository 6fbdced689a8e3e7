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

#include <cmath>

#include "pagen/kernels.hpp"

namespace pagen::kernels::detail {

namespace {

double sum_scalar(const double* p, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
}

std::size_t scan_subtract_scalar(const double* p, std::size_t n, double* u) {
    double r = *u;
    for (std::size_t i = 0; i < n; ++i) {
        r -= p[i];
        if (r <= 0.0) {
            *u = r;
            return i;
        }
    }
    *u = r;
    return n;
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

const KernelTable scalar_table{Isa::scalar, sum_scalar, scan_subtract_scalar, max_abs_diff_scalar};

}  // namespace pagen::kernels::detail
