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

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops used by the samplers and validators. Each kernel
// has a scalar reference version plus AVX2 (x86-64) and NEON (AArch64)
// variants. The variant is picked once at startup from the CPU features and
// can be forced with the environment variable PAGEN_KERNELS=scalar|avx2|neon.

namespace pagen::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
    Isa isa;
    double (*sum)(const double* p, std::size_t n);
    // Subtracts p[0], p[1], ... from *u and returns the first index at which
    // *u drops to <= 0, or n when the whole range is consumed. *u holds the
    // remainder on return.
    std::size_t (*scan_subtract)(const double* p, std::size_t n, double* u);
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

bool supported(Isa isa) noexcept;

/// Table for a specific ISA. Throws std::invalid_argument if unsupported.
const KernelTable& table(Isa isa);

/// The table chosen at startup (or by the last call to `select`).
const KernelTable& active() noexcept;

/// Overrides the active table; meant for tests and benchmarks.
void select(Isa isa);

std::string_view name(Isa isa) noexcept;

inline double sum(std::span<const double> p) { return active().sum(p.data(), p.size()); }

inline std::size_t scan_subtract(std::span<const double> p, double& u) {
    return active().scan_subtract(p.data(), p.size(), &u);
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    return active().max_abs_diff(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

namespace detail {
extern const KernelTable scalar_table;
#if defined(PAGEN_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(PAGEN_HAVE_NEON)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace pagen::kernels
