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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "pagen/kernels.hpp"

namespace pagen::kernels {

bool supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(PAGEN_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#if defined(PAGEN_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::string_view name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "?";
}

const KernelTable& table(Isa isa) {
    if (!supported(isa)) throw std::invalid_argument("kernel ISA not supported on this CPU: " + std::string(name(isa)));
    switch (isa) {
#if defined(PAGEN_HAVE_AVX2)
        case Isa::avx2: return detail::avx2_table;
#endif
#if defined(PAGEN_HAVE_NEON)
        case Isa::neon: return detail::neon_table;
#endif
        default: return detail::scalar_table;
    }
}

namespace {

const KernelTable* initial_table() {
    if (const char* forced = std::getenv("PAGEN_KERNELS")) {
        const std::string_view want(forced);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (want == name(isa) && supported(isa)) return &table(isa);
        }
    }
    if (supported(Isa::avx2)) return &table(Isa::avx2);
    if (supported(Isa::neon)) return &table(Isa::neon);
    return &detail::scalar_table;
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> ptr{initial_table()};
    return ptr;
}

}  // namespace

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

void select(Isa isa) { current().store(&table(isa), std::memory_order_relaxed); }

}  // namespace pagen::kernels
