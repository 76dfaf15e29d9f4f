#pragma once

// Internal: per-ISA kernel tables. Each lives in its own translation unit so
// only that unit is compiled with the wider instruction set.

#include "spike_esn/simd.hpp"

namespace spike_esn::simd::detail {

extern const KernelTable scalar_table;
#if defined(SPIKE_ESN_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(SPIKE_ESN_HAVE_NEON)
extern const KernelTable neon_table;
#endif

}  // namespace spike_esn::simd::detail
