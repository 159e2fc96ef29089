#pragma once

#include "legmoment/simd.hpp"

namespace legmoment::simd::detail {

const KernelTable& scalar_kernels();
#if defined(LEGMOMENT_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(LEGMOMENT_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

} // namespace legmoment::simd::detail
