#include "kernels/kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace legmoment::simd {

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(LEGMOMENT_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::neon:
#if defined(LEGMOMENT_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

namespace {

Isa detect() {
    if (const char* env = std::getenv("LEGMOMENT_ISA")) {
        const std::string want(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
            if (want == isa_name(isa) && isa_available(isa)) return isa;
    }
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (!isa_available(isa))
        throw std::invalid_argument("ISA '" + std::string(isa_name(isa)) + "' not available");
    current().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return detail::scalar_kernels();
    case Isa::avx2:
#if defined(LEGMOMENT_HAVE_AVX2)
        return detail::avx2_kernels();
#else
        break;
#endif
    case Isa::neon:
#if defined(LEGMOMENT_HAVE_NEON)
        return detail::neon_kernels();
#else
        break;
#endif
    }
    throw std::invalid_argument("ISA '" + std::string(isa_name(isa)) + "' not compiled in");
}

} // namespace legmoment::simd
