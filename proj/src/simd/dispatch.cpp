#include "kernels.hpp"

#include "spike_esn/error.hpp"

#include <atomic>
#include <string>

namespace spike_esn::simd {

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

Isa parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "neon") return Isa::neon;
    throw Error(Errc::invalid_argument, "unknown instruction set '" + std::string(name) + "'");
}

const KernelTable& scalar_kernels() noexcept { return detail::scalar_table; }

const KernelTable* kernels_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return &detail::scalar_table;
        case Isa::avx2:
#if defined(SPIKE_ESN_HAVE_AVX2)
            if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &detail::avx2_table;
#endif
            return nullptr;
        case Isa::neon:
#if defined(SPIKE_ESN_HAVE_NEON)
            return &detail::neon_table;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (kernels_for(isa) != nullptr) out.push_back(isa);
    }
    return out;
}

Isa best_isa() noexcept {
    if (kernels_for(Isa::avx2) != nullptr) return Isa::avx2;
    if (kernels_for(Isa::neon) != nullptr) return Isa::neon;
    return Isa::scalar;
}

namespace {

std::atomic<const KernelTable*>& active_slot() noexcept {
    static std::atomic<const KernelTable*> slot{kernels_for(best_isa())};
    return slot;
}

void check_size(bool ok, const char* what) {
    if (!ok) throw Error(Errc::dimension_mismatch, what);
}

}  // namespace

Isa active_isa() noexcept { return active().isa; }

void set_active_isa(Isa isa) {
    const KernelTable* table = kernels_for(isa);
    if (table == nullptr) {
        throw Error(Errc::invalid_argument,
                    "instruction set '" + std::string(to_string(isa)) + "' is not available on this machine");
    }
    active_slot().store(table, std::memory_order_relaxed);
}

const KernelTable& active() noexcept { return *active_slot().load(std::memory_order_relaxed); }

double dot(std::span<const double> a, std::span<const double> b) {
    check_size(a.size() == b.size(), "dot: length mismatch");
    return active().dot(a.data(), b.data(), a.size());
}

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
    check_size(a.size() == rows * cols && x.size() == cols && y.size() == rows, "gemv: shape mismatch");
    active().gemv(a.data(), rows, cols, x.data(), y.data());
}

void gemv_add(std::span<const double> a, std::size_t rows, std::size_t cols,
              std::span<const double> x, std::span<double> y) {
    check_size(a.size() == rows * cols && x.size() == cols && y.size() == rows, "gemv_add: shape mismatch");
    active().gemv_add(a.data(), rows, cols, x.data(), y.data());
}

void add_into(std::span<double> dst, std::span<const double> src) {
    check_size(dst.size() == src.size(), "add_into: length mismatch");
    active().add_into(dst.data(), src.data(), dst.size());
}

double sum_abs(std::span<const double> a) { return active().sum_abs(a.data(), a.size()); }

}  // namespace spike_esn::simd
