#pragma once

// Data-parallel inner loops of the reservoir, encoder and readout.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The widest
// variant the running CPU supports is selected on first use; tests pin the
// scalar path with set_active_isa() and check the vector paths against it.
//
// Vector variants reassociate sums, so they agree with the scalar reference
// to rounding, not bit for bit. A given ISA is deterministic run to run.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace spike_esn::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;
Isa parse_isa(std::string_view name);

/// Raw kernel entry points for one ISA. Pointers, lengths, row-major storage.
struct KernelTable {
    Isa isa;
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// y = A x, A row-major rows x cols.
    void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
    /// y += A x.
    void (*gemv_add)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
    /// dst += src.
    void (*add_into)(double* dst, const double* src, std::size_t n);
    double (*sum_abs)(const double* a, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
/// Table for `isa`; nullptr when it was not compiled in or the CPU lacks it.
const KernelTable* kernels_for(Isa isa) noexcept;

/// Every ISA usable on this machine, scalar first.
std::vector<Isa> available_isas();
Isa best_isa() noexcept;
Isa active_isa() noexcept;
/// Throws Error(invalid_argument) when `isa` is unavailable here.
void set_active_isa(Isa isa);
const KernelTable& active() noexcept;

double dot(std::span<const double> a, std::span<const double> b);
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);
void gemv_add(std::span<const double> a, std::size_t rows, std::size_t cols,
              std::span<const double> x, std::span<double> y);
void add_into(std::span<double> dst, std::span<const double> src);
double sum_abs(std::span<const double> a);

}  // namespace spike_esn::simd
