#pragma once

// Data-parallel inner loops. Each kernel has a portable scalar reference and
// vector variants chosen once at runtime. All variants perform the same
// floating-point operations in the same order, so results are bitwise equal.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qc::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// Best variant supported by this CPU and build. QC_SIMD=scalar forces the
/// reference kernels.
Isa detected_isa();
Isa active_isa();
/// Overrides dispatch; throws if the CPU or build lacks `isa`.
void set_isa(Isa isa);
bool isa_available(Isa isa);

/// Batch of 2x2 matrices [[a, b], [c, d]], one per lane (energy).
struct Mat2Batch {
  std::vector<double> a, b, c, d;

  Mat2Batch() = default;
  explicit Mat2Batch(std::size_t n) : a(n), b(n), c(n), d(n) {}
  std::size_t size() const { return a.size(); }
  static Mat2Batch identity(std::size_t n);
};

/// Power-of-two rescaling threshold used by chain_product.
inline constexpr double kRenormThreshold = 0x1p+500;
inline constexpr double kRenormFactor = 0x1p-500;

/// Computes, lane by lane, factors[word[m-1]] * ... * factors[word[0]] * start
/// into `out`. Whenever a lane's largest entry exceeds kRenormThreshold the lane
/// is multiplied by kRenormFactor and 500*ln(2) is added to its log_scale, so
/// the true product is out * exp(log_scale). `out` is resized to the lane count.
void chain_product(std::span<const Mat2Batch> factors, std::span<const std::uint8_t> word,
                   const Mat2Batch& start, Mat2Batch& out, std::span<double> log_scale);

/// out[i] = (a[i] == b[i]) for i < n.
void match_bytes(const char* a, const char* b, std::size_t n, std::uint8_t* out);

namespace detail {
void chain_product_scalar(std::span<const Mat2Batch>, std::span<const std::uint8_t>,
                          const Mat2Batch&, Mat2Batch&, std::span<double>);
void match_bytes_scalar(const char*, const char*, std::size_t, std::uint8_t*);
#if defined(QC_HAVE_AVX2)
void chain_product_avx2(std::span<const Mat2Batch>, std::span<const std::uint8_t>,
                        const Mat2Batch&, Mat2Batch&, std::span<double>);
void match_bytes_avx2(const char*, const char*, std::size_t, std::uint8_t*);
#endif
}  // namespace detail

}  // namespace qc::simd
