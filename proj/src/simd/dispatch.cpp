#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qc/simd/kernels.hpp"

namespace qc::simd {

namespace {

bool cpu_has_avx2() {
#if defined(QC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("QC_SIMD"); env && std::string(env) == "scalar")
    return Isa::kScalar;
  return detected_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  return isa == Isa::kScalar || (isa == Isa::kAvx2 && cpu_has_avx2());
}

Isa detected_isa() { return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("instruction set not available: " + std::string(isa_name(isa)));
  current().store(isa, std::memory_order_relaxed);
}

Mat2Batch Mat2Batch::identity(std::size_t n) {
  Mat2Batch m(n);
  std::fill(m.a.begin(), m.a.end(), 1.0);
  std::fill(m.d.begin(), m.d.end(), 1.0);
  return m;
}

void chain_product(std::span<const Mat2Batch> factors, std::span<const std::uint8_t> word,
                   const Mat2Batch& start, Mat2Batch& out, std::span<double> log_scale) {
  const std::size_t n = start.size();
  if (log_scale.size() != n) throw std::invalid_argument("chain_product: lane count mismatch");
  if (out.size() != n) out = Mat2Batch(n);
  for (const auto& f : factors)
    if (f.size() != n) throw std::invalid_argument("chain_product: factor lane count mismatch");
  for (std::uint8_t s : word)
    if (s >= factors.size()) throw std::invalid_argument("chain_product: symbol index out of range");
#if defined(QC_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return detail::chain_product_avx2(factors, word, start, out, log_scale);
#endif
  detail::chain_product_scalar(factors, word, start, out, log_scale);
}

void match_bytes(const char* a, const char* b, std::size_t n, std::uint8_t* out) {
#if defined(QC_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return detail::match_bytes_avx2(a, b, n, out);
#endif
  detail::match_bytes_scalar(a, b, n, out);
}

}  // namespace qc::simd
