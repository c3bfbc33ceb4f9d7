#include <algorithm>
#include <cmath>
#include <numbers>

#include "qc/simd/kernels.hpp"

namespace qc::simd::detail {

void chain_product_scalar(std::span<const Mat2Batch> factors, std::span<const std::uint8_t> word,
                          const Mat2Batch& start, Mat2Batch& out, std::span<double> log_scale) {
  constexpr double kLogStep = 500.0 * std::numbers::ln2;
  const std::size_t n = start.size();
  for (std::size_t lane = 0; lane < n; ++lane) {
    double ma = start.a[lane], mb = start.b[lane], mc = start.c[lane], md = start.d[lane];
    double scale = log_scale[lane];
    for (std::uint8_t s : word) {
      const Mat2Batch& f = factors[s];
      const double fa = f.a[lane], fb = f.b[lane], fc = f.c[lane], fd = f.d[lane];
      const double na = fa * ma + fb * mc;
      const double nb = fa * mb + fb * md;
      const double nc = fc * ma + fd * mc;
      const double nd = fc * mb + fd * md;
      ma = na, mb = nb, mc = nc, md = nd;
      const double big = std::max(std::max(std::abs(ma), std::abs(mb)),
                                  std::max(std::abs(mc), std::abs(md)));
      if (big > kRenormThreshold) {
        ma *= kRenormFactor, mb *= kRenormFactor, mc *= kRenormFactor, md *= kRenormFactor;
        scale += kLogStep;
      }
    }
    out.a[lane] = ma, out.b[lane] = mb, out.c[lane] = mc, out.d[lane] = md;
    log_scale[lane] = scale;
  }
}

void match_bytes_scalar(const char* a, const char* b, std::size_t n, std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] == b[i] ? 1 : 0;
}

}  // namespace qc::simd::detail
