#include <immintrin.h>

#include <numbers>

#include "qc/simd/kernels.hpp"

namespace qc::simd::detail {

namespace {

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

}  // namespace

void chain_product_avx2(std::span<const Mat2Batch> factors, std::span<const std::uint8_t> word,
                        const Mat2Batch& start, Mat2Batch& out, std::span<double> log_scale) {
  constexpr double kLogStep = 500.0 * std::numbers::ln2;
  const std::size_t n = start.size();
  const std::size_t vec_end = n - n % 4;

  const __m256d threshold = _mm256_set1_pd(kRenormThreshold);
  const __m256d factor = _mm256_set1_pd(kRenormFactor);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d step = _mm256_set1_pd(kLogStep);
  const __m256d zero = _mm256_setzero_pd();

  for (std::size_t lane = 0; lane < vec_end; lane += 4) {
    __m256d ma = _mm256_loadu_pd(&start.a[lane]);
    __m256d mb = _mm256_loadu_pd(&start.b[lane]);
    __m256d mc = _mm256_loadu_pd(&start.c[lane]);
    __m256d md = _mm256_loadu_pd(&start.d[lane]);
    __m256d scale = _mm256_loadu_pd(&log_scale[lane]);
    for (std::uint8_t s : word) {
      const Mat2Batch& f = factors[s];
      const __m256d fa = _mm256_loadu_pd(&f.a[lane]);
      const __m256d fb = _mm256_loadu_pd(&f.b[lane]);
      const __m256d fc = _mm256_loadu_pd(&f.c[lane]);
      const __m256d fd = _mm256_loadu_pd(&f.d[lane]);
      const __m256d na = _mm256_add_pd(_mm256_mul_pd(fa, ma), _mm256_mul_pd(fb, mc));
      const __m256d nb = _mm256_add_pd(_mm256_mul_pd(fa, mb), _mm256_mul_pd(fb, md));
      const __m256d nc = _mm256_add_pd(_mm256_mul_pd(fc, ma), _mm256_mul_pd(fd, mc));
      const __m256d nd = _mm256_add_pd(_mm256_mul_pd(fc, mb), _mm256_mul_pd(fd, md));
      ma = na, mb = nb, mc = nc, md = nd;
      const __m256d big = _mm256_max_pd(_mm256_max_pd(abs_pd(ma), abs_pd(mb)),
                                        _mm256_max_pd(abs_pd(mc), abs_pd(md)));
      const __m256d over = _mm256_cmp_pd(big, threshold, _CMP_GT_OQ);
      if (_mm256_movemask_pd(over) != 0) {
        const __m256d k = _mm256_blendv_pd(one, factor, over);
        ma = _mm256_mul_pd(ma, k);
        mb = _mm256_mul_pd(mb, k);
        mc = _mm256_mul_pd(mc, k);
        md = _mm256_mul_pd(md, k);
        scale = _mm256_add_pd(scale, _mm256_blendv_pd(zero, step, over));
      }
    }
    _mm256_storeu_pd(&out.a[lane], ma);
    _mm256_storeu_pd(&out.b[lane], mb);
    _mm256_storeu_pd(&out.c[lane], mc);
    _mm256_storeu_pd(&out.d[lane], md);
    _mm256_storeu_pd(&log_scale[lane], scale);
  }

  if (vec_end < n) {
    // Tail lanes go through the reference loop on a view of the remainder.
    const std::size_t tail = n - vec_end;
    std::vector<Mat2Batch> tail_factors;
    tail_factors.reserve(factors.size());
    auto slice = [&](const Mat2Batch& m) {
      Mat2Batch t(tail);
      for (std::size_t i = 0; i < tail; ++i) {
        t.a[i] = m.a[vec_end + i], t.b[i] = m.b[vec_end + i];
        t.c[i] = m.c[vec_end + i], t.d[i] = m.d[vec_end + i];
      }
      return t;
    };
    for (const auto& f : factors) tail_factors.push_back(slice(f));
    const Mat2Batch tail_start = slice(start);
    Mat2Batch tail_out(tail);
    chain_product_scalar(tail_factors, word, tail_start, tail_out, log_scale.subspan(vec_end));
    for (std::size_t i = 0; i < tail; ++i) {
      out.a[vec_end + i] = tail_out.a[i], out.b[vec_end + i] = tail_out.b[i];
      out.c[vec_end + i] = tail_out.c[i], out.d[vec_end + i] = tail_out.d[i];
    }
  }
}

void match_bytes_avx2(const char* a, const char* b, std::size_t n, std::uint8_t* out) {
  const __m256i ones = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i eq = _mm256_and_si256(_mm256_cmpeq_epi8(va, vb), ones);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), eq);
  }
  match_bytes_scalar(a + i, b + i, n - i, out + i);
}

}  // namespace qc::simd::detail
