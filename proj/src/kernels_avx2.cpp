// AVX2+FMA variants of the complex array kernels. Two complex doubles per
// 256-bit vector, interleaved [re0, im0, re1, im1]. Compiled only on x86-64;
// the dispatcher still checks CPU features at runtime before handing these out.

#include "condgate/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace condgate::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

// acc += (ar + i*ai) * v for two complex lanes of v.
inline __m256d cmul_acc(__m256d acc, __m256d ar, __m256d ai, __m256d v) {
  __m256d vswap = _mm256_permute_pd(v, 0x5);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, vswap)));
}

// (ar + i*ai) * v
inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
  __m256d vswap = _mm256_permute_pd(v, 0x5);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, vswap));
}

void matmul_avx2(const cdouble* a, const cdouble* b, cdouble* c,
                 std::size_t m, std::size_t k, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < m; ++i) {
    const cdouble* arow = a + i * k;
    cdouble* crow = c + i * n;
    for (std::size_t j = 0; j < n2; j += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t kk = 0; kk < k; ++kk) {
        const __m256d ar = _mm256_set1_pd(arow[kk].real());
        const __m256d ai = _mm256_set1_pd(arow[kk].imag());
        const __m256d bv =
            _mm256_loadu_pd(reinterpret_cast<const double*>(b + kk * n + j));
        acc = cmul_acc(acc, ar, ai, bv);
      }
      _mm256_storeu_pd(reinterpret_cast<double*>(crow + j), acc);
    }
    for (std::size_t j = n2; j < n; ++j) {
      cdouble sum(0.0, 0.0);
      for (std::size_t kk = 0; kk < k; ++kk) {
        sum += arow[kk] * b[kk * n + j];
      }
      crow[j] = sum;
    }
  }
}

void kron_avx2(const cdouble* a, std::size_t ra, std::size_t ca,
               const cdouble* b, std::size_t rb, std::size_t cb, cdouble* out) {
  const std::size_t cols = ca * cb;
  const std::size_t cb2 = cb & ~std::size_t(1);
  for (std::size_t i = 0; i < ra; ++i) {
    for (std::size_t p = 0; p < rb; ++p) {
      cdouble* orow = out + (i * rb + p) * cols;
      const cdouble* brow = b + p * cb;
      for (std::size_t j = 0; j < ca; ++j) {
        const cdouble av = a[i * ca + j];
        const __m256d ar = _mm256_set1_pd(av.real());
        const __m256d ai = _mm256_set1_pd(av.imag());
        cdouble* oseg = orow + j * cb;
        for (std::size_t q = 0; q < cb2; q += 2) {
          const __m256d bv =
              _mm256_loadu_pd(reinterpret_cast<const double*>(brow + q));
          _mm256_storeu_pd(reinterpret_cast<double*>(oseg + q), cmul(ar, ai, bv));
        }
        for (std::size_t q = cb2; q < cb; ++q) {
          oseg[q] = av * brow[q];
        }
      }
    }
  }
}

cdouble dotc_avx2(const cdouble* x, const cdouble* y, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  // Lanes [-1, +1, -1, +1]: imag part is sum(xr*yi) - sum(xi*yr).
  const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    const __m256d yv = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    const __m256d xswap = _mm256_mul_pd(_mm256_permute_pd(xv, 0x5), sign);
    acc_im = _mm256_fmadd_pd(xswap, yv, acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (std::size_t i = n2; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy_avx2(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    const __m256d yv = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(y + i),
                     cmul_acc(yv, ar, ai, xv));
  }
  for (std::size_t i = n2; i < n; ++i) {
    y[i] += alpha * x[i];
  }
}

void scal_avx2(cdouble alpha, cdouble* x, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(x + i), cmul(ar, ai, xv));
  }
  for (std::size_t i = n2; i < n; ++i) {
    x[i] *= alpha;
  }
}

double nrm2sq_avx2(const cdouble* x, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double sum = hsum(acc);
  for (std::size_t i = n2; i < n; ++i) {
    sum += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return sum;
}

}  // namespace

const Backend* avx2_backend() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
    return nullptr;
  }
  static const Backend backend = {
      "avx2",    matmul_avx2, kron_avx2, dotc_avx2,
      axpy_avx2, scal_avx2,   nrm2sq_avx2,
  };
  return &backend;
}

}  // namespace condgate::kernels

#endif  // x86-64
