#pragma once

#include <complex>
#include <cstddef>

// Low-level array kernels for dense complex arithmetic. Every routine exists
// as a scalar reference implementation and, on x86-64 with AVX2+FMA, as a
// vectorized variant. The two are selected once at startup; the environment
// variable CONDGATE_KERNELS=scalar|avx2 overrides the automatic choice.
// All buffers are row-major, non-aliasing unless noted.

namespace condgate::kernels {

using cdouble = std::complex<double>;

struct Backend {
  const char* name;
  // c(m x n) = a(m x k) * b(k x n); c must not alias a or b.
  void (*matmul)(const cdouble* a, const cdouble* b, cdouble* c,
                 std::size_t m, std::size_t k, std::size_t n);
  // out((ra*rb) x (ca*cb)) = a kron b.
  void (*kron)(const cdouble* a, std::size_t ra, std::size_t ca,
               const cdouble* b, std::size_t rb, std::size_t cb, cdouble* out);
  // sum_i conj(x[i]) * y[i]
  cdouble (*dotc)(const cdouble* x, const cdouble* y, std::size_t n);
  // y += alpha * x
  void (*axpy)(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n);
  // x *= alpha
  void (*scal)(cdouble alpha, cdouble* x, std::size_t n);
  // sum_i |x[i]|^2
  double (*nrm2sq)(const cdouble* x, std::size_t n);
};

const Backend& scalar_backend();

// Null when the binary was built without AVX2 support or the CPU lacks it.
const Backend* avx2_backend();

// The backend chosen at startup.
const Backend& active();

inline void matmul(const cdouble* a, const cdouble* b, cdouble* c,
                   std::size_t m, std::size_t k, std::size_t n) {
  active().matmul(a, b, c, m, k, n);
}

inline void kron(const cdouble* a, std::size_t ra, std::size_t ca,
                 const cdouble* b, std::size_t rb, std::size_t cb, cdouble* out) {
  active().kron(a, ra, ca, b, rb, cb, out);
}

inline cdouble dotc(const cdouble* x, const cdouble* y, std::size_t n) {
  return active().dotc(x, y, n);
}

inline void axpy(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}

inline void scal(cdouble alpha, cdouble* x, std::size_t n) {
  active().scal(alpha, x, n);
}

inline double nrm2sq(const cdouble* x, std::size_t n) {
  return active().nrm2sq(x, n);
}

}  // namespace condgate::kernels
