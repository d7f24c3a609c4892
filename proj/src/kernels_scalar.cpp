#include "condgate/kernels.hpp"

namespace condgate::kernels {

namespace {

void matmul_scalar(const cdouble* a, const cdouble* b, cdouble* c,
                   std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    cdouble* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      crow[j] = cdouble(0.0, 0.0);
    }
    for (std::size_t kk = 0; kk < k; ++kk) {
      const cdouble av = a[i * k + kk];
      if (av == cdouble(0.0, 0.0)) {
        continue;
      }
      const cdouble* brow = b + kk * n;
      for (std::size_t j = 0; j < n; ++j) {
        crow[j] += av * brow[j];
      }
    }
  }
}

void kron_scalar(const cdouble* a, std::size_t ra, std::size_t ca,
                 const cdouble* b, std::size_t rb, std::size_t cb, cdouble* out) {
  const std::size_t cols = ca * cb;
  for (std::size_t i = 0; i < ra; ++i) {
    for (std::size_t p = 0; p < rb; ++p) {
      cdouble* orow = out + (i * rb + p) * cols;
      const cdouble* brow = b + p * cb;
      for (std::size_t j = 0; j < ca; ++j) {
        const cdouble av = a[i * ca + j];
        for (std::size_t q = 0; q < cb; ++q) {
          orow[j * cb + q] = av * brow[q];
        }
      }
    }
  }
}

cdouble dotc_scalar(const cdouble* x, const cdouble* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double yr = y[i].real();
    const double yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void axpy_scalar(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += alpha * x[i];
  }
}

void scal_scalar(cdouble alpha, cdouble* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    x[i] *= alpha;
  }
}

double nrm2sq_scalar(const cdouble* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend = {
      "scalar",     matmul_scalar, kron_scalar, dotc_scalar,
      axpy_scalar,  scal_scalar,   nrm2sq_scalar,
  };
  return backend;
}

}  // namespace condgate::kernels
