#include "condgate/matrix.hpp"

#include <cmath>
#include <utility>

#include "condgate/kernels.hpp"

namespace condgate::num {

double CVector::norm() const {
  return std::sqrt(kernels::nrm2sq(entries_.data(), entries_.size()));
}

CVector CVector::normalized() const {
  const double n = norm();
  if (n == 0.0) {
    throw ZeroMatrix("cannot normalize a zero vector");
  }
  return scaled(cdouble(1.0 / n, 0.0));
}

CVector CVector::scaled(cdouble factor) const {
  CVector out = *this;
  kernels::scal(factor, out.data(), out.dim());
  return out;
}

cdouble dot(const CVector& x, const CVector& y) {
  if (x.dim() != y.dim()) {
    throw ShapeMismatch("dot: dimension mismatch");
  }
  return kernels::dotc(x.data(), y.data(), x.dim());
}

CVector operator+(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) {
    throw ShapeMismatch("vector addition: dimension mismatch");
  }
  CVector out = a;
  kernels::axpy(cdouble(1.0, 0.0), b.data(), out.data(), out.dim());
  return out;
}

CVector operator-(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) {
    throw ShapeMismatch("vector subtraction: dimension mismatch");
  }
  CVector out = a;
  kernels::axpy(cdouble(-1.0, 0.0), b.data(), out.data(), out.dim());
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.dim() * b.dim());
  kernels::kron(a.data(), a.dim(), 1, b.data(), b.dim(), 1, out.data());
  return out;
}

CVector basis_state(std::size_t dim, std::size_t index) {
  CVector v(dim);
  v[index] = cdouble(1.0, 0.0);
  return v;
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ShapeMismatch("CMatrix: entry count does not match shape");
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = cdouble(1.0, 0.0);
  }
  return m;
}

CMatrix CMatrix::zero(std::size_t rows, std::size_t cols) {
  return CMatrix(rows, cols);
}

CMatrix CMatrix::column(const CVector& v) {
  CMatrix m(v.dim(), 1);
  for (std::size_t i = 0; i < v.dim(); ++i) {
    m(i, 0) = v[i];
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(j, i) = (*this)(i, j);
    }
  }
  return out;
}

CMatrix CMatrix::conj() const {
  CMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = std::conj(entries_[i]);
  }
  return out;
}

cdouble CMatrix::trace() const {
  cdouble t(0.0, 0.0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
    t += (*this)(i, i);
  }
  return t;
}

double CMatrix::frobenius_norm() const {
  return std::sqrt(kernels::nrm2sq(entries_.data(), entries_.size()));
}

CVector CMatrix::col_vector(std::size_t j) const {
  CVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    v[i] = (*this)(i, j);
  }
  return v;
}

void CMatrix::set_col(std::size_t j, const CVector& v) {
  for (std::size_t i = 0; i < rows_; ++i) {
    (*this)(i, j) = v[i];
  }
}

CVector CMatrix::vec() const {
  return CVector(entries_);
}

CVector CMatrix::apply(const CVector& v) const {
  if (v.dim() != cols_) {
    throw ShapeMismatch("apply: dimension mismatch");
  }
  CVector out(rows_);
  kernels::matmul(entries_.data(), v.data(), out.data(), rows_, cols_, 1);
  return out;
}

bool CMatrix::all_finite() const {
  for (const cdouble& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      return false;
    }
  }
  return true;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeMismatch("matmul: inner dimensions differ");
  }
  CMatrix c(a.rows(), b.cols());
  kernels::matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch("matrix addition: shape mismatch");
  }
  CMatrix out = a;
  kernels::axpy(cdouble(1.0, 0.0), b.data(), out.data(), out.rows() * out.cols());
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch("matrix subtraction: shape mismatch");
  }
  CMatrix out = a;
  kernels::axpy(cdouble(-1.0, 0.0), b.data(), out.data(), out.rows() * out.cols());
  return out;
}

CMatrix operator*(cdouble scalar, const CMatrix& m) {
  CMatrix out = m;
  kernels::scal(scalar, out.data(), out.rows() * out.cols());
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  kernels::kron(a.data(), a.rows(), a.cols(), b.data(), b.rows(), b.cols(),
                out.data());
  return out;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  if (!a.is_square() || !b.is_square()) {
    throw NonSquare("direct_sum: operands must be square");
  }
  const std::size_t n = a.rows() + b.rows();
  CMatrix out(n, n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.rows(); ++j) {
      out(i, j) = a(i, j);
    }
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      out(a.rows() + i, a.rows() + j) = b(i, j);
    }
  }
  return out;
}

double unitarity_residual(const CMatrix& m) {
  if (!m.is_square()) {
    throw NonSquare("unitarity_residual: matrix must be square");
  }
  return (m.adjoint() * m - CMatrix::identity(m.rows())).frobenius_norm();
}

bool is_unitary(const CMatrix& m, Tolerance tol) {
  return m.is_square() &&
         unitarity_residual(m) <= tol.eps * static_cast<double>(m.rows());
}

PhaseComparison equal_up_to_phase(const CMatrix& a, const CMatrix& b,
                                  Tolerance tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch("equal_up_to_phase: shape mismatch");
  }
  const double na = a.frobenius_norm();
  const double nb = b.frobenius_norm();
  if (na == 0.0 || nb == 0.0) {
    throw ZeroMatrix("equal_up_to_phase: zero matrix");
  }
  const cdouble overlap =
      kernels::dotc(a.data(), b.data(), a.rows() * a.cols());
  if (std::abs(overlap) < (1.0 - tol.eps) * na * nb) {
    return {false, std::nullopt};
  }
  return {true, overlap / std::abs(overlap)};
}

}  // namespace condgate::num
