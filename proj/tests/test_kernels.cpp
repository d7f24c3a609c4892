#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "condgate/kernels.hpp"

using condgate::kernels::Backend;
using condgate::kernels::cdouble;

namespace {

std::vector<cdouble> random_buffer(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cdouble> out(n);
  for (cdouble& c : out) {
    c = {g(rng), g(rng)};
  }
  return out;
}

double max_abs_diff(const std::vector<cdouble>& a,
                    const std::vector<cdouble>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("active backend is one of the registered ones") {
  const Backend& active = condgate::kernels::active();
  const bool scalar =
      std::string(active.name) == condgate::kernels::scalar_backend().name;
  const bool simd = condgate::kernels::avx2_backend() != nullptr &&
                    std::string(active.name) ==
                        condgate::kernels::avx2_backend()->name;
  CHECK((scalar || simd));
}

TEST_CASE("vector backend matches the scalar reference") {
  const Backend* simd = condgate::kernels::avx2_backend();
  if (simd == nullptr) {
    MESSAGE("no vector backend on this host; skipping equivalence checks");
    return;
  }
  const Backend& ref = condgate::kernels::scalar_backend();
  std::mt19937_64 rng(0x5eed0001);

  SUBCASE("matmul") {
    for (const auto [m, k, n] :
         {std::array<std::size_t, 3>{1, 1, 1}, {2, 2, 2}, {3, 5, 7},
          {4, 4, 4}, {8, 8, 8}, {9, 3, 11}, {16, 17, 15}, {32, 32, 32}}) {
      const auto a = random_buffer(m * k, rng);
      const auto b = random_buffer(k * n, rng);
      std::vector<cdouble> c1(m * n), c2(m * n);
      ref.matmul(a.data(), b.data(), c1.data(), m, k, n);
      simd->matmul(a.data(), b.data(), c2.data(), m, k, n);
      CHECK(max_abs_diff(c1, c2) < 1e-12 * static_cast<double>(k));
    }
  }

  SUBCASE("kron") {
    for (const auto [ra, ca, rb, cb] :
         {std::array<std::size_t, 4>{1, 1, 2, 2}, {2, 2, 2, 2}, {3, 2, 2, 5},
          {4, 4, 3, 3}, {2, 3, 5, 7}}) {
      const auto a = random_buffer(ra * ca, rng);
      const auto b = random_buffer(rb * cb, rng);
      std::vector<cdouble> o1(ra * rb * ca * cb), o2(o1.size());
      ref.kron(a.data(), ra, ca, b.data(), rb, cb, o1.data());
      simd->kron(a.data(), ra, ca, b.data(), rb, cb, o2.data());
      CHECK(max_abs_diff(o1, o2) < 1e-13);
    }
  }

  SUBCASE("dotc, axpy, scal, nrm2sq") {
    for (std::size_t n : {1, 2, 3, 7, 8, 64, 129}) {
      const auto x = random_buffer(n, rng);
      const auto y = random_buffer(n, rng);
      const cdouble d1 = ref.dotc(x.data(), y.data(), n);
      const cdouble d2 = simd->dotc(x.data(), y.data(), n);
      CHECK(std::abs(d1 - d2) < 1e-12 * static_cast<double>(n));

      const cdouble alpha{0.7, -1.3};
      auto y1 = y;
      auto y2 = y;
      ref.axpy(alpha, x.data(), y1.data(), n);
      simd->axpy(alpha, x.data(), y2.data(), n);
      CHECK(max_abs_diff(y1, y2) < 1e-13);

      auto x1 = x;
      auto x2 = x;
      ref.scal(alpha, x1.data(), n);
      simd->scal(alpha, x2.data(), n);
      CHECK(max_abs_diff(x1, x2) < 1e-13);

      CHECK(ref.nrm2sq(x.data(), n) ==
            doctest::Approx(simd->nrm2sq(x.data(), n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("scalar kernels compute the expected closed forms") {
  const Backend& ref = condgate::kernels::scalar_backend();
  // (1+i) * conj-dot with itself is the squared norm.
  const std::vector<cdouble> x = {{1.0, 1.0}, {0.0, -2.0}};
  const cdouble d = ref.dotc(x.data(), x.data(), 2);
  CHECK(d.real() == doctest::Approx(6.0));
  CHECK(d.imag() == doctest::Approx(0.0));
  CHECK(ref.nrm2sq(x.data(), 2) == doctest::Approx(6.0));
}
