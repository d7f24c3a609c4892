#include "condgate/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace condgate::kernels {

#if !defined(CONDGATE_HAVE_AVX2)
const Backend* avx2_backend() { return nullptr; }
#endif

namespace {

const Backend& select() {
  const char* request = std::getenv("CONDGATE_KERNELS");
  if (request != nullptr) {
    if (std::strcmp(request, "scalar") == 0) {
      return scalar_backend();
    }
    if (std::strcmp(request, "avx2") == 0 && avx2_backend() != nullptr) {
      return *avx2_backend();
    }
  }
  if (const Backend* simd = avx2_backend()) {
    return *simd;
  }
  return scalar_backend();
}

}  // namespace

const Backend& active() {
  static const Backend& chosen = select();
  return chosen;
}

}  // namespace condgate::kernels
