#include "cdlab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace cdlab::kern {

namespace {

const KernelTable* select() {
  const char* off = std::getenv("CDLAB_NO_SIMD");
  if (off != nullptr && std::strcmp(off, "0") != 0) return &scalar::table();
#if defined(CDLAB_HAVE_AVX2_KERNELS)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &avx2::table();
  }
#endif
  return &scalar::table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable* t = select();
  return *t;
}

bool simd_active() { return std::strcmp(active().name, "scalar") != 0; }

}  // namespace cdlab::kern
