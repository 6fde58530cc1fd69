#pragma once
// Data-parallel inner-loop kernels. Every kernel has a scalar reference
// implementation and (on x86-64) an AVX2 variant; the dispatched entry
// points below pick the variant once at startup based on cpuid. Setting
// the environment variable CDLAB_NO_SIMD=1 forces the scalar path.

#include <cstddef>
#include <cstdint>

namespace cdlab::kern {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*dot3)(const double*, const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*axpby)(double, const double*, double, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  double (*asum)(const double*, std::size_t);
  double (*wasum)(const double*, const double*, std::size_t);
  double (*amax)(const double*, std::size_t);
  void (*spmv)(const std::int32_t*, const std::int32_t*, const double*,
               std::int32_t, const double*, double*);
  const char* name;
};

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double dot3(const double* x, const double* y, const double* w, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpby(double a, const double* x, double b, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
double asum(const double* x, std::size_t n);
double wasum(const double* x, const double* w, std::size_t n);
double amax(const double* x, std::size_t n);
// y = A*x for CSR (rowptr/col/val), square or rectangular with nrows rows.
void spmv(const std::int32_t* rowptr, const std::int32_t* col, const double* val,
          std::int32_t nrows, const double* x, double* y);
const KernelTable& table();
}  // namespace scalar

#if defined(CDLAB_HAVE_AVX2_KERNELS)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double dot3(const double* x, const double* y, const double* w, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpby(double a, const double* x, double b, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
double asum(const double* x, std::size_t n);
double wasum(const double* x, const double* w, std::size_t n);
double amax(const double* x, std::size_t n);
void spmv(const std::int32_t* rowptr, const std::int32_t* col, const double* val,
          std::int32_t nrows, const double* x, double* y);
const KernelTable& table();
}  // namespace avx2
#endif

// Active (runtime-selected) kernels.
const KernelTable& active();
bool simd_active();

inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline double dot3(const double* x, const double* y, const double* w, std::size_t n) {
  return active().dot3(x, y, w, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline void axpby(double a, const double* x, double b, double* y, std::size_t n) {
  active().axpby(a, x, b, y, n);
}
inline void scale(double a, double* x, std::size_t n) { active().scale(a, x, n); }
inline double asum(const double* x, std::size_t n) { return active().asum(x, n); }
inline double wasum(const double* x, const double* w, std::size_t n) {
  return active().wasum(x, w, n);
}
inline double amax(const double* x, std::size_t n) { return active().amax(x, n); }
inline void spmv(const std::int32_t* rowptr, const std::int32_t* col, const double* val,
                 std::int32_t nrows, const double* x, double* y) {
  active().spmv(rowptr, col, val, nrows, x, y);
}

}  // namespace cdlab::kern
