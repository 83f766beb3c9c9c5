#include "tbregman/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tbregman {

namespace {

constexpr std::size_t kPairwiseBlock = 16;

double pairwise(const double* x, std::size_t n) {
  if (n <= kPairwiseBlock) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise(x, half) + pairwise(x + half, n - half);
}

}  // namespace

Execution default_execution() {
#ifdef _OPENMP
  return Execution::parallel;
#else
  return Execution::serial;
#endif
}

int parallel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double pairwise_sum(std::span<const double> values) {
  return pairwise(values.data(), values.size());
}

namespace detail {

void FirstError::record(std::size_t index, std::exception_ptr error) {
  if (index < index_) {
    index_ = index;
    error_ = std::move(error);
  }
}

void FirstError::rethrow_if_any() const {
  if (error_) std::rethrow_exception(error_);
}

void throw_non_finite(double u, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand value " << value << " at quadrature node u = " << u;
  throw QuadratureError(os.str());
}

void throw_non_finite_2d(double u, double v, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand value " << value << " at quadrature node (u, v) = (" << u << ", "
     << v << ")";
  throw QuadratureError(os.str());
}

}  // namespace detail

}  // namespace tbregman
