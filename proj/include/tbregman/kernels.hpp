#pragma once

// Quadrature reduction kernels. Every kernel has a serial reference path and
// an OpenMP path. Integrand values are evaluated independently per node (the
// parallel part) and then reduced by a fixed-shape pairwise sum, so both paths
// return bit-identical results for any thread count.

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "tbregman/error.hpp"
#include "tbregman/quadrature.hpp"

namespace tbregman {

enum class Execution { serial, parallel };

// Parallel when the library was built with OpenMP, serial otherwise.
Execution default_execution();

// Number of OpenMP threads available to the parallel path (1 when serial).
int parallel_threads();

// Pairwise (cascade) summation with a fixed split pattern.
double pairwise_sum(std::span<const double> values);

namespace detail {

// Records the exception thrown at the lowest index so that failures are
// reported deterministically regardless of scheduling.
class FirstError {
 public:
  void record(std::size_t index, std::exception_ptr error);
  void rethrow_if_any() const;

 private:
  std::size_t index_ = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error_;
};

[[noreturn]] void throw_non_finite(double u, double value);
[[noreturn]] void throw_non_finite_2d(double u, double v, double value);

}  // namespace detail

// Evaluates f at every rule node and returns the weighted values (w_i f(u_i)).
// Throws QuadratureError naming the node if an integrand value is not finite;
// exceptions thrown by f propagate (lowest node first).
template <typename F>
std::vector<double> weighted_values(const QuadratureRule& rule, F&& f, Execution exec) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(rule.size());
  std::vector<double> terms(static_cast<std::size_t>(n));
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double v = f(rule.nodes[k]);
      if (!std::isfinite(v)) detail::throw_non_finite(rule.nodes[k], v);
      terms[k] = rule.weights[k] * v;
    }
    return terms;
  }
  detail::FirstError first;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      const double v = f(rule.nodes[k]);
      if (!std::isfinite(v)) detail::throw_non_finite(rule.nodes[k], v);
      terms[k] = rule.weights[k] * v;
    } catch (...) {
#pragma omp critical(tbregman_first_error)
      first.record(k, std::current_exception());
    }
  }
  first.rethrow_if_any();
  return terms;
}

// Integral of f over (0, 1) under `rule`.
template <typename F>
double integrate(const QuadratureRule& rule, F&& f, Execution exec = default_execution()) {
  const auto terms = weighted_values(rule, f, exec);
  return pairwise_sum(terms);
}

// Tensor-product integral over (0, 1)^2 of an integrand given by node indices
// f(i, j), skipping pairs whose nodes satisfy |u_i - u_j| < diagonal_clip.
// Each outer row is summed serially, then the row sums are reduced pairwise.
template <typename F>
double integrate_tensor(const QuadratureRule& rule, F&& f, double diagonal_clip,
                        Execution exec = default_execution()) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(rule.size());
  std::vector<double> rows(static_cast<std::size_t>(n));
  auto row_sum = [&](std::size_t i, std::vector<double>& scratch) {
    scratch.assign(rule.size(), 0.0);
    const double u = rule.nodes[i];
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double v = rule.nodes[j];
      if (std::abs(u - v) < diagonal_clip) continue;
      const double val = f(i, j);
      if (!std::isfinite(val)) detail::throw_non_finite_2d(u, v, val);
      scratch[j] = rule.weights[j] * val;
    }
    return rule.weights[i] * pairwise_sum(scratch);
  };
  if (exec == Execution::serial) {
    std::vector<double> scratch;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      rows[static_cast<std::size_t>(i)] = row_sum(static_cast<std::size_t>(i), scratch);
    }
    return pairwise_sum(rows);
  }
  detail::FirstError first;
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      try {
        rows[k] = row_sum(k, scratch);
      } catch (...) {
#pragma omp critical(tbregman_first_error)
        first.record(k, std::current_exception());
      }
    }
  }
  first.rethrow_if_any();
  return pairwise_sum(rows);
}

// Applies f to every index in [0, count) and stores the results in order.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, F&& f, Execution exec = default_execution()) {
  std::vector<T> out(count);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  detail::FirstError first;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = f(k);
    } catch (...) {
#pragma omp critical(tbregman_first_error)
      first.record(k, std::current_exception());
    }
  }
  first.rethrow_if_any();
  return out;
}

}  // namespace tbregman
