#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

// Independent work items (one trajectory each) mapped over an index range.
// parallel_map and serial_map return identical results; results are ordered
// by index regardless of completion order.
namespace monopole::batch {

template <class F>
using MapResult = std::invoke_result_t<F&, std::size_t>;

template <class F>
std::vector<MapResult<F>> serial_map(std::size_t n, F&& f) {
  std::vector<MapResult<F>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

/// OpenMP version. An exception thrown by item i is rethrown after the loop;
/// when several items throw, the lowest index wins.
template <class F>
std::vector<MapResult<F>> parallel_map(std::size_t n, F&& f) {
  std::vector<std::optional<MapResult<F>>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      slots[i].emplace(f(static_cast<std::size_t>(i)));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<MapResult<F>> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace monopole::batch
