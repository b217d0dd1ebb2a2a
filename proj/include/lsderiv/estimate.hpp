#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "lsderiv/error.hpp"
#include "lsderiv/series.hpp"

namespace lsderiv {

enum class Method { PE, PEAuto, RPE, SSA };

constexpr std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::PE: return "pe";
    case Method::PEAuto: return "pe-auto";
    case Method::RPE: return "rpe";
    case Method::SSA: return "ssa";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : {Method::PE, Method::PEAuto, Method::RPE, Method::SSA}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

/// Per-sample slope estimates. Entries outside `defined` are kUndefined.
struct DerivativeEstimate {
  std::vector<double> xs;
  std::vector<double> dys;
  IndexRange defined;
  Method method = Method::PE;
  /// Degree picked per index (PE-auto only); 0 outside `defined`.
  std::optional<std::vector<int>> chosen_degrees;

  std::size_t size() const noexcept { return dys.size(); }
  /// Samples dropped at the left edge.
  std::size_t left_margin() const noexcept { return defined.begin; }
  std::size_t right_margin() const noexcept { return dys.size() - defined.end; }
};

}  // namespace lsderiv
