#pragma once

#include "kgsf/error.hpp"

#include <optional>

namespace kgsf::testing {

/// The code of the kgsf::Error thrown by f, or nullopt if none was thrown.
template <typename F>
std::optional<ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace kgsf::testing
