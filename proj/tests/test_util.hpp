#pragma once

#include <functional>
#include <optional>

#include "chartparser/error.hpp"

/// Code of the chartparser::Error thrown by `f`, or nothing if it returns.
inline std::optional<chartparser::ErrorCode> error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const chartparser::Error& e) {
        return e.code();
    }
    return std::nullopt;
}
