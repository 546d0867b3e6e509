#pragma once

#include <spdlog/spdlog.h>

#include <utility>

namespace watchroute::log {

/// Shared stderr logger. Level comes from WATCHROUTE_LOG
/// (trace, debug, info, warn, error, off); default warn.
spdlog::logger& get();

template <typename... Args>
void debug(fmt::format_string<Args...> fmt, Args&&... args) {
  get().debug(fmt, std::forward<Args>(args)...);
}

template <typename... Args>
void info(fmt::format_string<Args...> fmt, Args&&... args) {
  get().info(fmt, std::forward<Args>(args)...);
}

template <typename... Args>
void warn(fmt::format_string<Args...> fmt, Args&&... args) {
  get().warn(fmt, std::forward<Args>(args)...);
}

}  // namespace watchroute::log
