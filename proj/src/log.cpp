#include "watchroute/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>

#include <cstdlib>

namespace watchroute::log {

spdlog::logger& get() {
  static const std::shared_ptr<spdlog::logger> logger = [] {
    auto l = spdlog::stderr_color_mt("watchroute");
    l->set_pattern("[%l] %v");
    const char* env = std::getenv("WATCHROUTE_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    return l;
  }();
  return *logger;
}

}  // namespace watchroute::log
