#include "mapfla/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_sinks.h>

namespace mapfla {

spdlog::logger& logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto log = std::make_shared<spdlog::logger>(
        "mapfla", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    const char* raw = std::getenv("MAPFLA_LOG");
    const std::string_view want = raw == nullptr ? "off" : raw;
    if (want == "info") {
      log->set_level(spdlog::level::info);
    } else if (want == "trace") {
      log->set_level(spdlog::level::trace);
    } else {
      log->set_level(spdlog::level::off);
    }
    log->set_pattern("[%H:%M:%S.%e] [%l] %v");
    return log;
  }();
  return *instance;
}

}  // namespace mapfla
