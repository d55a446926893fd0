#pragma once

#include <spdlog/spdlog.h>

namespace mapfla {

/// Library-wide stderr logger. Its level comes from MAPFLA_LOG (off, info or
/// trace); unset or unknown values mean off.
spdlog::logger& logger();

}  // namespace mapfla
