#pragma once

#include <string>

namespace ell {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

/// Level comes from the ELLIPTIC_LOG environment variable
/// (quiet | info | debug), read once.
LogLevel log_level();

void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace ell
