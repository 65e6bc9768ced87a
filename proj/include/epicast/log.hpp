#pragma once

#include <string_view>

// Minimal stderr logger. Verbosity comes from the EPICAST_LOG environment
// variable: error | warn (default) | info | debug.
namespace epicast::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level level();
void set_level(Level level);

void error(std::string_view message);
void warn(std::string_view message);
void info(std::string_view message);
void debug(std::string_view message);

}  // namespace epicast::log
