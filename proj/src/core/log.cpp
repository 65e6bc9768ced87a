#include "epicast/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace epicast::log {

namespace {

Level from_env() {
    const char* env = std::getenv("EPICAST_LOG");
    if (env == nullptr) return Level::warn;
    const std::string value = env;
    if (value == "error") return Level::error;
    if (value == "info") return Level::info;
    if (value == "debug") return Level::debug;
    return Level::warn;
}

std::atomic<Level>& current() {
    static std::atomic<Level> lvl{from_env()};
    return lvl;
}

void emit(Level at, std::string_view tag, std::string_view message) {
    if (static_cast<int>(at) > static_cast<int>(current().load())) return;
    static std::mutex mu;
    std::lock_guard lock(mu);
    std::cerr << "[epicast " << tag << "] " << message << '\n';
}

}  // namespace

Level level() { return current().load(); }
void set_level(Level lvl) { current().store(lvl); }

void error(std::string_view message) { emit(Level::error, "error", message); }
void warn(std::string_view message) { emit(Level::warn, "warn", message); }
void info(std::string_view message) { emit(Level::info, "info", message); }
void debug(std::string_view message) { emit(Level::debug, "debug", message); }

}  // namespace epicast::log
