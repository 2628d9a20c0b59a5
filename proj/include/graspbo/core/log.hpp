#pragma once

#include <cstdio>
#include <string>

namespace graspbo::log {

enum class Level { trace = 0, debug = 1, info = 2, warn = 3, off = 4 };

inline Level& threshold() {
    static Level level = Level::warn;
    return level;
}

inline bool set_level(const std::string& name) {
    if (name == "trace") threshold() = Level::trace;
    else if (name == "debug") threshold() = Level::debug;
    else if (name == "info") threshold() = Level::info;
    else if (name == "warn") threshold() = Level::warn;
    else if (name == "off") threshold() = Level::off;
    else return false;
    return true;
}

template <typename... Args>
void emit(Level level, const char* tag, const char* fmt, Args... args) {
    if (level < threshold()) return;
    std::fprintf(stderr, "[%s] ", tag);
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
}

template <typename... Args>
void trace(const char* fmt, Args... args) { emit(Level::trace, "trace", fmt, args...); }
template <typename... Args>
void debug(const char* fmt, Args... args) { emit(Level::debug, "debug", fmt, args...); }
template <typename... Args>
void info(const char* fmt, Args... args) { emit(Level::info, "info", fmt, args...); }
template <typename... Args>
void warn(const char* fmt, Args... args) { emit(Level::warn, "warn", fmt, args...); }

}  // namespace graspbo::log
