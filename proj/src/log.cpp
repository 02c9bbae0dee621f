#include "sonar/log.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <mutex>

namespace sonar::log {
namespace {

LogLevel g_level = [] {
    const char* env = std::getenv("SONAR_LOG");
    if (!env) return LogLevel::kInfo;
    if (std::strcmp(env, "debug") == 0) return LogLevel::kDebug;
    if (std::strcmp(env, "warn") == 0) return LogLevel::kWarn;
    if (std::strcmp(env, "error") == 0) return LogLevel::kError;
    if (std::strcmp(env, "quiet") == 0) return LogLevel::kQuiet;
    return LogLevel::kInfo;
}();

std::mutex g_mutex;
std::ofstream g_file;

void emit(LogLevel lv, const char* tag, const std::string& msg) {
    if (lv < g_level) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
    if (g_file.is_open()) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::tm tm_buf{};
        localtime_r(&t, &tm_buf);
        std::strftime(buf, sizeof(buf), "%Y-%m-%d %H:%M:%S", &tm_buf);
        g_file << buf << " [" << tag << "] " << msg << '\n';
        g_file.flush();
    }
}

}  // namespace

LogLevel level() { return g_level; }
void set_level(LogLevel lv) { g_level = lv; }

void set_file_sink(const std::string& path) {
    std::lock_guard<std::mutex> lock(g_mutex);
    if (g_file.is_open()) g_file.close();
    if (!path.empty()) g_file.open(path, std::ios::app);
}

void debug(const std::string& msg) { emit(LogLevel::kDebug, "debug", msg); }
void info(const std::string& msg) { emit(LogLevel::kInfo, "info", msg); }
void warn(const std::string& msg) { emit(LogLevel::kWarn, "warn", msg); }
void error(const std::string& msg) { emit(LogLevel::kError, "error", msg); }

}  // namespace sonar::log
