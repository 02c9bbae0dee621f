#pragma once

#include <string>

namespace sonar {

enum class LogLevel { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3, kQuiet = 4 };

// Minimal logger. Verbosity comes from the SONAR_LOG environment variable
// (debug|info|warn|error|quiet, default info). Messages go to stderr without
// timestamps; an optional file sink gets timestamped copies so regular
// artifacts stay byte-reproducible.
namespace log {

LogLevel level();
void set_level(LogLevel lv);
void set_file_sink(const std::string& path);  // empty disables

void debug(const std::string& msg);
void info(const std::string& msg);
void warn(const std::string& msg);
void error(const std::string& msg);

}  // namespace log
}  // namespace sonar
