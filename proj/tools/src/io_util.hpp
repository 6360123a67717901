#pragma once

#include <stdexcept>
#include <string>

namespace ziegler_cli {

// Shortest text form that parses back to exactly the same double.
std::string fmt17(double x);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown after partial results have been flushed; maps to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);

// Writes to <path>.tmp in the same directory, then renames over the target,
// so readers never observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

// Log level from ZIEGLER_LOG (quiet|warn|info|debug); unset means warn.
enum class LogLevel { Quiet = 0, Warn = 1, Info = 2, Debug = 3 };
LogLevel log_level();
void log_warn(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace ziegler_cli
