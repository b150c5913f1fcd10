// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>

namespace pheig {

enum class LogLevel { debug, info, warning, error };

// Default sink writes warnings and errors to stderr. Tests may install a capturing sink.
using LogSink = std::function<void(LogLevel, const std::string&)>;

void set_log_sink(LogSink sink);
void set_log_threshold(LogLevel level);
void log(LogLevel level, const std::string& msg);

inline void log_warning(const std::string& msg) { log(LogLevel::warning, msg); }
inline void log_info(const std::string& msg) { log(LogLevel::info, msg); }

} // namespace pheig
