// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/log.hpp"

#include <iostream>
#include <mutex>

namespace pheig {

namespace {

std::mutex g_mutex;
LogLevel g_threshold = LogLevel::warning;
LogSink g_sink;

const char* label(LogLevel l) {
    switch (l) {
    case LogLevel::debug: return "debug";
    case LogLevel::info: return "info";
    case LogLevel::warning: return "warning";
    default: return "error";
    }
}

} // namespace

void set_log_sink(LogSink sink) {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_sink = std::move(sink);
}

void set_log_threshold(LogLevel level) {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_threshold = level;
}

void log(LogLevel level, const std::string& msg) {
    std::lock_guard<std::mutex> lock(g_mutex);
    if (g_sink) {
        g_sink(level, msg);
        return;
    }
    if (level < g_threshold) return;
    std::cerr << "pheig " << label(level) << ": " << msg << '\n';
}

} // namespace pheig
