#pragma once

#include <cstddef>
#include <string_view>

namespace rao::log {

/// Writes "warning: <msg>" to stderr unless warnings are muted.
void warn(std::string_view msg);
void info(std::string_view msg);

void set_quiet(bool quiet);
bool quiet();

/// Warnings issued since start-up, muted ones included.
std::size_t warning_count();

}  // namespace rao::log
