#include "rao/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace rao::log {

namespace {
std::atomic<bool> g_quiet{false};
std::atomic<std::size_t> g_warnings{0};
std::mutex g_mutex;

void emit(std::string_view prefix, std::string_view msg) {
  if (g_quiet.load(std::memory_order_relaxed)) return;
  std::lock_guard lock(g_mutex);
  std::cerr << prefix << msg << '\n';
}
}  // namespace

void warn(std::string_view msg) {
  g_warnings.fetch_add(1, std::memory_order_relaxed);
  emit("warning: ", msg);
}

void info(std::string_view msg) { emit("", msg); }

void set_quiet(bool quiet) { g_quiet.store(quiet, std::memory_order_relaxed); }
bool quiet() { return g_quiet.load(std::memory_order_relaxed); }

std::size_t warning_count() { return g_warnings.load(std::memory_order_relaxed); }

}  // namespace rao::log
