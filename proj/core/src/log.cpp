#include "zsl/log.hpp"

#include <iostream>
#include <mutex>
#include <string>
#include <utility>

namespace zsl {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& current_handler() {
  static WarningHandler h;
  return h;
}

}  // namespace

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (current_handler()) {
    current_handler()(message);
  } else {
    std::cerr << "zsl: warning: " << message << '\n';
  }
}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  return std::exchange(current_handler(), std::move(handler));
}

}  // namespace zsl
