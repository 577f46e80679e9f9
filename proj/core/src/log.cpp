#include "jatecs/log.hpp"

#include <iostream>
#include <mutex>

namespace jatecs {
namespace {

std::mutex& handler_mutex() {
  static std::mutex mutex;
  return mutex;
}

WarningHandler& handler() {
  static WarningHandler current;
  return current;
}

}  // namespace

void set_warning_handler(WarningHandler next) {
  std::lock_guard lock(handler_mutex());
  handler() = std::move(next);
}

void warn(const std::string& message) {
  std::lock_guard lock(handler_mutex());
  if (handler()) {
    handler()(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace jatecs
