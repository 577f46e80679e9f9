#pragma once

#include <functional>
#include <string>

namespace jatecs {

// Non-fatal diagnostics (fallbacks, degenerate categories). The default
// handler prints "warning: <message>" to stderr.
using WarningHandler = std::function<void(const std::string&)>;

void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace jatecs
