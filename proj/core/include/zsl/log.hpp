#pragma once

#include <functional>
#include <string_view>

namespace zsl {

using WarningHandler = std::function<void(std::string_view)>;

/// Routes a warning to the installed handler (stderr by default).
void warn(std::string_view message);

/// Installs a new handler and returns the previous one. Passing an empty
/// function restores the stderr handler.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace zsl
