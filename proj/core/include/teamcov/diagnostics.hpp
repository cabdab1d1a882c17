#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace teamcov {

using WarningHandler = std::function<void(std::string_view)>;

// Warnings default to stderr. Tests and the CLI may redirect them.
void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace teamcov
