#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace descwave::builtin {

// "paper-4-2" (alias "singular-3x3") and "scalar-wave".
std::vector<std::string> example_names();

// Throws ErrorKind::input for an unknown name.
nlohmann::json example_spec(const std::string& name);

}  // namespace descwave::builtin
