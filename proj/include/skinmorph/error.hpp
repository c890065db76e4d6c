#pragma once

#include <stdexcept>
#include <string>

namespace skinmorph {

// Raised for contract violations on inputs (dimension mismatches, out of
// range parameters, malformed files). Messages are meant for end users.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace skinmorph
