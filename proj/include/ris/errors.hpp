#pragma once

#include <stdexcept>
#include <string>

namespace ris {

/// Configuration or input problem the user can fix; the CLI maps these to
/// exit code 2 (anything else thrown during a run maps to 3).
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ris
