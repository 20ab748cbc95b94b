#pragma once

#include <stdexcept>
#include <string>

namespace aifm {

// Library errors carry a stable machine-readable code next to the human
// message, so the CLI can map them onto exit codes.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

class CapExceeded : public Error {
public:
  CapExceeded(std::string code, const std::string& message)
      : Error(std::move(code), message) {}
};

}  // namespace aifm
