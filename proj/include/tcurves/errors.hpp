#pragma once

#include <stdexcept>
#include <string>

namespace tcurves {

// Every failure carries the process exit code the CLI reports for it.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what, 2) {}
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what, 3) {}
};

class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what) : Error(what, 4) {}
};

class UnsupportedExtension : public Error {
 public:
  explicit UnsupportedExtension(const std::string& what) : Error(what, 5) {}
};

}  // namespace tcurves
