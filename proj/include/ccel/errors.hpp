#pragma once

#include <stdexcept>
#include <string>

namespace ccel {

// Invalid user input: bad structure description, bad arguments.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Formula text rejected; carries a byte offset into the input.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// Evaluation failed: unbound variable, unknown symbol, arity mismatch.
class EvalError : public std::runtime_error {
public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// A self-verifying construction produced output that does not re-evaluate
// to its input. Always a bug; callers must not swallow it.
class VerifyError : public std::logic_error {
public:
  explicit VerifyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ccel
