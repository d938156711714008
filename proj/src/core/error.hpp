#pragma once

#include <stdexcept>
#include <string>

namespace iterhash {

enum class ErrorKind {
  domain,       // argument outside the mathematical domain of an operation
  capacity,     // enumeration or table size beyond the configured limit
  structural,   // operands drawn from different algebras
  unsupported,  // operation not defined for this structure
  usage,        // malformed family spec or option
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace iterhash
