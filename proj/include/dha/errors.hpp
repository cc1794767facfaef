#pragma once

#include <stdexcept>
#include <string>

namespace dha {

// Raised when an argument lies outside the domain where an operator is defined.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw DomainError(msg);
}

}  // namespace dha
