#pragma once

#include <stdexcept>
#include <string>

namespace msharp {

/// Raised when an argument lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace msharp
