#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Base for failures that come from the physics or the data rather than from
/// misuse of the API. The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define QWALK_DOMAIN_ERROR(Name)                                   \
  class Name : public DomainError {                                \
   public:                                                         \
    explicit Name(const std::string& what) : DomainError(#Name, what) {} \
  }

QWALK_DOMAIN_ERROR(GapClosure);
QWALK_DOMAIN_ERROR(FlatBand);
QWALK_DOMAIN_ERROR(Collinear);
QWALK_DOMAIN_ERROR(ProjectionDegenerate);
QWALK_DOMAIN_ERROR(NonInteger);
QWALK_DOMAIN_ERROR(DegenerateAxis);
QWALK_DOMAIN_ERROR(NonConvergence);

#undef QWALK_DOMAIN_ERROR

}  // namespace qwalk
