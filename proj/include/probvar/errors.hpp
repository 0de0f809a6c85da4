// Error types thrown on contract violations. Each what() starts with the
// invariant name so CLI diagnostics can surface it verbatim.
#pragma once

#include <stdexcept>
#include <string>

namespace probvar {

class Error : public std::runtime_error {
 public:
  Error(const std::string& name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define PROBVAR_DEFINE_ERROR(Name)                      \
  class Name : public Error {                           \
   public:                                              \
    explicit Name(const std::string& detail)            \
        : Error(#Name, detail) {}                       \
  }

PROBVAR_DEFINE_ERROR(Empty);
PROBVAR_DEFINE_ERROR(NegativeWeight);
PROBVAR_DEFINE_ERROR(NotNormalized);
PROBVAR_DEFINE_ERROR(NonFiniteValue);
PROBVAR_DEFINE_ERROR(IndexOutOfRange);
PROBVAR_DEFINE_ERROR(SpaceMismatch);
PROBVAR_DEFINE_ERROR(ZeroConditioningEvent);
PROBVAR_DEFINE_ERROR(NotDisjoint);
PROBVAR_DEFINE_ERROR(NotCovering);
PROBVAR_DEFINE_ERROR(ZeroMassBlock);
PROBVAR_DEFINE_ERROR(NotMeasurable);
PROBVAR_DEFINE_ERROR(LengthMismatch);
PROBVAR_DEFINE_ERROR(BadExponent);
PROBVAR_DEFINE_ERROR(BadEpsilon);
PROBVAR_DEFINE_ERROR(BadStep);
PROBVAR_DEFINE_ERROR(BadConfig);

#undef PROBVAR_DEFINE_ERROR

}  // namespace probvar
