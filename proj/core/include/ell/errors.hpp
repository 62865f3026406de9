#pragma once

#include <stdexcept>
#include <string>

namespace ell {

/// Base class for all solver errors. what() starts with the error name so
/// callers (and the CLI) can report it without RTTI games.
class Error : public std::runtime_error {
public:
  Error(const std::string& name, const std::string& msg)
      : std::runtime_error(name + ": " + msg), name_(name) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

#define ELL_DEFINE_ERROR(Name)                        \
  class Name : public Error {                         \
  public:                                             \
    explicit Name(const std::string& msg = "")        \
        : Error(#Name, msg) {}                        \
  }

ELL_DEFINE_ERROR(InvalidArgument);
ELL_DEFINE_ERROR(BindingMismatch);
ELL_DEFINE_ERROR(NotCoercive);
ELL_DEFINE_ERROR(NoConvergence);
ELL_DEFINE_ERROR(UnknownName);
ELL_DEFINE_ERROR(ParamOutOfRange);
ELL_DEFINE_ERROR(GrowthBoundUnavailable);
ELL_DEFINE_ERROR(EpsilonExhausted);
ELL_DEFINE_ERROR(OrderingViolated);
ELL_DEFINE_ERROR(MaxIterExceeded);
ELL_DEFINE_ERROR(SingularJacobian);
ELL_DEFINE_ERROR(NoFold);
ELL_DEFINE_ERROR(StepCollapse);
ELL_DEFINE_ERROR(PathCollapsed);
ELL_DEFINE_ERROR(NoMountainGeometry);
ELL_DEFINE_ERROR(OrderingFailed);

#undef ELL_DEFINE_ERROR

}  // namespace ell
