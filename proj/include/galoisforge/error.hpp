#pragma once

#include <stdexcept>
#include <string>

namespace galoisforge {

// Every failure raised by the library derives from Error. The CLI maps
// CapExceeded to exit status 3 and everything else to 2.
class Error : public std::runtime_error
{
public:
  Error(std::string kind, std::string const &what)
    : std::runtime_error(kind + ": " + what), _kind(std::move(kind))
  {}

  std::string const &kind() const
  { return _kind; }

private:
  std::string _kind;
};

#define GALOISFORGE_ERROR(Name)                                              \
  class Name : public Error                                                 \
  {                                                                         \
  public:                                                                   \
    explicit Name(std::string const &what) : Error(#Name, what) {}          \
  }

GALOISFORGE_ERROR(DomainMismatch);
GALOISFORGE_ERROR(NotEpi);
GALOISFORGE_ERROR(NotAGroup);
GALOISFORGE_ERROR(InvalidMap);
GALOISFORGE_ERROR(InvalidAction);
GALOISFORGE_ERROR(InvalidGroupoid);
GALOISFORGE_ERROR(ObjectMismatch);
GALOISFORGE_ERROR(NotActionGroupoid);
GALOISFORGE_ERROR(FiberMismatch);
GALOISFORGE_ERROR(NotASubgroup);
GALOISFORGE_ERROR(HypothesisFailed);
GALOISFORGE_ERROR(SizeMismatch);
GALOISFORGE_ERROR(InvalidGraph);
GALOISFORGE_ERROR(InvalidCover);
GALOISFORGE_ERROR(ConnectednessRequired);
GALOISFORGE_ERROR(NotGalois);
GALOISFORGE_ERROR(NotSeparable);
GALOISFORGE_ERROR(InvalidField);
GALOISFORGE_ERROR(ParseError);
GALOISFORGE_ERROR(SchemaError);

#undef GALOISFORGE_ERROR

// Raised when an enumeration would exceed one of the configured limits.
// dimension() names the limit, e.g. "group_order".
class CapExceeded : public Error
{
public:
  CapExceeded(std::string dimension, long long limit, long long requested)
    : Error("CapExceeded",
            dimension + " limit " + std::to_string(limit) + " exceeded (needs " +
              std::to_string(requested) + ")"),
      _dimension(std::move(dimension))
  {}

  std::string const &dimension() const
  { return _dimension; }

private:
  std::string _dimension;
};

} // namespace galoisforge
