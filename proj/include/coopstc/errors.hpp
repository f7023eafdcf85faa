#pragma once

#include <stdexcept>
#include <string>

namespace coopstc {

// Error classes raised by the library. Each maps to a distinct CLI exit code.
enum class ErrorKind {
    InvalidParameter = 2,
    Shape = 3,
    Framing = 4,
    Capacity = 5,
    DegenerateState = 6,
    PowerConstraint = 7,
    Range = 8,
    Config = 9,
    Io = 10,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

#define COOPSTC_DEFINE_ERROR(Name, Kind)                                   \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
    };

COOPSTC_DEFINE_ERROR(InvalidParameter, InvalidParameter)
COOPSTC_DEFINE_ERROR(ShapeError, Shape)
COOPSTC_DEFINE_ERROR(FramingError, Framing)
COOPSTC_DEFINE_ERROR(CapacityError, Capacity)
COOPSTC_DEFINE_ERROR(DegenerateStateError, DegenerateState)
COOPSTC_DEFINE_ERROR(PowerConstraintError, PowerConstraint)
COOPSTC_DEFINE_ERROR(RangeError, Range)
COOPSTC_DEFINE_ERROR(ConfigError, Config)
COOPSTC_DEFINE_ERROR(IoError, Io)

#undef COOPSTC_DEFINE_ERROR

}  // namespace coopstc
