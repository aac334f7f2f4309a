#pragma once

#include <stdexcept>
#include <string>

namespace kloops {

// Every throwing failure in the library is a LoopError with a Kind.
// Boolean outcomes of checks are return values, never exceptions.
enum class ErrorKind {
    MalformedInput,
    NoIdentity,
    NotLatin,
    PowerAmbiguous,
    NotTwoDivisible,
    CapExceeded,
    NotSymetron,
    NoUniqueMidpoint,
    NotNormal,
    NotSubloop,
    EvenOrder,
    NotGroup,
    NotTwoDivisibleGroup,
    NotAutomorphism,
    NotInvolutive,
    NotClosed,
    NotTwoDivisibleSet,
    OrderTooLarge,
    Precondition,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::MalformedInput: return "MalformedInput";
        case ErrorKind::NoIdentity: return "NoIdentity";
        case ErrorKind::NotLatin: return "NotLatin";
        case ErrorKind::PowerAmbiguous: return "PowerAmbiguous";
        case ErrorKind::NotTwoDivisible: return "NotTwoDivisible";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::NotSymetron: return "NotSymetron";
        case ErrorKind::NoUniqueMidpoint: return "NoUniqueMidpoint";
        case ErrorKind::NotNormal: return "NotNormal";
        case ErrorKind::NotSubloop: return "NotSubloop";
        case ErrorKind::EvenOrder: return "EvenOrder";
        case ErrorKind::NotGroup: return "NotGroup";
        case ErrorKind::NotTwoDivisibleGroup: return "NotTwoDivisibleGroup";
        case ErrorKind::NotAutomorphism: return "NotAutomorphism";
        case ErrorKind::NotInvolutive: return "NotInvolutive";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::NotTwoDivisibleSet: return "NotTwoDivisibleSet";
        case ErrorKind::OrderTooLarge: return "OrderTooLarge";
        case ErrorKind::Precondition: return "Precondition";
    }
    return "Unknown";
}

class LoopError : public std::runtime_error {
public:
    LoopError(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw LoopError(kind, message);
}

}  // namespace kloops
