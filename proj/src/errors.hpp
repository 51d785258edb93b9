#pragma once

#include <stdexcept>
#include <string>

namespace cfa {

enum class ErrorCode {
    MalformedCode,
    RangeError,
    LengthError,
    ParseError,
    InvariantViolation,
    AlphabetError,
    AlphabetMismatch,
    CapExceeded,
    StackError,
    OutputAlphabetError,
    HomomorphismError,
    NormalFormError,
    NotInSpan,
    ScaleError,
    DivisionByZero,
    UnknownFamily,
    NoMachine,
    UnknownSuite,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::MalformedCode: return "MalformedCode";
        case ErrorCode::RangeError: return "RangeError";
        case ErrorCode::LengthError: return "LengthError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::AlphabetError: return "AlphabetError";
        case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::StackError: return "StackError";
        case ErrorCode::OutputAlphabetError: return "OutputAlphabetError";
        case ErrorCode::HomomorphismError: return "HomomorphismError";
        case ErrorCode::NormalFormError: return "NormalFormError";
        case ErrorCode::NotInSpan: return "NotInSpan";
        case ErrorCode::ScaleError: return "ScaleError";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::UnknownFamily: return "UnknownFamily";
        case ErrorCode::NoMachine: return "NoMachine";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
        case ErrorCode::IoError: return "IoError";
    }
    return "Error";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, std::string(error_code_name(code)) + ": " + what);
}

}  // namespace cfa
