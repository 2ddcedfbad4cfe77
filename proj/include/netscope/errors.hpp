#pragma once

#include <stdexcept>
#include <string>

namespace netscope {

// Stable process exit codes; each pipeline failure maps to exactly one.
enum class ErrorCode : int {
    InvalidArguments = 2,
    SourceOpenFailure = 3,
    MalformedTraceFile = 4,
    NoRangesDetermined = 5,
    NoFreeAddress = 6,
    InvalidSpec = 7,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct SourceOpenError : Error {
    explicit SourceOpenError(const std::string& m) : Error(ErrorCode::SourceOpenFailure, m) {}
};

struct MalformedTraceError : Error {
    explicit MalformedTraceError(const std::string& m) : Error(ErrorCode::MalformedTraceFile, m) {}
};

struct NoRangesDeterminedError : Error {
    explicit NoRangesDeterminedError(const std::string& m) : Error(ErrorCode::NoRangesDetermined, m) {}
};

struct NoFreeAddressError : Error {
    explicit NoFreeAddressError(const std::string& m) : Error(ErrorCode::NoFreeAddress, m) {}
};

struct InvalidSpecError : Error {
    explicit InvalidSpecError(const std::string& m) : Error(ErrorCode::InvalidSpec, m) {}
};

struct InvalidArgumentsError : Error {
    explicit InvalidArgumentsError(const std::string& m) : Error(ErrorCode::InvalidArguments, m) {}
};

}  // namespace netscope
