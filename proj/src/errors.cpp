#include "netscope/errors.hpp"

namespace netscope {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArguments: return "InvalidArguments";
        case ErrorCode::SourceOpenFailure: return "SourceOpenFailure";
        case ErrorCode::MalformedTraceFile: return "MalformedTraceFile";
        case ErrorCode::NoRangesDetermined: return "NoRangesDetermined";
        case ErrorCode::NoFreeAddress: return "NoFreeAddress";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
    }
    return "Error";
}

}  // namespace netscope
