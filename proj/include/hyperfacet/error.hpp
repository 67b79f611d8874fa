#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperfacet {

// Stable, machine-readable failure codes. The string form of each code is
// part of the HTTP and CLI contract.
enum class ErrorCode {
    UnknownVertex,
    UnknownType,
    UnknownEdge,
    UnknownReference,
    UnknownSearch,
    EmptySelection,
    EmptyRefSet,
    RefNotInComponent,
    TooManyReferences,
    CrossComponent,
    EmptySearch,
    InvalidQuery,
    InvalidRequest,
    DuplicateRef,
    MalformedRecord,
    MalformedSchema,
    IoError,
    VersionMismatch,
};

enum class ErrorCategory {
    Validation,  // HTTP 400, exit code 2
    NotFound,    // HTTP 404, exit code 2
    Io,          // HTTP 500, exit code 1
};

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace hyperfacet
