#include "hyperfacet/error.hpp"

namespace hyperfacet {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::UnknownSearch: return "UnknownSearch";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::EmptyRefSet: return "EmptyRefSet";
    case ErrorCode::RefNotInComponent: return "RefNotInComponent";
    case ErrorCode::TooManyReferences: return "TooManyReferences";
    case ErrorCode::CrossComponent: return "CrossComponent";
    case ErrorCode::EmptySearch: return "EmptySearch";
    case ErrorCode::InvalidQuery: return "InvalidQuery";
    case ErrorCode::InvalidRequest: return "InvalidRequest";
    case ErrorCode::DuplicateRef: return "DuplicateRef";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::MalformedSchema: return "MalformedSchema";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    }
    return "Unknown";
}

ErrorCategory category(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownSearch:
        return ErrorCategory::NotFound;
    case ErrorCode::IoError:
    case ErrorCode::VersionMismatch:
        return ErrorCategory::Io;
    default:
        return ErrorCategory::Validation;
    }
}

} // namespace hyperfacet
