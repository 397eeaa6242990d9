#include "hoop/error.hpp"

namespace hoop {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::EmptyTable: return "empty-table";
    case ErrorCode::DuplicateItem: return "duplicate-item";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::ThresholdExceeded: return "threshold-exceeded";
    case ErrorCode::InvalidIndex: return "invalid-index";
    case ErrorCode::PaletteExhausted: return "palette-exhausted";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

} // namespace hoop
