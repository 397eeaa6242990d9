#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoop {

enum class ErrorCode {
    Parse,
    Validation,
    EmptyTable,
    DuplicateItem,
    DimensionMismatch,
    ThresholdExceeded,
    InvalidIndex,
    PaletteExhausted,
    Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// front ends (CLI exit codes, wire error codes) can map it without parsing text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace hoop
