#pragma once

#include <stdexcept>
#include <string>

namespace fieldcrypt {

enum class ErrorCode {
    // codec
    SchemeIdOutOfRange,
    OddLengthInput,
    InvalidDigit,
    UnknownSymbol,
    EmptyInput,
    // keys
    DateFormatError,
    DateRangeError,
    TimeFormatError,
    TimeRangeError,
    CashierIdCharError,
    CashierIdLengthError,
    AmountFormatError,
    DegenerateTimestamp,
    // cipher
    AmountTooLarge,
    NegativeIntermediate,
    CiphertextTooShort,
    TamperDetected,
    // rotation
    SettingsFormatError,
    SettingsRangeError,
    RotationGenerationFailure,
    // store
    DuplicateKey,
    NotFound,
    MalformedRecordLine,
    IoError,
    // cryptanalysis
    InvalidLength,
    NoObservations,
    InvalidTrialCount,
};

const char* error_code_name(ErrorCode code);

/// All library failures surface as this exception; code() identifies the
/// condition so callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace fieldcrypt
