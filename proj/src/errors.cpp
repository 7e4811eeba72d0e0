#include "fieldcrypt/errors.hpp"

namespace fieldcrypt {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::SchemeIdOutOfRange: return "SchemeIdOutOfRange";
    case ErrorCode::OddLengthInput: return "OddLengthInput";
    case ErrorCode::InvalidDigit: return "InvalidDigit";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DateFormatError: return "DateFormatError";
    case ErrorCode::DateRangeError: return "DateRangeError";
    case ErrorCode::TimeFormatError: return "TimeFormatError";
    case ErrorCode::TimeRangeError: return "TimeRangeError";
    case ErrorCode::CashierIdCharError: return "CashierIdCharError";
    case ErrorCode::CashierIdLengthError: return "CashierIdLengthError";
    case ErrorCode::AmountFormatError: return "AmountFormatError";
    case ErrorCode::DegenerateTimestamp: return "DegenerateTimestamp";
    case ErrorCode::AmountTooLarge: return "AmountTooLarge";
    case ErrorCode::NegativeIntermediate: return "NegativeIntermediate";
    case ErrorCode::CiphertextTooShort: return "CiphertextTooShort";
    case ErrorCode::TamperDetected: return "TamperDetected";
    case ErrorCode::SettingsFormatError: return "SettingsFormatError";
    case ErrorCode::SettingsRangeError: return "SettingsRangeError";
    case ErrorCode::RotationGenerationFailure: return "RotationGenerationFailure";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::MalformedRecordLine: return "MalformedRecordLine";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::NoObservations: return "NoObservations";
    case ErrorCode::InvalidTrialCount: return "InvalidTrialCount";
    }
    return "UnknownError";
}

} // namespace fieldcrypt
