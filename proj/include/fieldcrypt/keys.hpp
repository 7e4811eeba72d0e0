#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fieldcrypt/codec.hpp"

namespace fieldcrypt {

/// Calendar-free date: elements are range-checked independently
/// (dd 01..31, mm 01..12, yy 00..99); 31/02 is deliberately accepted.
struct RecordDate {
    int dd = 1;
    int mm = 1;
    int yy = 0;
    char separator = '/';

    std::string to_text() const;
};

struct RecordTime {
    int hh = 0;
    int mm = 0;
    int ss = 0;

    std::string to_text() const;
};

/// Uppercase alphanumeric operator id, 3 to 17 characters by default.
struct CashierId {
    std::string text;
};

/// A monetary amount split as the cipher consumes it: non-negative integer
/// part plus the literal two-digit fraction string.
struct Amount {
    std::int64_t integer_part = 0;
    std::string fraction_part = "00";

    std::string to_text() const;

    friend bool operator==(const Amount&, const Amount&) = default;
};

struct KeyPair {
    std::int64_t k1 = 0;
    std::int64_t k2 = 0;
};

inline constexpr int kCashierIdMinLength = 3;
inline constexpr int kCashierIdMaxLength = 17;

/// Largest value compute_k1 can produce over the valid field ranges:
/// max(dd*mm+SS) * max(HH+MM+yy) = 431 * 181.
inline constexpr std::int64_t kMaxK1 = 78011;

/// Accepts "dd-mm-yy" or "dd/mm/yy" (the separator is not significant but
/// must be consistent).
RecordDate parse_record_date(std::string_view s);

/// Accepts "HH:MM:SS". MM == 00 is accepted here; timestamps whose derived
/// K1 would be zero are rejected at key-derivation time instead.
RecordTime parse_record_time(std::string_view s);

CashierId validate_cashier_id(std::string_view s,
                              int min_length = kCashierIdMinLength,
                              int max_length = kCashierIdMaxLength);

/// Accepts one or more integer digits, a dot, exactly two fraction digits.
Amount parse_amount(std::string_view s);

/// K1 = (dd*mm + SS) * (HH + MM + yy). Throws Error(DegenerateTimestamp)
/// when the result is zero (HH = MM = yy = 0), since such a timestamp
/// cannot key an encryption.
std::int64_t compute_k1(const RecordDate& date, const RecordTime& time);

/// K2 = sum of the per-character scheme values of the cashier id.
std::int64_t compute_k2(const CashierId& id, const CharValueScheme& scheme);

/// Both keys from the raw neighborhood fields; z selects the char-value
/// scheme for K2.
KeyPair derive_keys(const RecordDate& date, const RecordTime& time,
                    const CashierId& id, int z);

} // namespace fieldcrypt
