#include "fieldcrypt/keys.hpp"

#include "fieldcrypt/errors.hpp"

#include <charconv>
#include <cstdio>
#include <limits>

namespace fieldcrypt {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (const char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

// Parses a field of exactly two digits; returns -1 on shape mismatch.
int two_digit_field(std::string_view s) {
    if (s.size() != 2 || !all_digits(s)) return -1;
    return (s[0] - '0') * 10 + (s[1] - '0');
}

} // namespace

std::string RecordDate::to_text() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d%c%02d%c%02d", dd, separator, mm, separator, yy);
    return buf;
}

std::string RecordTime::to_text() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", hh, mm, ss);
    return buf;
}

std::string Amount::to_text() const {
    return std::to_string(integer_part) + "." + fraction_part;
}

RecordDate parse_record_date(std::string_view s) {
    if (s.size() != 8) {
        throw Error(ErrorCode::DateFormatError, "expected dd-mm-yy or dd/mm/yy");
    }
    const char sep = s[2];
    if ((sep != '-' && sep != '/') || s[5] != sep) {
        throw Error(ErrorCode::DateFormatError, "date separator must be '-' or '/'");
    }
    const int dd = two_digit_field(s.substr(0, 2));
    const int mm = two_digit_field(s.substr(3, 2));
    const int yy = two_digit_field(s.substr(6, 2));
    if (dd < 0 || mm < 0 || yy < 0) {
        throw Error(ErrorCode::DateFormatError, "date elements must be two digits");
    }
    if (dd < 1 || dd > 31) {
        throw Error(ErrorCode::DateRangeError, "day " + std::to_string(dd) + " not in [01, 31]");
    }
    if (mm < 1 || mm > 12) {
        throw Error(ErrorCode::DateRangeError, "month " + std::to_string(mm) + " not in [01, 12]");
    }
    return RecordDate{dd, mm, yy, sep};
}

RecordTime parse_record_time(std::string_view s) {
    if (s.size() != 8 || s[2] != ':' || s[5] != ':') {
        throw Error(ErrorCode::TimeFormatError, "expected HH:MM:SS");
    }
    const int hh = two_digit_field(s.substr(0, 2));
    const int mm = two_digit_field(s.substr(3, 2));
    const int ss = two_digit_field(s.substr(6, 2));
    if (hh < 0 || mm < 0 || ss < 0) {
        throw Error(ErrorCode::TimeFormatError, "time elements must be two digits");
    }
    if (hh > 23) {
        throw Error(ErrorCode::TimeRangeError, "hour " + std::to_string(hh) + " not in [00, 23]");
    }
    if (mm > 59) {
        throw Error(ErrorCode::TimeRangeError, "minute " + std::to_string(mm) + " not in [00, 59]");
    }
    if (ss > 59) {
        throw Error(ErrorCode::TimeRangeError, "second " + std::to_string(ss) + " not in [00, 59]");
    }
    return RecordTime{hh, mm, ss};
}

CashierId validate_cashier_id(std::string_view s, int min_length, int max_length) {
    for (const char c : s) {
        const bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (!ok) {
            throw Error(ErrorCode::CashierIdCharError,
                        "cashier id must be uppercase alphanumeric only");
        }
    }
    const auto n = static_cast<int>(s.size());
    if (n < min_length || n > max_length) {
        throw Error(ErrorCode::CashierIdLengthError,
                    "cashier id length " + std::to_string(n) + " not in [" +
                        std::to_string(min_length) + ", " + std::to_string(max_length) + "]");
    }
    return CashierId{std::string(s)};
}

Amount parse_amount(std::string_view s) {
    const auto dot = s.find('.');
    if (dot == std::string_view::npos || dot == 0 || s.size() - dot - 1 != 2) {
        throw Error(ErrorCode::AmountFormatError,
                    "amount must be one or more digits, '.', then exactly two digits");
    }
    const std::string_view int_text = s.substr(0, dot);
    const std::string_view frac_text = s.substr(dot + 1);
    if (!all_digits(int_text) || !all_digits(frac_text)) {
        throw Error(ErrorCode::AmountFormatError, "amount contains non-digit characters");
    }
    std::int64_t ip = 0;
    const auto [ptr, ec] = std::from_chars(int_text.data(), int_text.data() + int_text.size(), ip);
    if (ec == std::errc::result_out_of_range) {
        throw Error(ErrorCode::AmountTooLarge, "integer part exceeds the representable bound");
    }
    if (ec != std::errc{} || ptr != int_text.data() + int_text.size()) {
        throw Error(ErrorCode::AmountFormatError, "unparseable integer part");
    }
    return Amount{ip, std::string(frac_text)};
}

std::int64_t compute_k1(const RecordDate& date, const RecordTime& time) {
    const std::int64_t lhs = static_cast<std::int64_t>(date.dd) * date.mm + time.ss;
    const std::int64_t rhs = static_cast<std::int64_t>(time.hh) + time.mm + date.yy;
    const std::int64_t k1 = lhs * rhs;
    if (k1 == 0) {
        throw Error(ErrorCode::DegenerateTimestamp,
                    "timestamp " + date.to_text() + " " + time.to_text() +
                        " derives K1 = 0 and cannot key an encryption");
    }
    return k1;
}

std::int64_t compute_k2(const CashierId& id, const CharValueScheme& scheme) {
    std::int64_t sum = 0;
    for (const char c : id.text) {
        sum += scheme.value(c);
    }
    return sum;
}

KeyPair derive_keys(const RecordDate& date, const RecordTime& time,
                    const CashierId& id, int z) {
    return KeyPair{compute_k1(date, time), compute_k2(id, char_value_scheme(z))};
}

} // namespace fieldcrypt
