#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "fieldcrypt/errors.hpp"
#include "fieldcrypt/keys.hpp"

using namespace fieldcrypt;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::EmptyInput;
}

} // namespace

TEST_SUITE("keys") {

TEST_CASE("parse_record_date accepts both separators") {
    const RecordDate a = parse_record_date("21/05/12");
    CHECK(a.dd == 21);
    CHECK(a.mm == 5);
    CHECK(a.yy == 12);
    const RecordDate b = parse_record_date("31-12-99");
    CHECK(b.dd == 31);
    CHECK(b.mm == 12);
    CHECK(b.yy == 99);
    CHECK(b.to_text() == "31-12-99");
}

TEST_CASE("parse_record_date rejects bad shapes and ranges") {
    CHECK(code_of([] { parse_record_date("32/01/12"); }) == ErrorCode::DateRangeError);
    CHECK(code_of([] { parse_record_date("00/01/12"); }) == ErrorCode::DateRangeError);
    CHECK(code_of([] { parse_record_date("21/13/12"); }) == ErrorCode::DateRangeError);
    CHECK(code_of([] { parse_record_date("21.05.12"); }) == ErrorCode::DateFormatError);
    CHECK(code_of([] { parse_record_date("21/05-12"); }) == ErrorCode::DateFormatError);
    CHECK(code_of([] { parse_record_date("2/05/12"); }) == ErrorCode::DateFormatError);
    CHECK(code_of([] { parse_record_date(""); }) == ErrorCode::DateFormatError);
}

TEST_CASE("parse_record_time") {
    const RecordTime t = parse_record_time("15:50:08");
    CHECK(t.hh == 15);
    CHECK(t.mm == 50);
    CHECK(t.ss == 8);
    const RecordTime max = parse_record_time("23:59:59");
    CHECK(max.hh == 23);
    CHECK(max.mm == 59);
    CHECK(max.ss == 59);
    // minute 00 is accepted at parse time; only K1 = 0 is rejected later
    CHECK(parse_record_time("12:00:00").mm == 0);
    CHECK(code_of([] { parse_record_time("24:00:00"); }) == ErrorCode::TimeRangeError);
    CHECK(code_of([] { parse_record_time("12:60:00"); }) == ErrorCode::TimeRangeError);
    CHECK(code_of([] { parse_record_time("12:00:60"); }) == ErrorCode::TimeRangeError);
    CHECK(code_of([] { parse_record_time("12-00-00"); }) == ErrorCode::TimeFormatError);
    CHECK(code_of([] { parse_record_time("1:00:00"); }) == ErrorCode::TimeFormatError);
}

TEST_CASE("validate_cashier_id") {
    CHECK(validate_cashier_id("CE840716").text == "CE840716");
    CHECK(code_of([] { validate_cashier_id("ce840716"); }) == ErrorCode::CashierIdCharError);
    CHECK(code_of([] { validate_cashier_id("CE-840716"); }) == ErrorCode::CashierIdCharError);
    CHECK(code_of([] { validate_cashier_id("AB"); }) == ErrorCode::CashierIdLengthError);
    CHECK(code_of([] { validate_cashier_id("ABCDEFGHIJKLMNOPQR"); }) ==
          ErrorCode::CashierIdLengthError);
    // bounds are configurable
    CHECK(validate_cashier_id("AB", 2, 4).text == "AB");
}

TEST_CASE("parse_amount") {
    const Amount a = parse_amount("50.00");
    CHECK(a.integer_part == 50);
    CHECK(a.fraction_part == "00");
    CHECK(a.to_text() == "50.00");
    const Amount zero = parse_amount("0.00");
    CHECK(zero.integer_part == 0);
    CHECK(code_of([] { parse_amount("50.0"); }) == ErrorCode::AmountFormatError);
    CHECK(code_of([] { parse_amount("50.000"); }) == ErrorCode::AmountFormatError);
    CHECK(code_of([] { parse_amount(".50"); }) == ErrorCode::AmountFormatError);
    CHECK(code_of([] { parse_amount("50"); }) == ErrorCode::AmountFormatError);
    CHECK(code_of([] { parse_amount("5O.00"); }) == ErrorCode::AmountFormatError);
    CHECK(code_of([] { parse_amount("-5.00"); }) == ErrorCode::AmountFormatError);
    CHECK(code_of([] { parse_amount("99999999999999999999.00"); }) ==
          ErrorCode::AmountTooLarge);
}

TEST_CASE("compute_k1 golden values") {
    CHECK(compute_k1(parse_record_date("21/05/12"), parse_record_time("15:50:08")) == 8701);
    CHECK(compute_k1(parse_record_date("31/12/99"), parse_record_time("23:59:59")) == 78011);
    CHECK(compute_k1(parse_record_date("01/01/00"), parse_record_time("00:01:00")) == 1);
    CHECK(code_of([] {
              compute_k1(parse_record_date("01/01/00"), parse_record_time("00:00:00"));
          }) == ErrorCode::DegenerateTimestamp);
}

TEST_CASE("compute_k1 exhaustive factor maxima") {
    std::int64_t max_lhs = 0;
    for (int dd = 1; dd <= 31; ++dd)
        for (int mm = 1; mm <= 12; ++mm)
            for (int ss = 0; ss <= 59; ++ss)
                max_lhs = std::max<std::int64_t>(max_lhs, dd * mm + ss);
    std::int64_t max_rhs = 0;
    for (int hh = 0; hh <= 23; ++hh)
        for (int mm = 0; mm <= 59; ++mm)
            for (int yy = 0; yy <= 99; ++yy)
                max_rhs = std::max<std::int64_t>(max_rhs, hh + mm + yy);
    CHECK(max_lhs == 431);
    CHECK(max_rhs == 181);
    CHECK(max_lhs * max_rhs == kMaxK1);
}

TEST_CASE("compute_k1 single-element increments") {
    const RecordDate d{17, 3, 42, '/'};
    const RecordTime t{9, 30, 15};
    const auto k1 = compute_k1(d, t);
    // bumping a term of one factor moves K1 by exactly the other factor
    CHECK(compute_k1(d, RecordTime{9, 30, 16}) - k1 == 9 + 30 + 42);
    CHECK(compute_k1(d, RecordTime{10, 30, 15}) - k1 == 17 * 3 + 15);
    CHECK(compute_k1(d, RecordTime{9, 31, 15}) - k1 == 17 * 3 + 15);
    CHECK(compute_k1(RecordDate{17, 3, 43, '/'}, t) - k1 == 17 * 3 + 15);
}

TEST_CASE("compute_k2 golden values") {
    CHECK(compute_k2(validate_cashier_id("CE840716"), char_value_scheme(1)) == 356);
    CHECK(compute_k2(validate_cashier_id("AAA"), char_value_scheme(1)) == 63);
    CHECK(compute_k2(validate_cashier_id("AAA"), char_value_scheme(2)) == 93);
}

TEST_CASE("compute_k2 is order independent and linear in the scheme id") {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> len_dist(3, 17);
    std::uniform_int_distribution<int> char_dist(0, 35);
    for (int iter = 0; iter < 200; ++iter) {
        std::string text;
        const int len = len_dist(gen);
        for (int i = 0; i < len; ++i) {
            text.push_back(CharValueScheme::alphabet_char(char_dist(gen)));
        }
        std::string shuffled = text;
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        const CashierId id{text};
        const CashierId mixed{shuffled};
        for (int k = 1; k < kSchemeCount; ++k) {
            const auto base = compute_k2(id, char_value_scheme(k));
            CHECK(compute_k2(mixed, char_value_scheme(k)) == base);
            CHECK(compute_k2(id, char_value_scheme(k + 1)) == base + 10 * len);
        }
    }
}

TEST_CASE("derive_keys combines both derivations") {
    const KeyPair keys = derive_keys(parse_record_date("21/05/12"),
                                     parse_record_time("15:50:08"),
                                     validate_cashier_id("CE840716"), 1);
    CHECK(keys.k1 == 8701);
    CHECK(keys.k2 == 356);
}

} // TEST_SUITE
