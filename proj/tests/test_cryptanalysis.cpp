#include <doctest.h>

#include <functional>

#include "fieldcrypt/cryptanalysis.hpp"
#include "fieldcrypt/errors.hpp"
#include "fieldcrypt/rotation.hpp"

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

Observation observe(const Amount& amount, const std::string& date, const std::string& time,
                    const std::string& cashier, const CryptoParams& params) {
    const KeyPair keys = derive_keys(parse_record_date(date), parse_record_time(time),
                                     validate_cashier_id(cashier), params.z);
    Observation obs;
    obs.amount = amount;
    obs.ciphertext = encrypt_amount(amount, keys, params);
    obs.date = date;
    obs.time = time;
    obs.cashierid = cashier;
    return obs;
}

} // namespace

TEST_SUITE("cryptanalysis") {

TEST_CASE("recover_params finds the demo tuple from the worked example") {
    const Observation obs =
        observe(Amount{50, "00"}, "21/05/12", "15:50:08", "CE840716", CryptoParams{});
    CHECK(obs.ciphertext == "+Rp(");

    const ParamBounds bounds = parse_bounds("0-0,0-0,1-3,1-3,1-2,1-2");
    const CandidateSet result = recover_params({obs}, bounds, 2);
    CHECK(result.space_size == 36);
    CHECK(result.contains(CryptoParams{}));
    // with p = q = 0 every (m, n) pair collapses to the same formula, so all
    // nine base combinations under the right z, w survive
    CHECK(result.tuples.size() == 9);
    for (const auto& t : result.tuples) {
        CHECK(t.p == 0);
        CHECK(t.q == 0);
        CHECK(t.z == 1);
        CHECK(t.w == 1);
    }
}

TEST_CASE("recover_params always contains the generating tuple") {
    Rng rng(777);
    const ParamBounds bounds = parse_bounds("0-2,0-2,1-6,1-6,1-3,1-3");
    for (int trial = 0; trial < 3; ++trial) {
        // hidden tuple drawn inside the bounds, respecting the generation rules
        CryptoParams hidden;
        do {
            hidden.p = static_cast<int>(rng.uniform(0, 2));
            hidden.q = static_cast<int>(rng.uniform(0, 2));
            hidden.m = static_cast<int>(rng.uniform(1, 6));
            hidden.n = static_cast<int>(rng.uniform(1, 6));
            hidden.z = static_cast<int>(rng.uniform(1, 3));
            hidden.w = static_cast<int>(rng.uniform(1, 3));
        } while ((hidden.p == 0 && hidden.q == 0) || hidden.m == hidden.n);

        const std::vector<Observation> obs = {
            observe(Amount{rng.uniform(0, 100000), "25"}, "21/05/12", "15:50:08",
                    "CE840716", hidden),
            observe(Amount{rng.uniform(0, 100000), "77"}, "03/11/19", "08:45:31",
                    "KP77A", hidden),
        };
        const CandidateSet result = recover_params(obs, bounds);
        CAPTURE(trial);
        CHECK(result.contains(hidden));
    }
}

TEST_CASE("recover_params returns empty for a fabricated ciphertext") {
    Observation obs =
        observe(Amount{50, "00"}, "21/05/12", "15:50:08", "CE840716", CryptoParams{});
    obs.ciphertext[1] = 'A'; // "+Ap(" matches no tuple
    const CandidateSet result = recover_params({obs}, parse_bounds("0-0,0-0,1-3,1-3,1-2,1-2"));
    CHECK(result.tuples.empty());
    CHECK(result.space_size == 36);
}

TEST_CASE("recover_params rejects an empty observation list") {
    CHECK(code_of([] { recover_params({}); }) == ErrorCode::NoObservations);
}

TEST_CASE("recover_params result is independent of thread count") {
    const std::vector<Observation> obs = {
        observe(Amount{1234, "56"}, "21/05/12", "15:50:08", "CE840716",
                parse_settings("1,0,1,2,2,3"))};
    const ParamBounds bounds = parse_bounds("0-2,0-2,1-10,1-10,1-5,1-5");
    const CandidateSet one = recover_params(obs, bounds, 1);
    const CandidateSet many = recover_params(obs, bounds, 8);
    CHECK(one.space_size == many.space_size);
    REQUIRE(one.tuples.size() == many.tuples.size());
    for (std::size_t i = 0; i < one.tuples.size(); ++i) {
        CHECK(one.tuples[i] == many.tuples[i]);
    }
}

TEST_CASE("parse_bounds") {
    const ParamBounds bounds = parse_bounds("0-2,0-2,1-10,1-10,1-5,1-5");
    CHECK(bounds.p_hi == 2);
    CHECK(bounds.m_hi == 10);
    CHECK(bounds.z_hi == 5);
    CHECK(bounds.tuple_count() == 22500);
    CHECK(ParamBounds{}.tuple_count() == 14062500ULL);
    CHECK(code_of([] { parse_bounds("0-2,0-2"); }) == ErrorCode::SettingsFormatError);
    CHECK(code_of([] { parse_bounds("0-9,0-2,1-10,1-10,1-5,1-5"); }) ==
          ErrorCode::SettingsRangeError);
}

TEST_CASE("grouping_space counts coincide for every even length") {
    const GroupingSpace two = grouping_space(2);
    CHECK(two.ungrouped_count == 100);
    CHECK(two.grouped_count == 100);
    const GroupingSpace six = grouping_space(6);
    CHECK(six.ungrouped_count == 1000000);
    CHECK(six.grouped_count == 1000000);
    for (int n = 2; n <= 200; n += 2) {
        const GroupingSpace space = grouping_space(n);
        CHECK(space.ungrouped_count == space.grouped_count);
    }
    // lengths beyond any machine word still compare exactly
    const GroupingSpace big = grouping_space(120);
    CHECK(big.ungrouped_count.str().size() == 121);
    CHECK(code_of([] { grouping_space(3); }) == ErrorCode::InvalidLength);
    CHECK(code_of([] { grouping_space(0); }) == ErrorCode::InvalidLength);
    CHECK(code_of([] { grouping_space(-2); }) == ErrorCode::InvalidLength);
}

TEST_CASE("tamper trials partition and integer-region substitutions never pass silently as the same amount") {
    Rng rng(2025);
    const TamperStats stats = tamper_detection_rate(500, rng);
    CHECK(stats.trials == 500);
    CHECK(stats.detected + stats.silent_same_amount + stats.silent_wrong_amount == 500);
    CHECK(stats.silent_same_amount == 0); // pair bijectivity leaves no room
    CHECK(stats.detected > 0);
    CHECK(code_of([] {
              Rng r(1);
              tamper_detection_rate(0, r);
          }) == ErrorCode::InvalidTrialCount);
}

TEST_CASE("fraction substitutions are always silent and always wrong") {
    Rng rng(99);
    TamperTrialConfig config;
    config.target = TamperTarget::fraction;
    const TamperStats stats = tamper_detection_rate(500, rng, config);
    CHECK(stats.detected == 0);
    CHECK(stats.silent_same_amount == 0);
    CHECK(stats.silent_wrong_amount == 500);
}

TEST_CASE("tamper measurement is deterministic for a seed") {
    Rng a(31415), b(31415);
    const TamperStats sa = tamper_detection_rate(200, a);
    const TamperStats sb = tamper_detection_rate(200, b);
    CHECK(sa.detected == sb.detected);
    CHECK(sa.silent_wrong_amount == sb.silent_wrong_amount);
}

} // TEST_SUITE
