#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <unistd.h>

#include "fieldcrypt/errors.hpp"
#include "fieldcrypt/rotation.hpp"
#include "fieldcrypt/store.hpp"

using namespace fieldcrypt;

namespace {

namespace fs = std::filesystem;

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::EmptyInput;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fieldcrypt-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace

TEST_SUITE("rotation") {

TEST_CASE("parse_settings") {
    const CryptoParams demo = parse_settings("0,0,1,1,1,1");
    CHECK(demo.is_demo_tuple());
    CHECK(demo.z == 1);
    CHECK(demo.w == 1);

    const CryptoParams other = parse_settings("2,1,7,3,5,9");
    CHECK(other.p == 2);
    CHECK(other.q == 1);
    CHECK(other.m == 7);
    CHECK(other.n == 3);
    CHECK(other.z == 5);
    CHECK(other.w == 9);

    CHECK(code_of([] { parse_settings("1,2,3"); }) == ErrorCode::SettingsFormatError);
    CHECK(code_of([] { parse_settings("a,0,1,2,1,1"); }) == ErrorCode::SettingsFormatError);
    CHECK(code_of([] { parse_settings("5,0,1,2,1,1"); }) == ErrorCode::SettingsRangeError);
    CHECK(code_of([] { parse_settings("0,0,2,3,1,1"); }) == ErrorCode::SettingsRangeError);
}

TEST_CASE("serialize_settings round trips") {
    CHECK(serialize_settings(CryptoParams{}) == "0,0,1,1,1,1");
    CHECK(serialize_settings(parse_settings("2,1,7,3,5,9")) == "2,1,7,3,5,9");
    CHECK(serialize_settings(parse_settings("0,4,50,49,15,15")) == "0,4,50,49,15,15");
}

TEST_CASE("settings file round trip keeps the trailing newline") {
    TempDir dir;
    const fs::path path = dir.path / "settings.txt";
    const CryptoParams params = parse_settings("2,1,7,3,5,9");
    save_settings_file(path, params);
    CHECK(read_file(path) == "2,1,7,3,5,9\n");
    CHECK(load_settings_file(path) == params);
}

TEST_CASE("next_params honors every generation constraint") {
    Rng rng(1234);
    CryptoParams prev; // demo
    for (int iter = 0; iter < 10000; ++iter) {
        const CryptoParams next = next_params(prev, rng);
        CAPTURE(iter);
        REQUIRE(next.p >= 0);
        REQUIRE(next.p <= 4);
        REQUIRE(next.q >= 0);
        REQUIRE(next.q <= 4);
        REQUIRE(!(next.p == 0 && next.q == 0));
        REQUIRE(next.m >= 1);
        REQUIRE(next.m <= 50);
        REQUIRE(next.n >= 1);
        REQUIRE(next.n <= 50);
        REQUIRE(next.n != next.m);
        REQUIRE(!(coefficient(next.n, next.p) == 1 && coefficient(next.m, next.q) == 1));
        REQUIRE(next.z >= 1);
        REQUIRE(next.z <= 15);
        REQUIRE(next.w >= 1);
        REQUIRE(next.w <= 15);
        REQUIRE(next.sign == +1);
        REQUIRE(!(next == prev));
        REQUIRE(!next.is_demo_tuple());
        prev = next;
    }
}

TEST_CASE("next_params is deterministic for a seed") {
    Rng a(20120521);
    Rng b(20120521);
    CryptoParams prev;
    for (int i = 0; i < 50; ++i) {
        const CryptoParams from_a = next_params(prev, a);
        CHECK(from_a == next_params(prev, b));
        prev = from_a;
    }
    // frozen first draw for seed 20120521; portable because the Rng contract
    // pins mt19937_64 plus modulo rejection
    Rng c(20120521);
    CHECK(serialize_settings(next_params(CryptoParams{}, c)) == "0,3,28,27,6,14");
}

TEST_CASE("rotate_ledger re-encrypts and updates settings") {
    TempDir dir;
    const fs::path ledger_path = dir.path / "ledger.jsonl";
    const fs::path settings_path = dir.path / "settings.txt";

    const CryptoParams old_params; // demo
    save_settings_file(settings_path, old_params);

    Ledger ledger(ledger_path);
    add_payment(ledger, "S1", "21/05/12", "15:50:08", "1", "2012", "R-001", "CASH",
                "CE840716", Amount{50, "00"}, old_params);
    CHECK(ledger.records()[0].amount == "+Rp(");

    const CryptoParams new_params = parse_settings("1,0,1,2,1,1");
    const RotationReport report =
        rotate_ledger(ledger, old_params, new_params, settings_path);
    CHECK(report.committed());
    CHECK(report.records_processed == 1);
    CHECK(ledger.records()[0].amount == "+;|x");
    CHECK(get_amount(ledger, "S1", "21/05/12", "15:50:08", new_params) == Amount{50, "00"});
    CHECK(load_settings_file(settings_path) == new_params);

    // reloading from disk sees the rotated ciphertext
    const Ledger reloaded = load_ledger(ledger_path);
    CHECK(reloaded.records()[0].amount == "+;|x");
}

TEST_CASE("rotate_ledger aborts on a corrupted record and changes nothing") {
    TempDir dir;
    const fs::path ledger_path = dir.path / "ledger.jsonl";
    const fs::path settings_path = dir.path / "settings.txt";
    const CryptoParams old_params;
    save_settings_file(settings_path, old_params);

    Ledger ledger(ledger_path);
    add_payment(ledger, "S1", "21/05/12", "15:50:08", "", "", "", "", "CE840716",
                Amount{50, "00"}, old_params);
    add_payment(ledger, "S2", "22/05/12", "15:50:08", "", "", "", "", "CE840716",
                Amount{10, "25"}, old_params);

    // corrupt the second record on disk and reload
    Ledger tampered = load_ledger(ledger_path);
    auto records = tampered.records();
    records[1].amount = "+Ap(";
    tampered.replace_records(records);
    save_ledger(tampered);

    const std::string bytes_before = read_file(ledger_path);
    Ledger working = load_ledger(ledger_path);
    const RotationReport report =
        rotate_ledger(working, old_params, parse_settings("1,0,1,2,1,1"), settings_path);
    CHECK(!report.committed());
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].key == RecordKey{"S2", "22/05/12", "15:50:08"});
    CHECK(read_file(ledger_path) == bytes_before);
    CHECK(load_settings_file(settings_path) == old_params);
    // in-memory ledger also untouched
    CHECK(working.records()[0].amount == "+Rp(");
}

TEST_CASE("rotate_ledger abort via injected failure keeps bytes identical") {
    TempDir dir;
    const fs::path ledger_path = dir.path / "ledger.jsonl";
    const fs::path settings_path = dir.path / "settings.txt";
    const CryptoParams old_params;
    save_settings_file(settings_path, old_params);

    Ledger ledger(ledger_path);
    for (int i = 0; i < 10; ++i) {
        add_payment(ledger, "S" + std::to_string(i), "21/05/12", "15:50:08", "", "", "",
                    "", "CE840716", Amount{i * 7, "25"}, old_params);
    }
    const std::string bytes_before = read_file(ledger_path);

    RotateHooks hooks;
    hooks.after_record = [](std::size_t done) {
        if (done == 4) {
            throw Error(ErrorCode::IoError, "injected failure");
        }
    };
    const RotationReport report = rotate_ledger(ledger, old_params,
                                                parse_settings("1,0,1,2,1,1"),
                                                settings_path, hooks);
    CHECK(!report.committed());
    CHECK(report.records_processed == 4);
    CHECK(read_file(ledger_path) == bytes_before);
    CHECK(load_settings_file(settings_path) == old_params);
}

TEST_CASE("rotating an empty ledger still updates the settings") {
    TempDir dir;
    const fs::path settings_path = dir.path / "settings.txt";
    const CryptoParams old_params;
    save_settings_file(settings_path, old_params);

    Ledger ledger(dir.path / "ledger.jsonl");
    save_ledger(ledger);
    const CryptoParams new_params = parse_settings("2,1,7,3,5,9");
    const RotationReport report = rotate_ledger(ledger, old_params, new_params, settings_path);
    CHECK(report.committed());
    CHECK(report.records_processed == 0);
    CHECK(load_settings_file(settings_path) == new_params);
}

TEST_CASE("plaintext multiset is preserved across rotations") {
    TempDir dir;
    Ledger ledger(dir.path / "ledger.jsonl");
    CryptoParams params;
    Rng rng(31337);
    std::vector<Amount> amounts;
    for (int i = 0; i < 200; ++i) {
        const Amount amount{i * 37 % 9001, std::string{static_cast<char>('0' + i % 10),
                                                       static_cast<char>('0' + (i / 10) % 10)}};
        amounts.push_back(amount);
        add_payment(ledger, "S" + std::to_string(i), "21/05/12", "15:50:08", "", "", "",
                    "", "CE840716", amount, params);
    }
    for (int round = 0; round < 3; ++round) {
        const CryptoParams next = next_params(params, rng);
        const RotationReport report =
            rotate_ledger(ledger, params, next, dir.path / "settings.txt");
        REQUIRE(report.committed());
        params = next;
        for (int i = 0; i < 200; ++i) {
            CHECK(get_amount(ledger, "S" + std::to_string(i), "21/05/12", "15:50:08",
                             params) == amounts[static_cast<std::size_t>(i)]);
        }
    }
}

} // TEST_SUITE
