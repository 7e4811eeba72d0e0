#include "fieldcrypt/rotation.hpp"

#include "fieldcrypt/errors.hpp"

#include <charconv>
#include <fstream>

namespace fieldcrypt {

namespace detail {
// store.cpp
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::filesystem::path stage_file(const std::filesystem::path& path, const std::string& content);
std::string serialize_ledger(const Ledger& ledger);
} // namespace detail

namespace {

int parse_int_field(std::string_view field) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw Error(ErrorCode::SettingsFormatError,
                    "settings field '" + std::string(field) + "' is not an integer");
    }
    return value;
}

constexpr int kMaxGenerationRounds = 10000;

} // namespace

CryptoParams parse_settings(std::string_view s) {
    // tolerate surrounding whitespace/newline from file reads
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' '))
        s.remove_suffix(1);
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(s.substr(start));
            break;
        }
        fields.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    if (fields.size() != 6) {
        throw Error(ErrorCode::SettingsFormatError,
                    "expected 6 comma-separated fields p,q,m,n,z,w, got " +
                        std::to_string(fields.size()));
    }
    CryptoParams params;
    params.p = parse_int_field(fields[0]);
    params.q = parse_int_field(fields[1]);
    params.m = parse_int_field(fields[2]);
    params.n = parse_int_field(fields[3]);
    params.z = parse_int_field(fields[4]);
    params.w = parse_int_field(fields[5]);
    validate_params(params);
    return params;
}

std::string serialize_settings(const CryptoParams& params) {
    return std::to_string(params.p) + "," + std::to_string(params.q) + "," +
           std::to_string(params.m) + "," + std::to_string(params.n) + "," +
           std::to_string(params.z) + "," + std::to_string(params.w);
}

CryptoParams load_settings_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open settings file " + path.string());
    }
    std::string line;
    std::getline(in, line);
    return parse_settings(line);
}

void save_settings_file(const std::filesystem::path& path, const CryptoParams& params) {
    detail::write_file_atomic(path, serialize_settings(params) + "\n");
}

CryptoParams next_params(const CryptoParams& prev, Rng& rng) {
    for (int round = 0; round < kMaxGenerationRounds; ++round) {
        CryptoParams next;
        next.sign = +1;

        next.p = static_cast<int>(rng.uniform(0, 4));
        next.q = static_cast<int>(rng.uniform(0, 4));
        if (next.p == 0 && next.q == 0) {
            continue;
        }

        bool coefficients_ok = false;
        for (int tries = 0; tries < kMaxGenerationRounds; ++tries) {
            next.n = static_cast<int>(rng.uniform(1, 50));
            next.m = static_cast<int>(rng.uniform(1, 50));
            if (next.n == next.m) {
                continue;
            }
            if (coefficient(next.n, next.p) == 1 && coefficient(next.m, next.q) == 1) {
                continue;
            }
            coefficients_ok = true;
            break;
        }
        if (!coefficients_ok) {
            break;
        }

        next.z = static_cast<int>(rng.uniform(1, 15));
        next.w = static_cast<int>(rng.uniform(1, 15));

        if (next == prev) {
            continue;
        }
        validate_params(next);
        return next;
    }
    throw Error(ErrorCode::RotationGenerationFailure,
                "no acceptable parameter tuple after " +
                    std::to_string(kMaxGenerationRounds) + " rounds");
}

RotationReport rotate_ledger(Ledger& ledger, const CryptoParams& old_params,
                             const CryptoParams& new_params,
                             const std::filesystem::path& settings_path,
                             const RotateHooks& hooks) {
    validate_params(new_params);

    RotationReport report;
    report.old_params = old_params;
    report.new_params = new_params;

    std::vector<PaymentRecord> rotated;
    rotated.reserve(ledger.size());
    for (const auto& record : ledger.records()) {
        const RecordKey key{record.stdid, record.date, record.time};
        try {
            const RecordDate date = parse_record_date(record.date);
            const RecordTime time = parse_record_time(record.time);
            const CashierId cashier = validate_cashier_id(record.cashierid);

            const KeyPair old_keys = derive_keys(date, time, cashier, old_params.z);
            const Amount amount = decrypt_amount(record.amount, old_keys, old_params);

            const KeyPair new_keys = derive_keys(date, time, cashier, new_params.z);
            PaymentRecord updated = record;
            updated.amount = encrypt_amount(amount, new_keys, new_params);
            rotated.push_back(std::move(updated));

            ++report.records_processed;
            if (hooks.after_record) {
                hooks.after_record(report.records_processed);
            }
        } catch (const Error& e) {
            report.failures.push_back(RotationFailure{key, e.what()});
            break; // abort: nothing has been written yet
        }
    }
    if (!report.failures.empty()) {
        return report;
    }

    // Commit: stage both files fully before the first rename so every write
    // failure leaves the originals untouched.
    Ledger updated(ledger.path());
    updated.replace_records(std::move(rotated));
    try {
        std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged;
        if (!ledger.path().empty()) {
            staged.emplace_back(
                detail::stage_file(ledger.path(), detail::serialize_ledger(updated)),
                ledger.path());
        }
        if (!settings_path.empty()) {
            staged.emplace_back(
                detail::stage_file(settings_path, serialize_settings(new_params) + "\n"),
                settings_path);
        }
        for (const auto& [tmp, dest] : staged) {
            std::error_code ec;
            std::filesystem::rename(tmp, dest, ec);
            if (ec) {
                for (const auto& [t, unused] : staged) {
                    std::filesystem::remove(t, ec);
                }
                throw Error(ErrorCode::IoError, "cannot replace " + dest.string());
            }
        }
    } catch (const Error& e) {
        report.failures.push_back(RotationFailure{RecordKey{}, e.what()});
        return report;
    }
    ledger = std::move(updated);
    return report;
}

} // namespace fieldcrypt
