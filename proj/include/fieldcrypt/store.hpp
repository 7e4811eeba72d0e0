#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "fieldcrypt/cipher.hpp"
#include "fieldcrypt/keys.hpp"

namespace fieldcrypt {

/// One ledger row. The key-bearing fields (date, time, cashierid) are
/// validated; term, acyear, receiptnumber and mode are opaque strings.
/// amount holds only the ciphertext; plaintext amounts never touch disk.
struct PaymentRecord {
    std::string stdid;
    std::string date;
    std::string time;
    std::string term;
    std::string acyear;
    std::string receiptnumber;
    std::string mode;
    std::string cashierid;
    std::string amount; // ciphertext symbols, UTF-8

    friend bool operator==(const PaymentRecord&, const PaymentRecord&) = default;
};

struct RecordKey {
    std::string stdid;
    std::string date;
    std::string time;

    std::string to_text() const { return stdid + " " + date + " " + time; }

    friend bool operator==(const RecordKey&, const RecordKey&) = default;
};

/// File-backed collection of payment records with (stdid, date, time) as
/// the primary key. A Ledger is a plain value: reads may share a const
/// instance freely across threads, mutation requires exclusive access.
class Ledger {
public:
    Ledger() = default;
    explicit Ledger(std::filesystem::path path) : path_(std::move(path)) {}

    const std::vector<PaymentRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    const std::filesystem::path& path() const noexcept { return path_; }
    void set_path(std::filesystem::path path) { path_ = std::move(path); }

    const PaymentRecord* find(const RecordKey& key) const;

    /// Appends in memory only; throws Error(DuplicateKey) on key collision.
    void append(PaymentRecord record);

    /// Replaces all records (key uniqueness re-checked).
    void replace_records(std::vector<PaymentRecord> records);

private:
    static std::string index_key(const std::string& stdid, const std::string& date,
                                 const std::string& time);

    std::vector<PaymentRecord> records_;
    std::unordered_map<std::string, std::size_t> index_;
    std::filesystem::path path_;
};

struct VerificationReport {
    std::size_t ok = 0;
    std::vector<RecordKey> tampered;
    std::vector<RecordKey> undecodable;

    bool clean() const noexcept { return tampered.empty() && undecodable.empty(); }
};

/// Reads a JSON-lines ledger file. Each line must be an object with exactly
/// the fields stdid, date, time, term, acyear, receiptnumber, mode,
/// cashierid, amount, all strings. Throws Error(MalformedRecordLine) with
/// the 1-based line number, Error(DuplicateKey) on key collisions.
Ledger load_ledger(const std::filesystem::path& path);

/// Writes the canonical JSON-lines form (fixed field order, one record per
/// line, trailing newline) atomically via a temp file and rename.
void save_ledger(const Ledger& ledger);
void save_ledger_as(const Ledger& ledger, const std::filesystem::path& path);

/// Validates the fields, encrypts the amount with keys derived from this
/// record's own date/time/cashierid, appends, and persists when the ledger
/// has a backing path.
const PaymentRecord& add_payment(Ledger& ledger, const std::string& stdid,
                                 const std::string& date, const std::string& time,
                                 const std::string& term, const std::string& acyear,
                                 const std::string& receiptnumber, const std::string& mode,
                                 const std::string& cashierid, const Amount& amount,
                                 const CryptoParams& params);

/// Decrypts the stored amount of one record under the given parameters.
Amount get_amount(const Ledger& ledger, const std::string& stdid,
                  const std::string& date, const std::string& time,
                  const CryptoParams& params);

/// Attempts to decrypt every record; failures are partitioned into
/// tampered (integrity check fired) and undecodable (fields or symbols
/// unusable). Never throws on record content; the ledger is not modified.
VerificationReport verify_ledger(const Ledger& ledger, const CryptoParams& params);

} // namespace fieldcrypt
