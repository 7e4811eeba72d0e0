#include "fieldcrypt/store.hpp"

#include "fieldcrypt/errors.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace fieldcrypt {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFieldNames[] = {"stdid", "date",          "time", "term",
                                       "acyear", "receiptnumber", "mode", "cashierid",
                                       "amount"};

std::string record_to_line(const PaymentRecord& r) {
    ordered_json j;
    j["stdid"] = r.stdid;
    j["date"] = r.date;
    j["time"] = r.time;
    j["term"] = r.term;
    j["acyear"] = r.acyear;
    j["receiptnumber"] = r.receiptnumber;
    j["mode"] = r.mode;
    j["cashierid"] = r.cashierid;
    j["amount"] = r.amount;
    return j.dump();
}

PaymentRecord record_from_line(const std::string& line, std::size_t line_no) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedRecordLine,
                    "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || j.size() != std::size(kFieldNames)) {
        throw Error(ErrorCode::MalformedRecordLine,
                    "line " + std::to_string(line_no) + ": expected an object with " +
                        std::to_string(std::size(kFieldNames)) + " fields");
    }
    for (const char* name : kFieldNames) {
        if (!j.contains(name) || !j[name].is_string()) {
            throw Error(ErrorCode::MalformedRecordLine,
                        "line " + std::to_string(line_no) + ": missing string field '" +
                            name + "'");
        }
    }
    PaymentRecord r;
    r.stdid = j["stdid"].get<std::string>();
    r.date = j["date"].get<std::string>();
    r.time = j["time"].get<std::string>();
    r.term = j["term"].get<std::string>();
    r.acyear = j["acyear"].get<std::string>();
    r.receiptnumber = j["receiptnumber"].get<std::string>();
    r.mode = j["mode"].get<std::string>();
    r.cashierid = j["cashierid"].get<std::string>();
    r.amount = j["amount"].get<std::string>();
    return r;
}

KeyPair keys_for_record(const PaymentRecord& r, const CryptoParams& params) {
    const RecordDate date = parse_record_date(r.date);
    const RecordTime time = parse_record_time(r.time);
    const CashierId cashier = validate_cashier_id(r.cashierid);
    return derive_keys(date, time, cashier, params.z);
}

} // namespace

std::string Ledger::index_key(const std::string& stdid, const std::string& date,
                              const std::string& time) {
    std::string key;
    key.reserve(stdid.size() + date.size() + time.size() + 2);
    key += stdid;
    key += '\x1f';
    key += date;
    key += '\x1f';
    key += time;
    return key;
}

const PaymentRecord* Ledger::find(const RecordKey& key) const {
    const auto it = index_.find(index_key(key.stdid, key.date, key.time));
    return it == index_.end() ? nullptr : &records_[it->second];
}

void Ledger::append(PaymentRecord record) {
    const std::string key = index_key(record.stdid, record.date, record.time);
    if (index_.contains(key)) {
        throw Error(ErrorCode::DuplicateKey,
                    "record (" + record.stdid + ", " + record.date + ", " + record.time +
                        ") already exists");
    }
    index_.emplace(key, records_.size());
    records_.push_back(std::move(record));
}

void Ledger::replace_records(std::vector<PaymentRecord> records) {
    std::vector<PaymentRecord> old_records = std::move(records_);
    auto old_index = std::move(index_);
    records_.clear();
    index_.clear();
    try {
        for (auto& r : records) {
            append(std::move(r));
        }
    } catch (...) {
        records_ = std::move(old_records);
        index_ = std::move(old_index);
        throw;
    }
}

Ledger load_ledger(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open ledger file " + path.string());
    }
    Ledger ledger(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        ledger.append(record_from_line(line, line_no));
    }
    return ledger;
}

namespace detail {

std::filesystem::path stage_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        out.close();
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "short write to " + tmp.string());
    }
    return tmp;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = stage_file(path, content);
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "cannot replace " + path.string());
    }
}

std::string serialize_ledger(const Ledger& ledger) {
    std::string out;
    for (const auto& r : ledger.records()) {
        out += record_to_line(r);
        out += '\n';
    }
    return out;
}

} // namespace detail

void save_ledger_as(const Ledger& ledger, const std::filesystem::path& path) {
    detail::write_file_atomic(path, detail::serialize_ledger(ledger));
}

void save_ledger(const Ledger& ledger) {
    if (ledger.path().empty()) {
        throw Error(ErrorCode::IoError, "ledger has no backing path");
    }
    save_ledger_as(ledger, ledger.path());
}

const PaymentRecord& add_payment(Ledger& ledger, const std::string& stdid,
                                 const std::string& date, const std::string& time,
                                 const std::string& term, const std::string& acyear,
                                 const std::string& receiptnumber, const std::string& mode,
                                 const std::string& cashierid, const Amount& amount,
                                 const CryptoParams& params) {
    PaymentRecord record;
    record.stdid = stdid;
    record.date = date;
    record.time = time;
    record.term = term;
    record.acyear = acyear;
    record.receiptnumber = receiptnumber;
    record.mode = mode;
    record.cashierid = cashierid;

    const KeyPair keys = keys_for_record(record, params);
    record.amount = encrypt_amount(amount, keys, params);

    ledger.append(std::move(record));
    if (!ledger.path().empty()) {
        save_ledger(ledger);
    }
    return ledger.records().back();
}

Amount get_amount(const Ledger& ledger, const std::string& stdid,
                  const std::string& date, const std::string& time,
                  const CryptoParams& params) {
    const PaymentRecord* record = ledger.find(RecordKey{stdid, date, time});
    if (record == nullptr) {
        throw Error(ErrorCode::NotFound,
                    "no record (" + stdid + ", " + date + ", " + time + ")");
    }
    const KeyPair keys = keys_for_record(*record, params);
    return decrypt_amount(record->amount, keys, params);
}

VerificationReport verify_ledger(const Ledger& ledger, const CryptoParams& params) {
    VerificationReport report;
    for (const auto& r : ledger.records()) {
        const RecordKey key{r.stdid, r.date, r.time};
        try {
            const KeyPair keys = keys_for_record(r, params);
            decrypt_amount(r.amount, keys, params);
            ++report.ok;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::TamperDetected) {
                report.tampered.push_back(key);
            } else {
                report.undecodable.push_back(key);
            }
        }
    }
    return report;
}

} // namespace fieldcrypt
