// fieldcrypt command-line tool: one-shot encrypt/decrypt, ledger operations,
// parameter rotation, scheme inspection and cryptanalysis drivers.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fieldcrypt/cipher.hpp"
#include "fieldcrypt/codec.hpp"
#include "fieldcrypt/cryptanalysis.hpp"
#include "fieldcrypt/errors.hpp"
#include "fieldcrypt/keys.hpp"
#include "fieldcrypt/rotation.hpp"
#include "fieldcrypt/store.hpp"
#include "fieldcrypt/utf8.hpp"

namespace {

using fieldcrypt::Amount;
using fieldcrypt::CryptoParams;
using fieldcrypt::Error;
using fieldcrypt::ErrorCode;
using fieldcrypt::KeyPair;
using fieldcrypt::Ledger;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitTamper = 3;
constexpr int kExitRotation = 4;

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::TamperDetected:
        return kExitTamper;
    case ErrorCode::RotationGenerationFailure:
        return kExitRotation;
    default:
        return kExitValidation;
    }
}

// ciphertext symbols include spaces and quotes, so human output is printed
// as an escaped, quoted string (JSON string syntax) to stay unambiguous
std::string quoted(const std::string& text) {
    return json(text).dump();
}

struct CommonPaths {
    std::string ledger = "ledger.jsonl";
    std::string settings = "settings.txt";
};

// --params beats the settings file; a missing settings file falls back to
// the demo tuple 0,0,1,1,1,1
CryptoParams resolve_params(const std::string& params_flag, const std::string& settings_path) {
    if (!params_flag.empty()) {
        return fieldcrypt::parse_settings(params_flag);
    }
    if (std::filesystem::exists(settings_path)) {
        return fieldcrypt::load_settings_file(settings_path);
    }
    return CryptoParams{};
}

KeyPair keys_from_flags(const std::string& date, const std::string& time,
                        const std::string& cashier, const CryptoParams& params) {
    return fieldcrypt::derive_keys(fieldcrypt::parse_record_date(date),
                                   fieldcrypt::parse_record_time(time),
                                   fieldcrypt::validate_cashier_id(cashier), params.z);
}

json params_to_json(const CryptoParams& p) {
    return json{{"p", p.p}, {"q", p.q}, {"m", p.m}, {"n", p.n}, {"z", p.z}, {"w", p.w}};
}

int run(int argc, char** argv) {
    CLI::App app{"Field-level amount encryption with keys derived from sibling record fields"};
    app.require_subcommand(1);
    bool json_output = false;
    app.add_flag("--json", json_output, "emit machine-readable JSON instead of text");

    CommonPaths paths;

    // encrypt
    auto* encrypt_cmd = app.add_subcommand("encrypt", "encrypt one amount");
    std::string enc_amount, enc_date, enc_time, enc_cashier, enc_params;
    encrypt_cmd->add_option("--amount", enc_amount, "amount as digits.dd")->required();
    encrypt_cmd->add_option("--date", enc_date, "record date dd/mm/yy or dd-mm-yy")->required();
    encrypt_cmd->add_option("--time", enc_time, "record time HH:MM:SS")->required();
    encrypt_cmd->add_option("--cashier", enc_cashier, "cashier id (A-Z, 0-9)")->required();
    encrypt_cmd->add_option("--params", enc_params, "parameter tuple p,q,m,n,z,w");
    encrypt_cmd->add_option("--settings", paths.settings, "settings file path")
        ->envname("FIELDCRYPT_SETTINGS");

    // decrypt
    auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt one ciphertext");
    std::string dec_ct, dec_date, dec_time, dec_cashier, dec_params;
    decrypt_cmd->add_option("--ciphertext", dec_ct, "ciphertext symbols")->required();
    decrypt_cmd->add_option("--date", dec_date, "record date")->required();
    decrypt_cmd->add_option("--time", dec_time, "record time")->required();
    decrypt_cmd->add_option("--cashier", dec_cashier, "cashier id")->required();
    decrypt_cmd->add_option("--params", dec_params, "parameter tuple p,q,m,n,z,w");
    decrypt_cmd->add_option("--settings", paths.settings, "settings file path")
        ->envname("FIELDCRYPT_SETTINGS");

    // add
    auto* add_cmd = app.add_subcommand("add", "encrypt and append a payment record");
    std::string add_stdid, add_date, add_time, add_cashier, add_amount;
    std::string add_term, add_acyear, add_receipt, add_mode, add_params;
    add_cmd->add_option("--ledger", paths.ledger, "ledger file path")->envname("FIELDCRYPT_LEDGER");
    add_cmd->add_option("--settings", paths.settings, "settings file path")
        ->envname("FIELDCRYPT_SETTINGS");
    add_cmd->add_option("--params", add_params, "parameter tuple p,q,m,n,z,w");
    add_cmd->add_option("--stdid", add_stdid, "student id")->required();
    add_cmd->add_option("--date", add_date, "record date")->required();
    add_cmd->add_option("--time", add_time, "record time")->required();
    add_cmd->add_option("--cashier", add_cashier, "cashier id")->required();
    add_cmd->add_option("--amount", add_amount, "amount as digits.dd")->required();
    add_cmd->add_option("--term", add_term, "term label");
    add_cmd->add_option("--acyear", add_acyear, "academic year label");
    add_cmd->add_option("--receipt", add_receipt, "receipt number");
    add_cmd->add_option("--mode", add_mode, "payment mode");

    // show
    auto* show_cmd = app.add_subcommand("show", "decrypt one stored record");
    std::string show_stdid, show_date, show_time, show_params;
    show_cmd->add_option("--ledger", paths.ledger, "ledger file path")->envname("FIELDCRYPT_LEDGER");
    show_cmd->add_option("--settings", paths.settings, "settings file path")
        ->envname("FIELDCRYPT_SETTINGS");
    show_cmd->add_option("--params", show_params, "parameter tuple p,q,m,n,z,w");
    show_cmd->add_option("--stdid", show_stdid, "student id")->required();
    show_cmd->add_option("--date", show_date, "record date")->required();
    show_cmd->add_option("--time", show_time, "record time")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "integrity-check every record");
    std::string verify_params;
    verify_cmd->add_option("--ledger", paths.ledger, "ledger file path")
        ->envname("FIELDCRYPT_LEDGER");
    verify_cmd->add_option("--settings", paths.settings, "settings file path")
        ->envname("FIELDCRYPT_SETTINGS");
    verify_cmd->add_option("--params", verify_params, "parameter tuple p,q,m,n,z,w");

    // rotate
    auto* rotate_cmd = app.add_subcommand("rotate", "generate new parameters and re-encrypt");
    std::optional<std::uint64_t> rotate_seed;
    rotate_cmd->add_option("--seed", rotate_seed, "seed for the parameter generator");
    rotate_cmd->add_option("--ledger", paths.ledger, "ledger file path")
        ->envname("FIELDCRYPT_LEDGER");
    rotate_cmd->add_option("--settings", paths.settings, "settings file path")
        ->envname("FIELDCRYPT_SETTINGS");

    // schemes show
    auto* schemes_cmd = app.add_subcommand("schemes", "inspect the built-in coding schemes");
    auto* schemes_show = schemes_cmd->add_subcommand("show", "dump one scheme as a table");
    std::string scheme_kind;
    int scheme_id = 1;
    schemes_show->add_option("--kind", scheme_kind, "k2 or pairs")
        ->required()
        ->check(CLI::IsMember({"k2", "pairs"}));
    schemes_show->add_option("--id", scheme_id, "scheme id 1..15")->required();

    // attack
    auto* attack_cmd = app.add_subcommand("attack", "cryptanalysis drivers");
    auto* attack_recover = attack_cmd->add_subcommand("recover", "known-plaintext parameter recovery");
    std::string obs_path, bounds_spec;
    unsigned attack_threads = 0;
    attack_recover->add_option("--obs", obs_path, "observations file (JSON lines)")->required();
    attack_recover->add_option("--bounds", bounds_spec,
                               "six ranges lo-hi in p,q,m,n,z,w order");
    attack_recover->add_option("--threads", attack_threads, "worker threads (0 = auto)");
    auto* attack_space = attack_cmd->add_subcommand("space", "pair-grouping search-space counts");
    int space_n = 0;
    attack_space->add_option("--n", space_n, "padded digit-string length (even)")->required();
    auto* attack_tamper = attack_cmd->add_subcommand("tamper", "tamper-detection rate measurement");
    std::uint64_t tamper_trials = 0;
    std::uint64_t tamper_seed = 0;
    std::string tamper_target = "integer";
    attack_tamper->add_option("--trials", tamper_trials, "number of trials")->required();
    attack_tamper->add_option("--seed", tamper_seed, "rng seed")->required();
    attack_tamper->add_option("--target", tamper_target, "integer or fraction region")
        ->check(CLI::IsMember({"integer", "fraction"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and friends exit 0; every real parse problem is a
        // validation error
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    if (encrypt_cmd->parsed()) {
        const CryptoParams params = resolve_params(enc_params, paths.settings);
        const Amount amount = fieldcrypt::parse_amount(enc_amount);
        const KeyPair keys = keys_from_flags(enc_date, enc_time, enc_cashier, params);
        const auto trace = fieldcrypt::encrypt_amount_traced(amount, keys, params);
        if (json_output) {
            json out{{"ciphertext", trace.ciphertext},
                     {"k1", keys.k1},
                     {"k2", keys.k2},
                     {"cipher1", trace.cipher1},
                     {"cipher2", trace.cipher2},
                     {"params", params_to_json(params)}};
            std::cout << out.dump() << "\n";
        } else {
            std::cout << quoted(trace.ciphertext) << "\n";
        }
        return kExitOk;
    }

    if (decrypt_cmd->parsed()) {
        const CryptoParams params = resolve_params(dec_params, paths.settings);
        const KeyPair keys = keys_from_flags(dec_date, dec_time, dec_cashier, params);
        const Amount amount = fieldcrypt::decrypt_amount(dec_ct, keys, params);
        if (json_output) {
            std::cout << json{{"amount", amount.to_text()}}.dump() << "\n";
        } else {
            std::cout << amount.to_text() << "\n";
        }
        return kExitOk;
    }

    if (add_cmd->parsed()) {
        const CryptoParams params = resolve_params(add_params, paths.settings);
        Ledger ledger = std::filesystem::exists(paths.ledger)
                            ? fieldcrypt::load_ledger(paths.ledger)
                            : Ledger(paths.ledger);
        const Amount amount = fieldcrypt::parse_amount(add_amount);
        const auto& record =
            fieldcrypt::add_payment(ledger, add_stdid, add_date, add_time, add_term,
                                    add_acyear, add_receipt, add_mode, add_cashier,
                                    amount, params);
        if (json_output) {
            std::cout << json{{"stdid", record.stdid},
                              {"date", record.date},
                              {"time", record.time},
                              {"ciphertext", record.amount}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "stored " << record.stdid << " " << record.date << " "
                      << record.time << " amount " << quoted(record.amount) << "\n";
        }
        return kExitOk;
    }

    if (show_cmd->parsed()) {
        const CryptoParams params = resolve_params(show_params, paths.settings);
        const Ledger ledger = fieldcrypt::load_ledger(paths.ledger);
        const Amount amount =
            fieldcrypt::get_amount(ledger, show_stdid, show_date, show_time, params);
        if (json_output) {
            std::cout << json{{"amount", amount.to_text()}}.dump() << "\n";
        } else {
            std::cout << amount.to_text() << "\n";
        }
        return kExitOk;
    }

    if (verify_cmd->parsed()) {
        const CryptoParams params = resolve_params(verify_params, paths.settings);
        const Ledger ledger = fieldcrypt::load_ledger(paths.ledger);
        const auto report = fieldcrypt::verify_ledger(ledger, params);
        if (json_output) {
            json tampered = json::array();
            for (const auto& k : report.tampered) {
                tampered.push_back({{"stdid", k.stdid}, {"date", k.date}, {"time", k.time}});
            }
            json undecodable = json::array();
            for (const auto& k : report.undecodable) {
                undecodable.push_back({{"stdid", k.stdid}, {"date", k.date}, {"time", k.time}});
            }
            std::cout << json{{"ok", report.ok},
                              {"tampered", tampered},
                              {"undecodable", undecodable}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "ok " << report.ok << ", tampered " << report.tampered.size()
                      << ", undecodable " << report.undecodable.size() << "\n";
            for (const auto& k : report.tampered) {
                std::cout << "  tampered: " << k.to_text() << "\n";
            }
            for (const auto& k : report.undecodable) {
                std::cout << "  undecodable: " << k.to_text() << "\n";
            }
        }
        return report.clean() ? kExitOk : kExitTamper;
    }

    if (rotate_cmd->parsed()) {
        const CryptoParams old_params = fieldcrypt::load_settings_file(paths.settings);
        fieldcrypt::Rng rng(rotate_seed ? *rotate_seed : std::random_device{}());
        const CryptoParams new_params = fieldcrypt::next_params(old_params, rng);
        Ledger ledger = std::filesystem::exists(paths.ledger)
                            ? fieldcrypt::load_ledger(paths.ledger)
                            : Ledger(paths.ledger);
        const auto report =
            fieldcrypt::rotate_ledger(ledger, old_params, new_params, paths.settings);
        if (json_output) {
            json failures = json::array();
            for (const auto& f : report.failures) {
                failures.push_back({{"stdid", f.key.stdid},
                                    {"date", f.key.date},
                                    {"time", f.key.time},
                                    {"error", f.error}});
            }
            std::cout << json{{"committed", report.committed()},
                              {"records_processed", report.records_processed},
                              {"old_params", params_to_json(report.old_params)},
                              {"new_params", params_to_json(report.new_params)},
                              {"failures", failures}}
                             .dump()
                      << "\n";
        } else {
            if (report.committed()) {
                std::cout << "rotated " << report.records_processed << " records to "
                          << fieldcrypt::serialize_settings(report.new_params) << "\n";
            } else {
                std::cout << "rotation aborted after " << report.records_processed
                          << " records\n";
                for (const auto& f : report.failures) {
                    std::cout << "  " << f.key.to_text() << ": " << f.error << "\n";
                }
            }
        }
        return report.committed() ? kExitOk : kExitRotation;
    }

    if (schemes_show->parsed()) {
        if (scheme_kind == "k2") {
            const auto& scheme = fieldcrypt::char_value_scheme(scheme_id);
            if (json_output) {
                json entries;
                for (int i = 0; i < fieldcrypt::kCharAlphabetSize; ++i) {
                    const char c = fieldcrypt::CharValueScheme::alphabet_char(i);
                    entries[std::string(1, c)] = scheme.value(c);
                }
                std::cout << json{{"kind", "k2"}, {"id", scheme_id}, {"entries", entries}}.dump()
                          << "\n";
            } else {
                for (int i = 0; i < fieldcrypt::kCharAlphabetSize; ++i) {
                    const char c = fieldcrypt::CharValueScheme::alphabet_char(i);
                    std::cout << c << "\t" << scheme.value(c) << "\n";
                }
            }
        } else {
            const auto& scheme = fieldcrypt::pair_symbol_scheme(scheme_id);
            if (json_output) {
                json entries;
                for (int v = 0; v < fieldcrypt::kPairCount; ++v) {
                    char pair[3] = {static_cast<char>('0' + v / 10),
                                    static_cast<char>('0' + v % 10), 0};
                    entries[pair] = fieldcrypt::utf8::encode(scheme.symbol(v));
                }
                std::cout << json{{"kind", "pairs"}, {"id", scheme_id}, {"entries", entries}}.dump()
                          << "\n";
            } else {
                for (int v = 0; v < fieldcrypt::kPairCount; ++v) {
                    std::cout << (v / 10) << (v % 10) << "\t"
                              << quoted(fieldcrypt::utf8::encode(scheme.symbol(v))) << "\n";
                }
            }
        }
        return kExitOk;
    }

    if (attack_recover->parsed()) {
        std::ifstream in(obs_path, std::ios::binary);
        if (!in) {
            throw Error(ErrorCode::IoError, "cannot open observations file " + obs_path);
        }
        std::vector<fieldcrypt::Observation> observations;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::MalformedRecordLine,
                            "line " + std::to_string(line_no) + ": " + e.what());
            }
            fieldcrypt::Observation obs;
            obs.amount = fieldcrypt::parse_amount(j.at("amount").get<std::string>());
            obs.ciphertext = j.at("ciphertext").get<std::string>();
            obs.date = j.at("date").get<std::string>();
            obs.time = j.at("time").get<std::string>();
            obs.cashierid = j.at("cashierid").get<std::string>();
            observations.push_back(std::move(obs));
        }
        const fieldcrypt::ParamBounds bounds = bounds_spec.empty()
                                     ? fieldcrypt::ParamBounds{}
                                     : fieldcrypt::parse_bounds(bounds_spec);
        const auto result = fieldcrypt::recover_params(observations, bounds, attack_threads);
        if (json_output) {
            json tuples = json::array();
            for (const auto& t : result.tuples) {
                tuples.push_back(fieldcrypt::serialize_settings(t));
            }
            std::cout << json{{"space_size", result.space_size},
                              {"candidates", result.tuples.size()},
                              {"tuples", tuples}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "searched " << result.space_size << " tuples, "
                      << result.tuples.size() << " candidate(s)\n";
            constexpr std::size_t kListCap = 50;
            for (std::size_t i = 0; i < result.tuples.size() && i < kListCap; ++i) {
                std::cout << "  " << fieldcrypt::serialize_settings(result.tuples[i]) << "\n";
            }
            if (result.tuples.size() > kListCap) {
                std::cout << "  ... and " << result.tuples.size() - kListCap << " more\n";
            }
        }
        return kExitOk;
    }

    if (attack_space->parsed()) {
        const auto space = fieldcrypt::grouping_space(space_n);
        if (json_output) {
            std::cout << json{{"n", space_n},
                              {"ungrouped", space.ungrouped_count.str()},
                              {"grouped", space.grouped_count.str()}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "ungrouped 10^" << space_n << " = " << space.ungrouped_count << "\n";
            std::cout << "grouped 100^" << space_n / 2 << " = " << space.grouped_count << "\n";
        }
        return kExitOk;
    }

    if (attack_tamper->parsed()) {
        fieldcrypt::Rng rng(tamper_seed);
        fieldcrypt::TamperTrialConfig config;
        config.target = tamper_target == "fraction" ? fieldcrypt::TamperTarget::fraction
                                                    : fieldcrypt::TamperTarget::integer_region;
        const auto stats = fieldcrypt::tamper_detection_rate(tamper_trials, rng, config);
        if (json_output) {
            std::cout << json{{"trials", stats.trials},
                              {"detected", stats.detected},
                              {"silent_same_amount", stats.silent_same_amount},
                              {"silent_wrong_amount", stats.silent_wrong_amount},
                              {"rate", stats.rate()}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "trials " << stats.trials << ": detected " << stats.detected
                      << ", silent wrong amount " << stats.silent_wrong_amount
                      << ", silent same amount " << stats.silent_same_amount << ", rate "
                      << stats.rate() << "\n";
        }
        return kExitOk;
    }

    std::cerr << app.help() << "\n";
    return kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
