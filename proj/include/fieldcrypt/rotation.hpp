#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fieldcrypt/cipher.hpp"
#include "fieldcrypt/rng.hpp"
#include "fieldcrypt/store.hpp"

namespace fieldcrypt {

/// Parses the persisted settings string "p,q,m,n,z,w" (six comma-separated
/// integers, positional) and validates the tuple.
CryptoParams parse_settings(std::string_view s);

/// Inverse of parse_settings; emits "p,q,m,n,z,w" with no spaces.
std::string serialize_settings(const CryptoParams& params);

/// Settings file: the serialized string on a single line with a trailing
/// newline, UTF-8.
CryptoParams load_settings_file(const std::filesystem::path& path);
void save_settings_file(const std::filesystem::path& path, const CryptoParams& params);

/// Draws the next parameter tuple: p,q uniform in [0,4] rejecting (0,0);
/// n,m uniform in [1,50] rejecting n == m and n^p == m^q == 1; z,w uniform
/// in [1,15]; the whole tuple must differ from prev. Sign is always +1.
/// Throws Error(RotationGenerationFailure) after 10,000 rejected rounds.
CryptoParams next_params(const CryptoParams& prev, Rng& rng);

struct RotationFailure {
    RecordKey key;
    std::string error;
};

struct RotationReport {
    std::size_t records_processed = 0;
    CryptoParams old_params;
    CryptoParams new_params;
    std::vector<RotationFailure> failures;

    bool committed() const noexcept { return failures.empty(); }
};

struct RotateHooks {
    /// Called after each record is re-encrypted (before anything is
    /// written); a throw here aborts the rotation. Used by tests to inject
    /// mid-rotation failures.
    std::function<void(std::size_t records_done)> after_record;
};

/// Re-encrypts every record from old_params to new_params using each
/// record's own field-derived keys, then commits ledger and settings
/// together. The commit is all-or-nothing: on any failure the in-memory
/// ledger, the ledger file and the settings file are left untouched and the
/// report lists the offending records. Callers must hold exclusive access
/// to the ledger for the duration.
RotationReport rotate_ledger(Ledger& ledger, const CryptoParams& old_params,
                             const CryptoParams& new_params,
                             const std::filesystem::path& settings_path,
                             const RotateHooks& hooks = {});

} // namespace fieldcrypt
