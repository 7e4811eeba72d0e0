#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "fieldcrypt/keys.hpp"

namespace fieldcrypt {

/// The rotating parameter tuple (p, q, m, n, z, w) plus the sign of the
/// second term and the intermediate width bound.
///
/// Valid tuples satisfy p,q in [0,4] with (p,q) != (0,0); m,n in [1,50]
/// with m != n and not (n^p == 1 and m^q == 1); z,w in [1,15]. The one
/// exception is the demo tuple (0,0,1,1,z,w), accepted for compatibility
/// with hand-worked material but never produced by the rotation generator.
struct CryptoParams {
    int p = 0;
    int q = 0;
    int m = 1;
    int n = 1;
    int z = 1;
    int w = 1;
    int sign = +1;
    std::int64_t width_bound = std::numeric_limits<std::int64_t>::max();

    bool is_demo_tuple() const noexcept { return p == 0 && q == 0 && m == 1 && n == 1; }

    friend bool operator==(const CryptoParams& a, const CryptoParams& b) noexcept {
        return a.p == b.p && a.q == b.q && a.m == b.m && a.n == b.n &&
               a.z == b.z && a.w == b.w && a.sign == b.sign;
    }
};

/// Throws Error(SettingsRangeError) if the tuple violates the invariants
/// above (demo tuple admitted).
void validate_params(const CryptoParams& params);

/// base^exponent for base in [1,50], exponent in [0,4]; at most 50^4.
std::int64_t coefficient(std::int64_t base, int exponent);

/// Prepends "0" when the digit string has odd length.
std::string pad_even(std::string_view digits);

/// Intermediate values of one encryption, exposed for inspection and tests.
struct EncryptionTrace {
    std::int64_t cipher1 = 0;      // n^p*K1*Ip + sign*m^q*K1
    std::int64_t cipher2 = 0;      // cipher1 + K2
    std::string padded_digits;     // decimal cipher2, padded to even length
    std::string cipher3;           // padded_digits pair-encoded under scheme w
    std::string cipher4;           // fraction pair-encoded under scheme w (one symbol)
    std::string ciphertext;        // cipher4 + cipher3
};

/// Encrypts one amount under the given keys and parameters. The ciphertext
/// is cipher4 (one fraction symbol) followed by cipher3 (the integer part).
std::string encrypt_amount(const Amount& amount, const KeyPair& keys,
                           const CryptoParams& params);

EncryptionTrace encrypt_amount_traced(const Amount& amount, const KeyPair& keys,
                                      const CryptoParams& params);

/// Inverts encrypt_amount and checks integrity: the recovered intermediate
/// must be a non-negative multiple of n^p*K1 after the key terms are
/// removed, otherwise Error(TamperDetected) is thrown.
Amount decrypt_amount(std::string_view ciphertext, const KeyPair& keys,
                      const CryptoParams& params);

} // namespace fieldcrypt
