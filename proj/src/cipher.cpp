#include "fieldcrypt/cipher.hpp"

#include "fieldcrypt/codec.hpp"
#include "fieldcrypt/errors.hpp"
#include "fieldcrypt/utf8.hpp"

namespace fieldcrypt {

namespace {

using int128 = __int128;

void check_range(bool ok, const std::string& what) {
    if (!ok) {
        throw Error(ErrorCode::SettingsRangeError, what);
    }
}

std::int64_t parse_digits_bounded(std::string_view digits, std::int64_t bound) {
    // Values beyond the width bound cannot have been produced by encryption,
    // so overflow here is an integrity failure, not a formatting one.
    int128 value = 0;
    for (const char c : digits) {
        value = value * 10 + (c - '0');
        if (value > static_cast<int128>(bound)) {
            throw Error(ErrorCode::TamperDetected,
                        "decoded integer region exceeds the representable bound");
        }
    }
    return static_cast<std::int64_t>(value);
}

} // namespace

void validate_params(const CryptoParams& params) {
    check_range(params.p >= 0 && params.p <= 4, "p must be in [0, 4]");
    check_range(params.q >= 0 && params.q <= 4, "q must be in [0, 4]");
    check_range(params.m >= 1 && params.m <= 50, "m must be in [1, 50]");
    check_range(params.n >= 1 && params.n <= 50, "n must be in [1, 50]");
    check_range(params.z >= 1 && params.z <= kSchemeCount, "z must be in [1, 15]");
    check_range(params.w >= 1 && params.w <= kSchemeCount, "w must be in [1, 15]");
    check_range(params.sign == 1 || params.sign == -1, "sign must be +1 or -1");
    check_range(params.width_bound >= std::numeric_limits<std::int64_t>::max(),
                "width bound must cover 63 value bits");
    if (params.is_demo_tuple()) {
        return;
    }
    check_range(!(params.p == 0 && params.q == 0), "p and q must not both be 0");
    check_range(params.m != params.n, "m and n must differ");
    check_range(!(coefficient(params.n, params.p) == 1 && coefficient(params.m, params.q) == 1),
                "n^p and m^q must not both be 1");
}

std::int64_t coefficient(std::int64_t base, int exponent) {
    check_range(base >= 1 && base <= 50, "coefficient base must be in [1, 50]");
    check_range(exponent >= 0 && exponent <= 4, "coefficient exponent must be in [0, 4]");
    std::int64_t result = 1;
    for (int i = 0; i < exponent; ++i) {
        result *= base;
    }
    return result;
}

std::string pad_even(std::string_view digits) {
    if (digits.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot pad an empty digit string");
    }
    std::string out(digits);
    if (out.size() % 2 != 0) {
        out.insert(out.begin(), '0');
    }
    return out;
}

EncryptionTrace encrypt_amount_traced(const Amount& amount, const KeyPair& keys,
                                      const CryptoParams& params) {
    if (keys.k1 < 1) {
        throw Error(ErrorCode::DegenerateTimestamp, "K1 must be at least 1");
    }
    const std::int64_t np = coefficient(params.n, params.p);
    const std::int64_t mq = coefficient(params.m, params.q);
    const auto bound = static_cast<int128>(params.width_bound);

    const int128 c1 = static_cast<int128>(np) * keys.k1 * amount.integer_part +
                      static_cast<int128>(params.sign) * mq * keys.k1;
    if (c1 <= 0) {
        throw Error(ErrorCode::NegativeIntermediate,
                    "cipher1 is not positive for amount " + amount.to_text());
    }
    if (c1 > bound) {
        throw Error(ErrorCode::AmountTooLarge,
                    "cipher1 exceeds the representable bound for amount " + amount.to_text());
    }
    const int128 c2 = c1 + keys.k2;
    if (c2 > bound) {
        throw Error(ErrorCode::AmountTooLarge,
                    "cipher2 exceeds the representable bound for amount " + amount.to_text());
    }

    EncryptionTrace trace;
    trace.cipher1 = static_cast<std::int64_t>(c1);
    trace.cipher2 = static_cast<std::int64_t>(c2);
    trace.padded_digits = pad_even(std::to_string(trace.cipher2));

    const PairSymbolScheme& pairs = pair_symbol_scheme(params.w);
    trace.cipher3 = encode_pairs(pairs, trace.padded_digits);
    trace.cipher4 = encode_pairs(pairs, amount.fraction_part);
    trace.ciphertext = trace.cipher4 + trace.cipher3;
    return trace;
}

std::string encrypt_amount(const Amount& amount, const KeyPair& keys,
                           const CryptoParams& params) {
    return encrypt_amount_traced(amount, keys, params).ciphertext;
}

Amount decrypt_amount(std::string_view ciphertext, const KeyPair& keys,
                      const CryptoParams& params) {
    const std::u32string cps = utf8::decode(ciphertext);
    if (cps.size() < 2) {
        throw Error(ErrorCode::CiphertextTooShort,
                    "ciphertext must hold a fraction symbol plus at least one integer symbol");
    }
    if (keys.k1 < 1) {
        throw Error(ErrorCode::DegenerateTimestamp, "K1 must be at least 1");
    }
    const PairSymbolScheme& pairs = pair_symbol_scheme(params.w);

    const int frac_value = pairs.value(cps[0]);
    if (frac_value < 0) {
        throw Error(ErrorCode::UnknownSymbol, "fraction symbol not in codebook");
    }
    std::string fraction;
    fraction.push_back(static_cast<char>('0' + frac_value / 10));
    fraction.push_back(static_cast<char>('0' + frac_value % 10));

    std::string digits;
    digits.reserve((cps.size() - 1) * 2);
    for (std::size_t i = 1; i < cps.size(); ++i) {
        const int v = pairs.value(cps[i]);
        if (v < 0) {
            throw Error(ErrorCode::UnknownSymbol,
                        "symbol " + utf8::encode(cps[i]) + " not in codebook");
        }
        digits.push_back(static_cast<char>('0' + v / 10));
        digits.push_back(static_cast<char>('0' + v % 10));
    }

    const std::int64_t x = parse_digits_bounded(digits, params.width_bound);
    const std::int64_t y = x - keys.k2;
    if (y <= 0) {
        throw Error(ErrorCode::TamperDetected, "integer region underflows K2");
    }
    const std::int64_t np = coefficient(params.n, params.p);
    const std::int64_t mq = coefficient(params.m, params.q);
    // With sign = -1 the legitimate value of d = n^p*K1*Ip may sit above the
    // int64 range even though cipher1 was in range, so widen before dividing.
    const int128 d = static_cast<int128>(y) - static_cast<int128>(params.sign) * mq * keys.k1;
    if (d < 0) {
        throw Error(ErrorCode::TamperDetected, "integer region underflows the K1 term");
    }
    const std::int64_t divisor = np * keys.k1;
    if (d % divisor != 0) {
        throw Error(ErrorCode::TamperDetected,
                    "stored value is not a multiple of n^p*K1; the record has been altered");
    }
    const int128 ip = d / divisor;
    if (ip > std::numeric_limits<std::int64_t>::max()) {
        throw Error(ErrorCode::TamperDetected, "recovered integer part exceeds the amount range");
    }
    return Amount{static_cast<std::int64_t>(ip), fraction};
}

} // namespace fieldcrypt
