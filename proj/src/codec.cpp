#include "fieldcrypt/codec.hpp"

#include "fieldcrypt/errors.hpp"
#include "fieldcrypt/utf8.hpp"

#include <cctype>
#include <vector>

namespace fieldcrypt {

namespace {

// Pair-value -> symbol codebook, scheme 1. Entries 75 ("¦") and 91 ("|") are
// this project's canonical choices; everything else is fixed data. The
// codebook spans the printable keyboard characters (including space at 88,
// quote at 94 and backslash at 90) plus £, € and three Greek letters, so
// ciphertext strings must always be stored quoted/escaped.
constexpr std::array<char32_t, kPairCount> kCanonicalAlphabet = {
    U'+', U'-', U'*', U'?', U'!', U',', U'[', U'(', U']', U')', // 00-09
    U'A', U'a', U'B', U'b', U'C', U'c', U'D', U'd', U'E', U'e', // 10-19
    U'F', U'f', U'G', U'g', U'H', U'h', U'I', U'i', U'J', U'j', // 20-29
    U'K', U'k', U'L', U'l', U'M', U'm', U'N', U'n', U'O', U'o', // 30-39
    U'P', U'p', U'Q', U'q', U'R', U'r', U'S', U's', U'T', U't', // 40-49
    U'U', U'u', U'V', U'v', U'W', U'w', U'X', U'x', U'Y', U'y', // 50-59
    U'Z', U'z', U'.', U'^', U'<', U'>', U'%', U'=', U'$', U'£', // 60-69
    U'_', U'#', U'&', U'~', U'@', U'¦', U'`', U'1', U'2', U'3', // 70-79
    U'4', U'5', U'6', U'7', U'8', U'9', U'0', U';', U' ', U'/', // 80-89
    U'\\', U'|', U'{', U'}', U'"', U'\'', U'€', U'α', U'β', U'γ', // 90-99
};

// Base character values, scheme 1: A..Z -> 21..46, 0..9 -> 47..56.
std::int64_t base_char_value(int alphabet_index) {
    return alphabet_index < 26 ? 21 + alphabet_index : 47 + (alphabet_index - 26);
}

void check_scheme_id(int id) {
    if (id < 1 || id > kSchemeCount) {
        throw Error(ErrorCode::SchemeIdOutOfRange,
                    "scheme id " + std::to_string(id) + " not in [1, " +
                        std::to_string(kSchemeCount) + "]");
    }
}

int char_alphabet_index(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= '0' && c <= '9') return 26 + (c - '0');
    return -1;
}

} // namespace

const std::array<char32_t, kPairCount>& canonical_pair_alphabet() {
    return kCanonicalAlphabet;
}

char CharValueScheme::alphabet_char(int i) {
    return i < 26 ? static_cast<char>('A' + i) : static_cast<char>('0' + (i - 26));
}

std::int64_t CharValueScheme::value(char c) const {
    const int idx = char_alphabet_index(c);
    if (idx < 0) {
        throw Error(ErrorCode::CashierIdCharError,
                    std::string("character '") + c + "' outside {A..Z, 0..9}");
    }
    return values_[static_cast<std::size_t>(idx)];
}

char32_t PairSymbolScheme::symbol(int pair_value) const {
    return forward_[static_cast<std::size_t>(pair_value)];
}

int PairSymbolScheme::value(char32_t symbol) const noexcept {
    const auto it = reverse_.find(symbol);
    return it == reverse_.end() ? -1 : it->second;
}

std::string PairSymbolScheme::forward(std::string_view pair) const {
    if (pair.size() != 2 || !std::isdigit(static_cast<unsigned char>(pair[0])) ||
        !std::isdigit(static_cast<unsigned char>(pair[1]))) {
        throw Error(ErrorCode::InvalidDigit, "pair must be exactly two digits");
    }
    const int v = (pair[0] - '0') * 10 + (pair[1] - '0');
    return utf8::encode(symbol(v));
}

std::string PairSymbolScheme::reverse(std::string_view symbol_text) const {
    const std::u32string cps = utf8::decode(symbol_text);
    if (cps.size() != 1) {
        throw Error(ErrorCode::UnknownSymbol, "expected exactly one symbol");
    }
    const int v = value(cps[0]);
    if (v < 0) {
        throw Error(ErrorCode::UnknownSymbol,
                    "symbol \"" + std::string(symbol_text) + "\" not in codebook");
    }
    std::string out;
    out.push_back(static_cast<char>('0' + v / 10));
    out.push_back(static_cast<char>('0' + v % 10));
    return out;
}

CharValueScheme build_char_value_scheme(int id) {
    check_scheme_id(id);
    CharValueScheme scheme;
    scheme.id_ = id;
    for (int i = 0; i < kCharAlphabetSize; ++i) {
        scheme.values_[static_cast<std::size_t>(i)] =
            base_char_value(i) + 10 * (id - 1);
    }
    return scheme;
}

PairSymbolScheme build_pair_symbol_scheme(int id) {
    check_scheme_id(id);
    PairSymbolScheme scheme;
    scheme.id_ = id;
    const int offset = 7 * (id - 1);
    for (int v = 0; v < kPairCount; ++v) {
        const char32_t sym = kCanonicalAlphabet[static_cast<std::size_t>((v + offset) % kPairCount)];
        scheme.forward_[static_cast<std::size_t>(v)] = sym;
        scheme.reverse_.emplace(sym, v);
    }
    return scheme;
}

const CharValueScheme& char_value_scheme(int id) {
    check_scheme_id(id);
    static const auto schemes = [] {
        std::vector<CharValueScheme> all;
        all.reserve(kSchemeCount);
        for (int k = 1; k <= kSchemeCount; ++k) {
            all.push_back(build_char_value_scheme(k));
        }
        return all;
    }();
    return schemes[static_cast<std::size_t>(id - 1)];
}

const PairSymbolScheme& pair_symbol_scheme(int id) {
    check_scheme_id(id);
    static const auto schemes = [] {
        std::vector<PairSymbolScheme> all;
        all.reserve(kSchemeCount);
        for (int k = 1; k <= kSchemeCount; ++k) {
            all.push_back(build_pair_symbol_scheme(k));
        }
        return all;
    }();
    return schemes[static_cast<std::size_t>(id - 1)];
}

std::string encode_pairs(const PairSymbolScheme& scheme, std::string_view digits) {
    if (digits.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot encode an empty digit string");
    }
    if (digits.size() % 2 != 0) {
        throw Error(ErrorCode::OddLengthInput,
                    "digit string length " + std::to_string(digits.size()) + " is odd");
    }
    std::string out;
    out.reserve(digits.size()); // symbols are 1-3 bytes per pair
    for (std::size_t i = 0; i < digits.size(); i += 2) {
        const char hi = digits[i];
        const char lo = digits[i + 1];
        if (hi < '0' || hi > '9' || lo < '0' || lo > '9') {
            throw Error(ErrorCode::InvalidDigit, "non-digit character in input");
        }
        utf8::append(out, scheme.symbol((hi - '0') * 10 + (lo - '0')));
    }
    return out;
}

std::string decode_pairs(const PairSymbolScheme& scheme, std::string_view symbols) {
    if (symbols.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot decode an empty symbol string");
    }
    const std::u32string cps = utf8::decode(symbols);
    std::string out;
    out.reserve(cps.size() * 2);
    for (const char32_t cp : cps) {
        const int v = scheme.value(cp);
        if (v < 0) {
            throw Error(ErrorCode::UnknownSymbol,
                        "symbol " + utf8::encode(cp) + " not in codebook");
        }
        out.push_back(static_cast<char>('0' + v / 10));
        out.push_back(static_cast<char>('0' + v % 10));
    }
    return out;
}

} // namespace fieldcrypt
