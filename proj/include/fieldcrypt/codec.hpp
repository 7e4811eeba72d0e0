#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

namespace fieldcrypt {

inline constexpr int kSchemeCount = 15;
inline constexpr int kCharAlphabetSize = 36; // A..Z then 0..9
inline constexpr int kPairCount = 100;       // "00".."99"

enum class SchemeKind { char_value, pair_symbol };

/// Assigns a numeric value to each character of the CashierID alphabet
/// {A..Z, 0..9}. Scheme 1 is the built-in base table; scheme k adds a
/// 10*(k-1) offset so every scheme keeps values >= 10 and pairwise distinct.
class CharValueScheme {
public:
    int id() const noexcept { return id_; }

    /// Value for one alphabet character. Throws Error(CashierIdCharError)
    /// for characters outside {A..Z, 0..9}.
    std::int64_t value(char c) const;

    /// Alphabet character at position i (A..Z followed by 0..9).
    static char alphabet_char(int i);

private:
    friend CharValueScheme build_char_value_scheme(int id);
    CharValueScheme() = default;

    int id_ = 0;
    std::array<std::int64_t, kCharAlphabetSize> values_{};
};

/// Bijection between the 100 two-digit strings "00".."99" and 100 printable
/// symbols. Scheme 1 is the canonical codebook below; scheme k rotates it by
/// 7*(k-1) positions.
class PairSymbolScheme {
public:
    int id() const noexcept { return id_; }

    /// Symbol for a pair value in [0, 99].
    char32_t symbol(int pair_value) const;

    /// Pair value for a symbol, or -1 when the symbol is not in the codebook.
    int value(char32_t symbol) const noexcept;

    /// forward("07") -> "(" as UTF-8; pair must be exactly two digits.
    std::string forward(std::string_view pair) const;

    /// reverse("(") -> "07"; symbol must be exactly one codebook symbol.
    std::string reverse(std::string_view symbol) const;

private:
    friend PairSymbolScheme build_pair_symbol_scheme(int id);
    PairSymbolScheme() = default;

    int id_ = 0;
    std::array<char32_t, kPairCount> forward_{};
    std::unordered_map<char32_t, int> reverse_;
};

/// The canonical scheme-1 codebook, indexed by pair value.
const std::array<char32_t, kPairCount>& canonical_pair_alphabet();

CharValueScheme build_char_value_scheme(int id);
PairSymbolScheme build_pair_symbol_scheme(int id);

/// Shared immutable scheme instances (the schemes are fixed data; building
/// them per call would be wasted work in sweep loops).
const CharValueScheme& char_value_scheme(int id);
const PairSymbolScheme& pair_symbol_scheme(int id);

/// Encodes an even-length digit string two digits at a time.
std::string encode_pairs(const PairSymbolScheme& scheme, std::string_view digits);

/// Inverse of encode_pairs; returns two digits per symbol.
std::string decode_pairs(const PairSymbolScheme& scheme, std::string_view symbols);

} // namespace fieldcrypt
