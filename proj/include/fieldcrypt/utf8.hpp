#pragma once

#include <string>
#include <string_view>

namespace fieldcrypt::utf8 {

// Codebook symbols are Unicode scalar values; strings cross the public API
// as UTF-8 and are converted to code point sequences internally.

void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);

/// Decodes a UTF-8 string into code points. Throws Error(UnknownSymbol) on
/// malformed input.
std::u32string decode(std::string_view text);

std::size_t length(std::string_view text);

} // namespace fieldcrypt::utf8
