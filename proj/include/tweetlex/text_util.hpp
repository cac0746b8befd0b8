#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tweetlex {

// Minimal UTF-8 handling: decoding tolerates malformed bytes by passing each
// one through as its own codepoint, so dirty tweet text never throws.

std::vector<std::uint32_t> utf8_decode(const std::string& s);
std::string utf8_encode(const std::vector<std::uint32_t>& cps);
void utf8_append(std::string& out, std::uint32_t cp);

bool is_ascii_space(std::uint32_t cp);
bool is_punct_cp(std::uint32_t cp);  // ASCII punctuation + common Unicode quotes/dashes/ellipsis

inline std::uint32_t ascii_lower(std::uint32_t cp) {
  return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
}

std::string ascii_lower_copy(const std::string& s);

/// True if every codepoint of the (nonempty) string is punctuation.
bool is_pure_punct(const std::string& token);

/// Number of non-overlapping occurrences of needle in haystack.
std::size_t count_occurrences(const std::string& haystack, const std::string& needle);

}  // namespace tweetlex
