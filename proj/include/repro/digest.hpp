#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace repro {

/// Incremental FNV-1a 64-bit hasher. Used for observation digests, so the
/// value must be stable across runs and platforms; never substitute
/// std::hash here.
class DigestWriter {
public:
  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

  void byte(std::uint8_t b) {
    hash_ ^= b;
    hash_ *= kPrime;
  }

  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) byte(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void boolean(bool b) { byte(b ? 1 : 0); }

  // Length-prefixed so that adjacent fields cannot alias.
  void str(std::string_view s) {
    u64(s.size());
    for (char c : s) byte(static_cast<std::uint8_t>(c));
  }

  void bytes(const std::uint8_t* data, std::size_t n) {
    u64(n);
    for (std::size_t i = 0; i < n; ++i) byte(data[i]);
  }

  std::uint64_t value() const { return hash_; }

private:
  std::uint64_t hash_ = kOffset;
};

/// Stand-alone FNV-1a over a string, for rule keys and seeded noise.
inline std::uint64_t fnv1a(std::string_view s,
                           std::uint64_t seed = DigestWriter::kOffset) {
  std::uint64_t h = seed;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= DigestWriter::kPrime;
  }
  return h;
}

std::string digest_hex(std::uint64_t digest);
std::uint64_t parse_digest_hex(const std::string& text);

}  // namespace repro
