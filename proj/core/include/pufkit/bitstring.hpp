#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pufkit/rng.hpp"

namespace pufkit {

// Fixed-length binary string. Length is part of the value: operations on
// mismatched lengths throw instead of truncating.
class BitString {
 public:
  BitString() = default;
  explicit BitString(size_t len) : bits_(len, 0) {}

  static BitString from_string(const std::string& text);   // "0101..."
  // Unpacks nbits from MSB-first hex; pad bits beyond nbits must be zero.
  static BitString from_hex(const std::string& hex, size_t nbits);
  static BitString random(size_t len, Rng& rng);

  size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  int bit(size_t i) const;
  void set_bit(size_t i, int value);
  void flip_bit(size_t i);

  size_t weight() const;

  std::string to_string() const;
  std::string to_hex() const;  // MSB-first, zero-padded to a nibble boundary

  BitString operator^(const BitString& other) const;
  bool operator==(const BitString& other) const = default;
  bool operator<(const BitString& other) const;  // lexicographic, for map keys

  // Sub-range [begin, begin+len).
  BitString slice(size_t begin, size_t len) const;

 private:
  std::vector<uint8_t> bits_;  // one byte per bit, values 0/1
};

BitString concat(const BitString& a, const BitString& b);

size_t hamming_weight(const BitString& s);
// Throws on length mismatch.
size_t hamming_distance(const BitString& a, const BitString& b);

}  // namespace pufkit
