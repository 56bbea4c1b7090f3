#include "pufkit/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace pufkit {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
}

}  // namespace

BitString BitString::from_string(const std::string& text) {
  BitString out(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '0') continue;
    if (text[i] == '1') {
      out.bits_[i] = 1;
    } else {
      throw std::invalid_argument("bit string must contain only 0/1");
    }
  }
  return out;
}

BitString BitString::from_hex(const std::string& hex, size_t nbits) {
  size_t need = (nbits + 3) / 4;
  if (hex.size() != need)
    throw std::invalid_argument("hex length does not match bit count");
  BitString out(nbits);
  for (size_t i = 0; i < hex.size(); ++i) {
    int v = hex_value(hex[i]);
    for (int b = 0; b < 4; ++b) {
      size_t pos = i * 4 + static_cast<size_t>(b);
      int bitval = (v >> (3 - b)) & 1;
      if (pos < nbits) {
        out.bits_[pos] = static_cast<uint8_t>(bitval);
      } else if (bitval != 0) {
        throw std::invalid_argument("nonzero pad bits in hex string");
      }
    }
  }
  return out;
}

BitString BitString::random(size_t len, Rng& rng) {
  BitString out(len);
  for (size_t i = 0; i < len; ++i) out.bits_[i] = static_cast<uint8_t>(rng.bit());
  return out;
}

int BitString::bit(size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("bit index out of range");
  return bits_[i];
}

void BitString::set_bit(size_t i, int value) {
  if (i >= bits_.size()) throw std::out_of_range("bit index out of range");
  if (value != 0 && value != 1) throw std::invalid_argument("bit value must be 0 or 1");
  bits_[i] = static_cast<uint8_t>(value);
}

void BitString::flip_bit(size_t i) {
  if (i >= bits_.size()) throw std::out_of_range("bit index out of range");
  bits_[i] ^= 1;
}

size_t BitString::weight() const {
  size_t w = 0;
  for (uint8_t b : bits_) w += b;
  return w;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s((bits_.size() + 3) / 4, '0');
  for (size_t i = 0; i < s.size(); ++i) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      size_t pos = i * 4 + static_cast<size_t>(b);
      v <<= 1;
      if (pos < bits_.size()) v |= bits_[pos];
    }
    s[i] = digits[v];
  }
  return s;
}

BitString BitString::operator^(const BitString& other) const {
  if (bits_.size() != other.bits_.size())
    throw std::invalid_argument("xor: length mismatch");
  BitString out(bits_.size());
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] ^ other.bits_[i];
  return out;
}

bool BitString::operator<(const BitString& other) const {
  return std::lexicographical_compare(bits_.begin(), bits_.end(),
                                      other.bits_.begin(), other.bits_.end());
}

BitString BitString::slice(size_t begin, size_t len) const {
  if (begin + len > bits_.size()) throw std::out_of_range("slice out of range");
  BitString out(len);
  std::copy(bits_.begin() + static_cast<std::ptrdiff_t>(begin),
            bits_.begin() + static_cast<std::ptrdiff_t>(begin + len),
            out.bits_.begin());
  return out;
}

BitString concat(const BitString& a, const BitString& b) {
  BitString out(a.size() + b.size());
  for (size_t i = 0; i < a.size(); ++i) out.set_bit(i, a.bit(i));
  for (size_t i = 0; i < b.size(); ++i) out.set_bit(a.size() + i, b.bit(i));
  return out;
}

size_t hamming_weight(const BitString& s) { return s.weight(); }

size_t hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  size_t d = 0;
  for (size_t i = 0; i < a.size(); ++i) d += static_cast<size_t>(a.bit(i) != b.bit(i));
  return d;
}

}  // namespace pufkit
