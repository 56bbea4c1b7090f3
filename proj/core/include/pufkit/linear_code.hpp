#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pufkit/bitstring.hpp"

namespace pufkit {

// Binary block code with bounded-distance decoding. decode_bounded returns
// the unique codeword within the given radius of the word when the decoder
// can certify one, and nullopt otherwise; radius is clamped to the code's
// correction capacity.
class LinearCode {
 public:
  virtual ~LinearCode() = default;

  virtual size_t block_length() const = 0;
  virtual size_t dimension() const = 0;
  virtual size_t min_distance() const = 0;  // design distance for BCH
  size_t max_correctable() const { return (min_distance() - 1) / 2; }

  virtual BitString encode(const BitString& message) const = 0;
  virtual std::optional<BitString> decode_bounded(const BitString& word,
                                                  size_t radius) const = 0;

  virtual std::string descriptor() const = 0;
};

class RepetitionCode : public LinearCode {
 public:
  explicit RepetitionCode(size_t block_length);

  size_t block_length() const override { return n_; }
  size_t dimension() const override { return 1; }
  size_t min_distance() const override { return n_; }
  BitString encode(const BitString& message) const override;
  std::optional<BitString> decode_bounded(const BitString& word,
                                          size_t radius) const override;
  std::string descriptor() const override { return "repetition"; }

 private:
  size_t n_;
};

// Trivial [n, n, 1] code: every word is a codeword, nothing is corrected.
// Used when the noise budget allows t = 0.
class IdentityCode : public LinearCode {
 public:
  explicit IdentityCode(size_t block_length);

  size_t block_length() const override { return n_; }
  size_t dimension() const override { return n_; }
  size_t min_distance() const override { return 1; }
  BitString encode(const BitString& message) const override;
  std::optional<BitString> decode_bounded(const BitString& word,
                                          size_t radius) const override;
  std::string descriptor() const override { return "identity"; }

 private:
  size_t n_;
};

// Primitive binary BCH code over GF(2^m), optionally shortened to a smaller
// block length by pinning high-order message positions to zero.
class BchCode : public LinearCode {
 public:
  // base_m: field degree (block 2^m - 1); design_t: target correction count;
  // block_length: transmitted length after shortening (== 2^m - 1 for none).
  BchCode(int base_m, size_t design_t, size_t block_length);

  size_t block_length() const override { return length_; }
  size_t dimension() const override { return k_short_; }
  size_t min_distance() const override { return 2 * t_ + 1; }
  BitString encode(const BitString& message) const override;
  std::optional<BitString> decode_bounded(const BitString& word,
                                          size_t radius) const override;
  std::string descriptor() const override;

 private:
  std::vector<int> syndromes(const std::vector<uint8_t>& poly) const;

  int m_;
  size_t n_;        // 2^m - 1
  size_t t_;
  size_t length_;   // shortened length
  size_t k_full_;
  size_t k_short_;
  std::vector<uint8_t> generator_;  // GF(2) coefficients, degree n_ - k_full_
  std::vector<int> gf_exp_, gf_log_;
};

// descriptor: "identity", "repetition", "hamming74", or "bch-t<T>"; block_len
// is the required codeword length (the outcome segment length of the extractor).
std::unique_ptr<LinearCode> make_code(const std::string& descriptor, size_t block_len);

}  // namespace pufkit
