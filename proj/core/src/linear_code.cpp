#include "pufkit/linear_code.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pufkit {

RepetitionCode::RepetitionCode(size_t block_length) : n_(block_length) {
  if (n_ == 0 || n_ % 2 == 0)
    throw std::invalid_argument("repetition code: block length must be odd");
}

BitString RepetitionCode::encode(const BitString& message) const {
  if (message.size() != 1)
    throw std::invalid_argument("repetition code: message must be one bit");
  BitString out(n_);
  if (message.bit(0))
    for (size_t i = 0; i < n_; ++i) out.set_bit(i, 1);
  return out;
}

std::optional<BitString> RepetitionCode::decode_bounded(const BitString& word,
                                                        size_t radius) const {
  if (word.size() != n_)
    throw std::invalid_argument("repetition code: word length mismatch");
  radius = std::min(radius, max_correctable());
  size_t w = word.weight();
  int majority = w * 2 > n_ ? 1 : 0;
  size_t errors = majority ? n_ - w : w;
  if (errors > radius) return std::nullopt;
  BitString cw(n_);
  if (majority)
    for (size_t i = 0; i < n_; ++i) cw.set_bit(i, 1);
  return cw;
}

IdentityCode::IdentityCode(size_t block_length) : n_(block_length) {
  if (n_ == 0) throw std::invalid_argument("identity code: block length must be positive");
}

BitString IdentityCode::encode(const BitString& message) const {
  if (message.size() != n_)
    throw std::invalid_argument("identity code: message length mismatch");
  return message;
}

std::optional<BitString> IdentityCode::decode_bounded(const BitString& word,
                                                      size_t) const {
  if (word.size() != n_)
    throw std::invalid_argument("identity code: word length mismatch");
  return word;
}

namespace {

// primitive polynomials for GF(2^m), bitmask includes the x^m term
int primitive_poly(int m) {
  switch (m) {
    case 3: return 0x0b;
    case 4: return 0x13;
    case 5: return 0x25;
    case 6: return 0x43;
    case 7: return 0x89;
    case 8: return 0x11d;
    case 9: return 0x211;
    case 10: return 0x409;
    default:
      throw std::invalid_argument("bch: field degree outside 3..10");
  }
}

}  // namespace

BchCode::BchCode(int base_m, size_t design_t, size_t block_length)
    : m_(base_m), n_((1u << base_m) - 1), t_(design_t), length_(block_length) {
  if (t_ == 0) throw std::invalid_argument("bch: design t must be positive");
  if (length_ == 0 || length_ > n_)
    throw std::invalid_argument("bch: block length outside (0, 2^m - 1]");

  // GF(2^m) log/antilog tables
  int prim = primitive_poly(m_);
  gf_exp_.assign(2 * n_, 0);
  gf_log_.assign(n_ + 1, -1);
  int v = 1;
  for (size_t i = 0; i < n_; ++i) {
    gf_exp_[i] = v;
    gf_log_[v] = static_cast<int>(i);
    v <<= 1;
    if (v & (1 << m_)) v ^= prim;
  }
  for (size_t i = n_; i < 2 * n_; ++i) gf_exp_[i] = gf_exp_[i - n_];

  // generator = lcm of minimal polynomials of alpha^1 .. alpha^{2t};
  // minimal polynomials come from cyclotomic cosets {i*2^j mod n}.
  std::set<int> covered;
  std::vector<uint8_t> gen{1};
  for (size_t i = 1; i <= 2 * t_; ++i) {
    if (covered.count(static_cast<int>(i))) continue;
    std::vector<int> coset;
    int c = static_cast<int>(i);
    do {
      coset.push_back(c);
      covered.insert(c);
      c = static_cast<int>((2 * static_cast<size_t>(c)) % n_);
    } while (c != static_cast<int>(i));
    // minimal polynomial: product of (x - alpha^k) over the coset, computed
    // with GF(2^m) coefficients; the result has 0/1 coefficients.
    std::vector<int> mp{1};
    for (int k : coset) {
      std::vector<int> next(mp.size() + 1, 0);
      int root = gf_exp_[static_cast<size_t>(k)];
      for (size_t d = 0; d < mp.size(); ++d) {
        next[d + 1] ^= mp[d];  // x * mp
        if (mp[d] != 0)
          next[d] ^= gf_exp_[(gf_log_[mp[d]] + gf_log_[root]) % static_cast<int>(n_)];
      }
      mp = std::move(next);
    }
    std::vector<uint8_t> gen_next(gen.size() + mp.size() - 1, 0);
    for (size_t a = 0; a < gen.size(); ++a) {
      if (!gen[a]) continue;
      for (size_t b = 0; b < mp.size(); ++b) {
        if (mp[b] == 0) continue;
        if (mp[b] != 1) throw std::logic_error("bch: minimal polynomial not binary");
        gen_next[a + b] ^= 1;
      }
    }
    gen = std::move(gen_next);
  }
  generator_ = std::move(gen);

  size_t parity = generator_.size() - 1;
  if (parity >= n_) throw std::invalid_argument("bch: degenerate parameters");
  k_full_ = n_ - parity;
  size_t removed = n_ - length_;
  if (removed >= k_full_)
    throw std::invalid_argument("bch: shortening leaves no message bits");
  k_short_ = k_full_ - removed;
}

std::string BchCode::descriptor() const { return "bch-t" + std::to_string(t_); }

BitString BchCode::encode(const BitString& message) const {
  if (message.size() != k_short_)
    throw std::invalid_argument("bch: message length mismatch");
  size_t parity = n_ - k_full_;
  // systematic: message at positions parity..parity+k_short-1 (higher message
  // positions are the shortened zeros), remainder of x^{parity} m(x) below.
  std::vector<uint8_t> reg(n_, 0);
  for (size_t i = 0; i < k_short_; ++i)
    reg[parity + i] = static_cast<uint8_t>(message.bit(i));
  // long division by the generator
  std::vector<uint8_t> rem(reg);
  for (size_t d = n_; d-- >= generator_.size();) {
    if (!rem[d]) {
      if (d == 0) break;
      continue;
    }
    size_t shift = d - (generator_.size() - 1);
    for (size_t g = 0; g < generator_.size(); ++g)
      rem[shift + g] ^= generator_[g];
    if (d == 0) break;
  }
  BitString out(length_);
  for (size_t i = 0; i < parity; ++i) out.set_bit(i, rem[i]);
  for (size_t i = 0; i < k_short_; ++i)
    out.set_bit(parity + i, message.bit(i));
  return out;
}

std::vector<int> BchCode::syndromes(const std::vector<uint8_t>& poly) const {
  std::vector<int> s(2 * t_ + 1, 0);
  for (size_t j = 1; j <= 2 * t_; ++j) {
    int acc = 0;
    for (size_t i = 0; i < poly.size(); ++i)
      if (poly[i]) acc ^= gf_exp_[(i * j) % n_];
    s[j] = acc;
  }
  return s;
}

std::optional<BitString> BchCode::decode_bounded(const BitString& word,
                                                 size_t radius) const {
  if (word.size() != length_)
    throw std::invalid_argument("bch: word length mismatch");
  radius = std::min(radius, t_);

  std::vector<uint8_t> r(n_, 0);
  for (size_t i = 0; i < length_; ++i) r[i] = static_cast<uint8_t>(word.bit(i));

  std::vector<int> synd = syndromes(r);
  bool clean = true;
  for (size_t j = 1; j <= 2 * t_; ++j)
    if (synd[j] != 0) clean = false;
  if (clean) return word;
  if (radius == 0) return std::nullopt;

  // Berlekamp-Massey for the error locator sigma(x) over GF(2^m)
  auto gf_mul = [&](int a, int b) -> int {
    if (a == 0 || b == 0) return 0;
    return gf_exp_[(gf_log_[a] + gf_log_[b]) % static_cast<int>(n_)];
  };
  auto gf_div = [&](int a, int b) -> int {
    if (a == 0) return 0;
    int e = (gf_log_[a] - gf_log_[b]) % static_cast<int>(n_);
    if (e < 0) e += static_cast<int>(n_);
    return gf_exp_[e];
  };

  std::vector<int> sigma{1}, prev{1};
  int L = 0, shift = 1, prev_disc = 1;
  for (size_t step = 0; step < 2 * t_; ++step) {
    int disc = synd[step + 1];
    for (int j = 1; j <= L && j < static_cast<int>(sigma.size()); ++j)
      disc ^= gf_mul(sigma[static_cast<size_t>(j)], synd[step + 1 - static_cast<size_t>(j)]);
    if (disc == 0) {
      ++shift;
      continue;
    }
    std::vector<int> next(sigma);
    size_t need = prev.size() + static_cast<size_t>(shift);
    if (next.size() < need) next.resize(need, 0);
    int scale = gf_div(disc, prev_disc);
    for (size_t j = 0; j < prev.size(); ++j)
      next[j + static_cast<size_t>(shift)] ^= gf_mul(scale, prev[j]);
    if (2 * L <= static_cast<int>(step)) {
      prev = sigma;
      prev_disc = disc;
      L = static_cast<int>(step) + 1 - L;
      shift = 1;
    } else {
      ++shift;
    }
    sigma = std::move(next);
  }
  while (!sigma.empty() && sigma.back() == 0) sigma.pop_back();
  size_t degree = sigma.size() - 1;
  if (degree == 0 || degree > radius) return std::nullopt;

  // Chien search over the unshortened positions only
  std::vector<size_t> error_pos;
  for (size_t i = 0; i < n_; ++i) {
    int acc = 0;
    for (size_t j = 0; j < sigma.size(); ++j) {
      if (sigma[j] == 0) continue;
      // sigma_j * alpha^{-i*j}
      int e = static_cast<int>((j * (n_ - i)) % n_);
      acc ^= gf_mul(sigma[j], gf_exp_[static_cast<size_t>(e)]);
    }
    if (acc == 0) error_pos.push_back(i);
  }
  if (error_pos.size() != degree) return std::nullopt;

  BitString out(word);
  for (size_t pos : error_pos) {
    if (pos >= length_) return std::nullopt;  // error in a pinned-zero position
    out.flip_bit(pos);
  }
  // certify: corrected word must have clean syndromes
  std::vector<uint8_t> check(n_, 0);
  for (size_t i = 0; i < length_; ++i) check[i] = static_cast<uint8_t>(out.bit(i));
  for (int s : syndromes(check))
    if (s != 0) return std::nullopt;
  return out;
}

std::unique_ptr<LinearCode> make_code(const std::string& descriptor, size_t block_len) {
  if (descriptor == "identity") return std::make_unique<IdentityCode>(block_len);
  if (descriptor == "repetition") return std::make_unique<RepetitionCode>(block_len);
  if (descriptor == "hamming74") {
    if (block_len != 7)
      throw std::invalid_argument("hamming74 requires block length 7");
    return std::make_unique<BchCode>(3, 1, 7);
  }
  if (descriptor.rfind("bch-t", 0) == 0) {
    size_t t = 0;
    try {
      t = std::stoul(descriptor.substr(5));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad code descriptor '" + descriptor + "'");
    }
    for (int m = 3; m <= 10; ++m) {
      size_t n = (1u << m) - 1;
      if (n < block_len) continue;
      try {
        return std::make_unique<BchCode>(m, t, block_len);
      } catch (const std::invalid_argument&) {
        // field too small once shortened; try the next one
      }
    }
    throw std::invalid_argument("no bch instance fits block length " +
                                std::to_string(block_len));
  }
  throw std::invalid_argument("unknown code descriptor '" + descriptor + "'");
}

}  // namespace pufkit
