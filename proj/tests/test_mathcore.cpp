#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <stdexcept>

#include "pufkit/bitstring.hpp"
#include "pufkit/distribution.hpp"
#include "pufkit/rng.hpp"

using namespace pufkit;

static BitString bs(const char* text) { return BitString::from_string(text); }

TEST_CASE("hamming weight counts set bits") {
  CHECK(hamming_weight(bs("00000")) == 0);
  CHECK(hamming_weight(bs("10110")) == 3);
  CHECK(hamming_weight(bs("11111")) == 5);
}

TEST_CASE("hamming distance is xor weight") {
  CHECK(hamming_distance(bs("1010"), bs("1010")) == 0);
  CHECK(hamming_distance(bs("1010"), bs("0101")) == 4);
  CHECK(hamming_distance(bs("1100"), bs("1010")) == 2);
  CHECK_THROWS(hamming_distance(bs("10"), bs("100")));

  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    BitString a = BitString::random(23, rng), b = BitString::random(23, rng);
    CHECK(hamming_distance(a, b) == hamming_weight(a ^ b));
  }
}

TEST_CASE("hamming distance triangle inequality") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    BitString a = BitString::random(17, rng), b = BitString::random(17, rng),
              c = BitString::random(17, rng);
    CHECK(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
  }
}

TEST_CASE("bitstring text and hex round trips") {
  CHECK(bs("010110").to_string() == "010110");
  CHECK(bs("1111").to_hex() == "f");
  CHECK(bs("00010010").to_hex() == "12");
  CHECK(BitString::from_hex("12", 8) == bs("00010010"));
  // 5 bits from one nibble-padded hex char; pad bits must be zero
  CHECK(BitString::from_hex("a8", 5) == bs("10101"));
  CHECK_THROWS(BitString::from_hex("a9", 5));  // nonzero pad bit
  CHECK_THROWS(BitString::from_string("0121"));
}

TEST_CASE("bitstring slice concat and bit edits") {
  BitString s = bs("110010");
  CHECK(s.slice(1, 3) == bs("100"));
  CHECK(concat(bs("11"), bs("001")) == bs("11001"));
  CHECK((bs("1100") ^ bs("1010")) == bs("0110"));
  s.set_bit(0, 0);
  CHECK(s == bs("010010"));
  s.flip_bit(5);
  CHECK(s == bs("010011"));
  CHECK_THROWS(s.bit(6));
}

TEST_CASE("shannon entropy in bits") {
  Distribution uniform4({{"a", 0.25}, {"b", 0.25}, {"c", 0.25}, {"d", 0.25}});
  CHECK(shannon_entropy(uniform4) == doctest::Approx(2.0).epsilon(1e-12));
  Distribution point({{"a", 1.0}, {"b", 0.0}});
  CHECK(shannon_entropy(point) == doctest::Approx(0.0).epsilon(1e-12));
  Distribution mixed({{"a", 0.5}, {"b", 0.25}, {"c", 0.25}});
  CHECK(shannon_entropy(mixed) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("min entropy of the likeliest outcome") {
  std::map<std::string, double> u8;
  for (char c = 'a'; c < 'i'; ++c) u8[std::string(1, c)] = 0.125;
  CHECK(min_entropy(Distribution(u8)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(min_entropy(Distribution({{"0", 0.5}, {"1", 0.5}})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(min_entropy(Distribution({{"0", 0.75}, {"1", 0.25}})) ==
        doctest::Approx(0.4150374992788438).epsilon(1e-12));
}

TEST_CASE("statistical distance") {
  Distribution p({{"0", 0.5}, {"1", 0.5}});
  Distribution q({{"0", 0.75}, {"1", 0.25}});
  CHECK(statistical_distance(p, p) == doctest::Approx(0.0).epsilon(1e-12));
  Distribution da({{"x", 1.0}, {"y", 0.0}});
  Distribution db({{"x", 0.0}, {"y", 1.0}});
  CHECK(statistical_distance(da, db) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(statistical_distance(p, q) == doctest::Approx(0.25).epsilon(1e-12));
  Distribution other({{"z", 1.0}});
  CHECK_THROWS(statistical_distance(p, other));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS(Distribution({{"a", 0.6}, {"b", 0.6}}));
  CHECK_THROWS(Distribution({{"a", 1.2}, {"b", -0.2}}));
}

TEST_CASE("entropy ordering and distance bound over random distributions") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    std::map<std::string, double> pm, qm;
    double ps = 0, qs = 0;
    for (int k = 0; k < 6; ++k) {
      double a = rng.uniform() + 1e-6, b = rng.uniform() + 1e-6;
      pm[std::string(1, char('a' + k))] = a;
      qm[std::string(1, char('a' + k))] = b;
      ps += a;
      qs += b;
    }
    for (auto& [k, v] : pm) v /= ps;
    for (auto& [k, v] : qm) v /= qs;
    Distribution p(pm), q(qm);
    CHECK(shannon_entropy(p) >= min_entropy(p) - 1e-12);
    double d = statistical_distance(p, q);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("rng streams are deterministic and tag-separated") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng base(42);
  Rng s1 = base.derive("alpha"), s2 = base.derive("beta"), s3 = base.derive(0);
  CHECK(s1.next_u64() != s2.next_u64());
  CHECK(base.derive("alpha").next_u64() != s3.seed());  // tags vs indices differ
  CHECK(base.derive("alpha").seed() == base.derive("alpha").seed());

  Rng u(9);
  for (int i = 0; i < 1000; ++i) {
    double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    uint64_t k = u.uniform_index(7);
    CHECK(k < 7);
    int bit = u.bit();
    CHECK((bit == 0 || bit == 1));
  }
  CHECK_THROWS(u.uniform_index(0));
}
