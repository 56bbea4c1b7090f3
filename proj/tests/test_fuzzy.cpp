#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <optional>

#include "pufkit/fuzzy.hpp"
#include "pufkit/rng.hpp"

using namespace pufkit;

static BitString bs(const char* text) { return BitString::from_string(text); }

static BitString unit(size_t len, size_t pos) {
  BitString u(len);
  u.set_bit(pos, 1);
  return u;
}

TEST_CASE("make_fe draws a seed of the right shape, deterministically") {
  Rng a(31), b(31);
  FeParams f1 = make_fe(16, 7, 8, 1, 0.125, "hamming74", a);
  FeParams f2 = make_fe(16, 7, 8, 1, 0.125, "hamming74", b);
  CHECK(f1.hash_seed.size() == 16 + 8 - 1);
  CHECK(f1.hash_seed == f2.hash_seed);
  CHECK(f1.l_w() == 9);
  validate_fe(f1);  // a fresh instance passes its own checks
}

TEST_CASE("validate_fe rejects inconsistent parameter sets") {
  Rng rng(32);
  FeParams fe = make_fe(16, 7, 8, 1, 0.125, "hamming74", rng);

  FeParams bad = fe;
  bad.l_o = 17;
  CHECK_THROWS(validate_fe(bad));

  bad = fe;
  bad.m = 0;
  CHECK_THROWS(validate_fe(bad));

  bad = fe;
  bad.epsilon = 0.0;
  CHECK_THROWS(validate_fe(bad));
  bad.epsilon = 1.0;
  CHECK_THROWS(validate_fe(bad));

  bad = fe;
  bad.hash_seed = BitString(5);
  CHECK_THROWS(validate_fe(bad));

  bad = fe;
  bad.t = 2;  // beyond hamming74 capacity
  CHECK_THROWS(validate_fe(bad));

  CHECK_THROWS(make_fe(0, 0, 8, 1, 0.125, "hamming74", rng));
}

TEST_CASE("toeplitz hash matches the hand-computed value") {
  BitString r = toeplitz_hash(bs("110"), bs("1011"), 2);
  CHECK(r.to_string() == "10");
  CHECK_THROWS(toeplitz_hash(bs("110"), bs("101"), 2));  // seed too short
}

TEST_CASE("toeplitz hash is linear over xor") {
  Rng rng(33);
  size_t l = 24, m = 10;
  BitString seed = BitString::random(l + m - 1, rng);
  for (int i = 0; i < 200; ++i) {
    BitString y1 = BitString::random(l, rng);
    BitString y2 = BitString::random(l, rng);
    CHECK(toeplitz_hash(y1 ^ y2, seed, m) ==
          (toeplitz_hash(y1, seed, m) ^ toeplitz_hash(y2, seed, m)));
  }
}

TEST_CASE("generate and reproduce round trip under tolerated noise") {
  Rng rng(34);
  FeParams fe = make_fe(16, 7, 8, 1, 0.125, "hamming74", rng);

  for (int trial = 0; trial < 50; ++trial) {
    BitString y = BitString::random(16, rng);
    auto [r, helper] = fe_gen(y, fe, rng);
    CHECK(r.size() == 8);
    CHECK(helper.sketch.size() == 7);
    CHECK(helper.hash_seed == fe.hash_seed);

    // clean word and every single flip inside the outcome segment recover r
    auto clean = fe_rep(y, helper, fe);
    REQUIRE(clean.has_value());
    CHECK(*clean == r);
    for (size_t i = 0; i < 7; ++i) {
      BitString noisy = y;
      noisy.flip_bit(fe.l_w() + i);
      auto got = fe_rep(noisy, helper, fe);
      REQUIRE(got.has_value());
      CHECK(*got == r);
    }
  }

  CHECK_THROWS(fe_gen(bs("101"), fe, rng));
  BitString y = BitString::random(16, rng);
  auto [r, helper] = fe_gen(y, fe, rng);
  CHECK_THROWS(fe_rep(bs("101"), helper, fe));
  HelperData short_sketch{BitString(3), fe.hash_seed};
  CHECK_THROWS(fe_rep(y, short_sketch, fe));
}

TEST_CASE("outcome corruption beyond t never silently reproduces the response") {
  // wide hash so a wrong reconstruction cannot collide in practice
  Rng rng(35);
  FeParams fe = make_fe(16, 7, 16, 1, 0.125, "hamming74", rng);

  for (int trial = 0; trial < 50; ++trial) {
    BitString y = BitString::random(16, rng);
    auto [r, helper] = fe_gen(y, fe, rng);
    for (size_t i = 0; i < 7; ++i) {
      for (size_t j = i + 1; j < 7; ++j) {
        BitString noisy = y;
        noisy.flip_bit(fe.l_w() + i);
        noisy.flip_bit(fe.l_w() + j);
        auto got = fe_rep(noisy, helper, fe);
        if (got.has_value()) CHECK(*got != r);
      }
    }
  }
}

TEST_CASE("a non-perfect code reports uncorrectable rather than guessing") {
  Rng rng(36);
  FeParams fe = make_fe(20, 15, 8, 2, 0.125, "bch-t2", rng);
  BitString y = BitString::random(20, rng);
  auto [r, helper] = fe_gen(y, fe, rng);

  bool saw_uncorrectable = false;
  for (int pattern = 0; pattern < 30; ++pattern) {
    BitString noisy = y;
    size_t a = rng.uniform_index(15), b = 0, c = 0;
    do { b = rng.uniform_index(15); } while (b == a);
    do { c = rng.uniform_index(15); } while (c == a || c == b);
    noisy.flip_bit(fe.l_w() + a);
    noisy.flip_bit(fe.l_w() + b);
    noisy.flip_bit(fe.l_w() + c);
    auto got = fe_rep(noisy, helper, fe);
    if (!got.has_value()) saw_uncorrectable = true;
    else CHECK(*got != r);
  }
  CHECK(saw_uncorrectable);
}

TEST_CASE("the exact segment is bound by the hash, not the sketch") {
  Rng rng(37);
  FeParams fe = make_fe(16, 7, 8, 1, 0.125, "hamming74", rng);
  BitString y = BitString::random(16, rng);
  auto [r, helper] = fe_gen(y, fe, rng);

  for (size_t i = 0; i < fe.l_w(); ++i) {
    BitString noisy = y;
    noisy.flip_bit(i);
    auto got = fe_rep(noisy, helper, fe);
    REQUIRE(got.has_value());
    // linearity: flipping exact-segment bit i shifts the hash by the image of
    // the unit vector, so the response moves exactly by that column
    BitString expect = r ^ toeplitz_hash(unit(16, i), fe.hash_seed, 8);
    CHECK(*got == expect);
  }
}

TEST_CASE("reuse-failure predictor matches closed forms") {
  auto zero_t = canetti_correctness(0, 100, 32, 4, 0.001);
  CHECK(zero_t.raw == doctest::Approx(0.004).epsilon(1e-15));

  auto certain = canetti_correctness(100, 100, 32, 4, 0.0);
  CHECK(certain.raw == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(certain.value == 1.0);

  auto pinned = canetti_correctness(10, 100, 32, 4, 0.001);
  CHECK(pinned.raw == doctest::Approx(0.8735662129553752).epsilon(1e-14));
  CHECK(pinned.value == pinned.raw);

  auto clamped = canetti_correctness(10, 100, 32, 4, 0.5);
  CHECK(clamped.raw > 1.0);
  CHECK(clamped.value == 1.0);

  CHECK_THROWS(canetti_correctness(5, 0, 32, 4, 0.0));
  CHECK_THROWS(canetti_correctness(101, 100, 32, 4, 0.0));
  CHECK_THROWS(canetti_correctness(5, 100, 0, 4, 0.0));
  CHECK_THROWS(canetti_correctness(5, 100, 32, 0.5, 0.0));
  CHECK_THROWS(canetti_correctness(5, 100, 32, 4, 1.5));
}

TEST_CASE("predicted failure grows with the correction radius") {
  double prev = -1.0;
  for (size_t t = 0; t <= 50; ++t) {
    double raw = canetti_correctness(t, 50, 16, 2, 0.01).raw;
    CHECK(raw >= prev);
    prev = raw;
  }
}

TEST_CASE("joint-distribution audit separates good and broken extractors") {
  Rng rng(38);
  // small output so the surplus entropy covers the extraction loss
  FeParams fe = make_fe(16, 7, 4, 1, 0.125, "hamming74", rng);

  std::vector<BitString> ws;
  for (uint64_t v = 0; v < 64; ++v) {
    BitString w(9);
    for (size_t i = 0; i < 6; ++i) w.set_bit(3 + i, int((v >> (5 - i)) & 1));
    ws.push_back(w);
  }
  auto source = uniform_source(ws, 7);
  CHECK(source.size() == 64u * 128u);

  auto audit = uniformity_audit(fe, source, 12.5);
  CHECK(audit.observed_min_entropy == doctest::Approx(13.0).epsilon(1e-9));
  CHECK(audit.min_entropy_ok);
  CHECK(audit.distance <= fe.epsilon);
  CHECK(audit.mutual_information_bits <= 2 * fe.epsilon);

  // an all-zero seed hashes everything to zero: maximally non-uniform
  FeParams broken = fe;
  broken.hash_seed = BitString(16 + 4 - 1);
  auto bad = uniformity_audit(broken, source, 12.5);
  CHECK(bad.distance >= 0.9);

  // a point-mass source has no entropy to extract
  std::vector<std::pair<BitString, double>> point = {{BitString(16), 1.0}};
  auto degenerate = uniformity_audit(fe, point, 12.5);
  CHECK(degenerate.observed_min_entropy == 0.0);
  CHECK_FALSE(degenerate.min_entropy_ok);

  CHECK_THROWS(uniformity_audit(fe, {}, 1.0));
}
