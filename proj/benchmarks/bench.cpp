// Microbenchmarks for the hot paths: single-qubit channel algebra, full
// register readout, extractor gen/rep, and table enrollment.

#include <benchmark/benchmark.h>

#include <memory>
#include <utility>
#include <vector>

#include "pufkit/classical_puf.hpp"
#include "pufkit/device.hpp"
#include "pufkit/fuzzy.hpp"
#include "pufkit/protocol.hpp"
#include "pufkit/qrpuf.hpp"
#include "pufkit/qubit.hpp"
#include "pufkit/rng.hpp"

namespace {

using namespace pufkit;

constexpr double kPi = 3.14159265358979323846;

void BM_ShifterMeasure(benchmark::State& state) {
  PureQubit s = family_state(2, 0.6);
  SingleQubitUnitary u = synthesize_shifter(s);
  DensityMatrix rho = depolarize(s, 0.1);
  Rng rng(1);
  for (auto _ : state) {
    DensityMatrix out = conjugate_channel(u, rho);
    benchmark::DoNotOptimize(measure_computational(out, rng));
  }
}
BENCHMARK(BM_ShifterMeasure);

void BM_RegisterReadout(benchmark::State& state) {
  const size_t lambda = static_cast<size_t>(state.range(0));
  Rng rng(2);
  QrPuf puf = sample_qrpuf(lambda, rng);
  ChallengeEncoding enc(lambda, kPi / 4.0);
  BitString x = BitString::random(2 * lambda, rng);
  ShifterBank bank = build_shifters(puf, {x}, enc);
  NoiseSpec noise;
  noise.p = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(readout(puf, bank, x, enc, noise, rng));
}
BENCHMARK(BM_RegisterReadout)->Arg(8)->Arg(16)->Arg(32);

void BM_ExtractorGen(benchmark::State& state) {
  Rng rng(3);
  FeParams fe = make_fe(33 * 16, 16, 8, 1, 0.125, "bch-t1", rng);
  BitString y = BitString::random(fe.l, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fe_gen(y, fe, rng));
}
BENCHMARK(BM_ExtractorGen);

void BM_ExtractorRep(benchmark::State& state) {
  Rng rng(4);
  FeParams fe = make_fe(33 * 16, 16, 8, 1, 0.125, "bch-t1", rng);
  BitString y = BitString::random(fe.l, rng);
  auto [r, h] = fe_gen(y, fe, rng);
  BitString noisy = y;
  noisy.set_bit(fe.l_w() + 3, noisy.bit(fe.l_w() + 3) ^ 1);
  for (auto _ : state) benchmark::DoNotOptimize(fe_rep(noisy, h, fe));
}
BENCHMARK(BM_ExtractorRep);

void BM_Enroll(benchmark::State& state) {
  EnrollConfig cfg;
  cfg.kind = PufKind::Qr;
  cfg.lambda = 16;
  cfg.phi = kPi / 4.0;
  cfg.n_target = static_cast<size_t>(state.range(0));
  cfg.noise.p = 0.1;
  cfg.code = "bch-t1";
  cfg.m = 8;
  Rng rng(5);
  GenuineQrDevice dev(sample_qrpuf(16, rng));
  for (auto _ : state) {
    Rng enroll_rng = rng.derive(static_cast<uint64_t>(state.iterations()));
    benchmark::DoNotOptimize(enroll(dev, cfg, enroll_rng));
  }
}
BENCHMARK(BM_Enroll)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
