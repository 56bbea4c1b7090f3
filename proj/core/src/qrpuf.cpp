#include "pufkit/qrpuf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pufkit/errors.hpp"

namespace pufkit {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kScale16 = 65535.0;  // 2^16 - 1

uint32_t read_u16(const BitString& w, size_t offset) {
  uint32_t v = 0;
  for (size_t b = 0; b < 16; ++b) v = (v << 1) | static_cast<uint32_t>(w.bit(offset + b));
  return v;
}

void write_u16(BitString& w, size_t offset, uint32_t v) {
  for (size_t b = 0; b < 16; ++b)
    w.set_bit(offset + b, static_cast<int>((v >> (15 - b)) & 1u));
}
}  // namespace

QrPuf sample_qrpuf(size_t lambda, Rng& rng) {
  if (lambda == 0) throw std::invalid_argument("sample_qrpuf: lambda must be positive");
  QrPuf puf;
  puf.lambda = lambda;
  puf.gates.reserve(lambda);
  for (size_t k = 0; k < lambda; ++k)
    puf.gates.push_back({rng.uniform(0.0, kPi / 2.0), rng.uniform(0.0, kTwoPi),
                         rng.uniform(0.0, kTwoPi)});
  return puf;
}

QrPuf identity_qrpuf(size_t lambda) {
  QrPuf puf;
  puf.lambda = lambda;
  puf.gates.assign(lambda, {0.0, 0.0, 0.0});
  return puf;
}

double family_phase(int state_index, double phi) {
  if (!(phi >= 0.0 && phi <= kPi / 2.0))
    throw std::invalid_argument("family_phase: phi outside [0, pi/2]");
  switch (state_index) {
    case 1: return phi;
    case 2: return -phi;
    case 3: return phi - kPi;
    case 4: return kPi - phi;
    default: throw std::invalid_argument("family_phase: state index outside 1..4");
  }
}

PureQubit family_state(int state_index, double phi) {
  return make_qubit_real(family_phase(state_index, phi) / 2.0);
}

ChallengeEncoding::ChallengeEncoding(size_t lambda, double phi)
    : lambda_(lambda), phi_(phi) {
  if (lambda == 0) throw std::invalid_argument("encoding: lambda must be positive");
  if (!(phi > 0.0 && phi < kPi / 2.0))
    throw std::invalid_argument("encoding: phi outside (0, pi/2)");
}

int ChallengeEncoding::state_index(const BitString& x, size_t qubit) const {
  if (x.size() != challenge_bits())
    throw std::invalid_argument("encoding: challenge length != 2*lambda");
  if (qubit >= lambda_) throw std::out_of_range("encoding: qubit index");
  return 1 + 2 * x.bit(2 * qubit) + x.bit(2 * qubit + 1);
}

QubitRegister ChallengeEncoding::encode(const BitString& x) const {
  QubitRegister reg;
  reg.reserve(lambda_);
  for (size_t k = 0; k < lambda_; ++k)
    reg.push_back(family_state(state_index(x, k), phi_));
  return reg;
}

QubitRegister evaluate(const QrPuf& puf, const QubitRegister& reg) {
  if (reg.size() != puf.lambda)
    throw std::invalid_argument("evaluate: register size != lambda");
  QubitRegister out;
  out.reserve(reg.size());
  for (size_t k = 0; k < reg.size(); ++k) {
    auto g = puf.gates[k];
    out.push_back(apply_unitary(make_unitary(g.omega, g.psi, g.chi), reg[k]));
  }
  return out;
}

double wrong_state_error(int l, int l_prime, double phi) {
  double d = 0.5 * (family_phase(l, phi) - family_phase(l_prime, phi));
  double s = std::sin(d);
  return s * s;
}

double pairwise_error(const BitString& x_i, const BitString& x_j,
                      const ChallengeEncoding& enc) {
  double total = 0.0;
  for (size_t k = 0; k < enc.lambda(); ++k) {
    int li = enc.state_index(x_i, k);
    int lj = enc.state_index(x_j, k);
    if (li != lj) total += wrong_state_error(li, lj, enc.phi());
  }
  return total;
}

BitString encode_shifter_string(const std::vector<ShifterParams>& params) {
  BitString w(32 * params.size());
  for (size_t k = 0; k < params.size(); ++k) {
    auto a = static_cast<uint32_t>(std::lround(params[k].alpha / (kPi / 2.0) * kScale16));
    auto b = static_cast<uint32_t>(std::lround(params[k].beta / kTwoPi * kScale16));
    write_u16(w, 32 * k, a);
    write_u16(w, 32 * k + 16, b);
  }
  return w;
}

std::vector<ShifterParams> decode_shifter_string(const BitString& w) {
  if (w.size() % 32 != 0)
    throw DataError("shifter string length is not a multiple of 32");
  std::vector<ShifterParams> params(w.size() / 32);
  for (size_t k = 0; k < params.size(); ++k) {
    params[k].alpha = static_cast<double>(read_u16(w, 32 * k)) / kScale16 * (kPi / 2.0);
    params[k].beta = static_cast<double>(read_u16(w, 32 * k + 16)) / kScale16 * kTwoPi;
  }
  return params;
}

void ShifterBank::insert(const BitString& challenge, ShifterBankEntry entry) {
  entries_[challenge] = std::move(entry);
}

const ShifterBankEntry& ShifterBank::at(const BitString& challenge) const {
  auto it = entries_.find(challenge);
  if (it == entries_.end())
    throw ProtocolError("shifter bank: challenge not enrolled");
  return it->second;
}

bool ShifterBank::contains(const BitString& challenge) const {
  return entries_.count(challenge) != 0;
}

ShifterBank build_shifters(const QrPuf& puf, const std::vector<BitString>& challenges,
                           const ChallengeEncoding& enc) {
  if (puf.lambda != enc.lambda())
    throw std::invalid_argument("build_shifters: device/encoding size mismatch");
  ShifterBank bank;
  for (const auto& x : challenges) {
    QubitRegister outcome = evaluate(puf, enc.encode(x));
    ShifterBankEntry entry;
    entry.params.reserve(outcome.size());
    entry.gates.reserve(outcome.size());
    for (const auto& q : outcome) {
      auto p = shifter_params(q);
      entry.params.push_back(p);
      entry.gates.push_back(shifter_from_params(p));
    }
    entry.w = encode_shifter_string(entry.params);
    bank.insert(x, std::move(entry));
  }
  return bank;
}

BitString readout(const QrPuf& puf, const ShifterBank& bank, const BitString& x,
                  const ChallengeEncoding& enc, const NoiseSpec& noise, Rng& rng) {
  if (noise.kind != NoiseSpec::Kind::Depolarizing)
    throw std::invalid_argument("qr readout: noise kind must be depolarizing");
  const ShifterBankEntry& entry = bank.at(x);
  QubitRegister challenge = enc.encode(x);
  BitString o(enc.lambda());
  for (size_t k = 0; k < enc.lambda(); ++k) {
    DensityMatrix rho = DensityMatrix::pure(challenge[k]);
    if (noise.insertion == NoiseSpec::Insertion::Challenge)
      rho = depolarize(rho, noise.p);
    auto g = puf.gates[k];
    rho = conjugate_channel(make_unitary(g.omega, g.psi, g.chi), rho);
    if (noise.insertion == NoiseSpec::Insertion::Outcome)
      rho = depolarize(rho, noise.p);
    rho = conjugate_channel(entry.gates[k], rho);
    o.set_bit(k, measure_computational(rho, rng));
  }
  return o;
}

}  // namespace pufkit
