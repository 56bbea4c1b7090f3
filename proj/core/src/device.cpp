#include "pufkit/device.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace pufkit {

GenuineQrDevice::GenuineQrDevice(QrPuf puf) : puf_(std::move(puf)) {
  if (puf_.lambda == 0 || puf_.gates.size() != puf_.lambda)
    throw std::invalid_argument("genuine qr device: malformed gate list");
  gates_.reserve(puf_.lambda);
  for (const auto& g : puf_.gates)
    gates_.push_back(make_unitary(g.omega, g.psi, g.chi));
}

DensityMatrix GenuineQrDevice::respond(size_t qubit, const DensityMatrix& in, Rng&) {
  if (qubit >= puf_.lambda)
    throw std::invalid_argument("genuine qr device: qubit index out of range");
  return conjugate_channel(gates_[qubit], in);
}

QubitRegister GenuineQrDevice::characterize(const QubitRegister& challenge) {
  return evaluate(puf_, challenge);
}

ConstantQrDevice::ConstantQrDevice(size_t lambda, PureQubit state)
    : lambda_(lambda), state_(DensityMatrix::pure(state)) {
  if (lambda == 0) throw std::invalid_argument("constant qr device: lambda = 0");
}

DensityMatrix ConstantQrDevice::respond(size_t qubit, const DensityMatrix&, Rng&) {
  if (qubit >= lambda_)
    throw std::invalid_argument("constant qr device: qubit index out of range");
  return state_;
}

GenuineClassicalDevice::GenuineClassicalDevice(std::shared_ptr<const ClassicalPuf> puf)
    : puf_(std::move(puf)) {
  if (!puf_) throw std::invalid_argument("genuine classical device: null puf");
}

BitString GenuineClassicalDevice::respond(const BitString& x, Rng&) {
  return puf_->evaluate(x);
}

BitString GenuineClassicalDevice::characterize(const BitString& x, Rng&) {
  return puf_->evaluate(x);
}

ConstantClassicalDevice::ConstantClassicalDevice(size_t challenge_bits, BitString value)
    : n_(challenge_bits), value_(std::move(value)) {
  if (n_ == 0 || value_.size() == 0)
    throw std::invalid_argument("constant classical device: empty dimensions");
}

BitString ConstantClassicalDevice::respond(const BitString&, Rng&) { return value_; }

BitString ConstantClassicalDevice::characterize(const BitString&, Rng&) {
  return value_;
}

MenuClassicalDevice::MenuClassicalDevice(size_t challenge_bits,
                                         std::vector<BitString> menu)
    : n_(challenge_bits), menu_(std::move(menu)) {
  if (n_ == 0 || menu_.empty())
    throw std::invalid_argument("menu device: empty dimensions");
  std::set<BitString> seen;
  for (const auto& v : menu_) {
    if (v.size() != menu_.front().size())
      throw std::invalid_argument("menu device: mixed outcome lengths");
    if (!seen.insert(v).second)
      throw std::invalid_argument("menu device: duplicate menu entry");
  }
}

MenuClassicalDevice MenuClassicalDevice::sample(size_t challenge_bits, size_t out_len,
                                                size_t count, Rng& rng) {
  if (count == 0) throw std::invalid_argument("menu device: count = 0");
  if (out_len >= 64 ? false : count > (size_t{1} << out_len))
    throw std::invalid_argument("menu device: count exceeds outcome space");
  std::set<BitString> seen;
  std::vector<BitString> menu;
  while (menu.size() < count) {
    BitString v = BitString::random(out_len, rng);
    if (seen.insert(v).second) menu.push_back(std::move(v));
  }
  return MenuClassicalDevice(challenge_bits, std::move(menu));
}

BitString MenuClassicalDevice::respond(const BitString&, Rng& rng) {
  return menu_[rng.uniform_index(menu_.size())];
}

BitString MenuClassicalDevice::characterize(const BitString&, Rng& rng) {
  return menu_[rng.uniform_index(menu_.size())];
}

}  // namespace pufkit
