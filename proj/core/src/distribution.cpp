#include "pufkit/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace pufkit {

Distribution::Distribution(std::map<std::string, double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("distribution: empty support");
  double total = 0.0;
  for (const auto& [label, p] : probs_) {
    if (!(p >= 0.0))
      throw std::invalid_argument("distribution: negative probability for '" + label + "'");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("distribution: probabilities sum to " + std::to_string(total));
}

double Distribution::prob(const std::string& label) const {
  auto it = probs_.find(label);
  if (it == probs_.end())
    throw std::invalid_argument("distribution: unknown label '" + label + "'");
  return it->second;
}

double shannon_entropy(const Distribution& p) {
  double h = 0.0;
  for (const auto& [label, q] : p.probs())
    if (q > 0.0) h -= q * std::log2(q);
  return h;
}

double min_entropy(const Distribution& p) {
  double pmax = 0.0;
  for (const auto& [label, q] : p.probs()) pmax = std::max(pmax, q);
  return -std::log2(pmax);
}

double statistical_distance(const Distribution& p, const Distribution& q) {
  if (p.support_size() != q.support_size())
    throw std::invalid_argument("statistical_distance: support mismatch");
  auto ip = p.probs().begin();
  auto iq = q.probs().begin();
  double acc = 0.0;
  for (; ip != p.probs().end(); ++ip, ++iq) {
    if (ip->first != iq->first)
      throw std::invalid_argument("statistical_distance: support mismatch");
    acc += std::abs(ip->second - iq->second);
  }
  return 0.5 * acc;
}

}  // namespace pufkit
