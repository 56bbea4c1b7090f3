#pragma once

#include <map>
#include <string>

namespace pufkit {

// Probability distribution over a finite set of opaque outcome labels.
// Probabilities must be nonnegative and sum to 1 within 1e-12.
class Distribution {
 public:
  explicit Distribution(std::map<std::string, double> probs);

  const std::map<std::string, double>& probs() const { return probs_; }
  double prob(const std::string& label) const;
  size_t support_size() const { return probs_.size(); }

 private:
  std::map<std::string, double> probs_;
};

// Entropies in bits. 0 log 0 taken as 0.
double shannon_entropy(const Distribution& p);
double min_entropy(const Distribution& p);

// Total variation distance (1/2)*sum |p - q|. Requires identical supports.
double statistical_distance(const Distribution& p, const Distribution& q);

}  // namespace pufkit
