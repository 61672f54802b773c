#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "yesno/distribution.hpp"
#include "yesno/question_tree.hpp"
#include "yesno/strategies.hpp"

namespace yesno {

/// Counter-based generator: trial i's randomness is a pure function of
/// (seed, i), so results are reproducible under any evaluation order.
/// splitmix64 finalizer over seed + (counter+1) * golden-gamma.
inline std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t counter) noexcept {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace detail {

// Inverse-CDF sampler over exact cumulative rationals scaled to 2^64.
// Rounding the boundaries introduces a bias of at most 2^-64 per
// outcome, which keeps non-dyadic probabilities like 1/3 honest.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(const Distribution& d) {
    const auto iw = integer_weights(d);
    BigInt cumulative = 0;
    thresholds_.reserve(static_cast<std::size_t>(d.size() - 1));
    for (int i = 0; i + 1 < d.size(); ++i) {
      cumulative += iw.w[static_cast<std::size_t>(i)];
      thresholds_.push_back(BigInt((cumulative << 64) / iw.denom).convert_to<std::uint64_t>());
    }
  }

  int sample(std::uint64_t r) const noexcept {
    const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), r);
    return static_cast<int>(it - thresholds_.begin());
  }

 private:
  std::vector<std::uint64_t> thresholds_;  // first i with r < T_i wins
};

}  // namespace detail

struct SimulationResult {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo estimate of the expected question count: samples one
/// outcome per trial and walks the tree. Question counts accumulate as
/// integers, so the mean is bit-identical for any trial evaluation order.
inline SimulationResult simulate(const QuestionTree& t, const Distribution& d,
                                 std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("simulate needs at least one trial");
  require_valid(t, d);
  const detail::OutcomeSampler sampler(d);

  std::uint64_t total = 0;
  std::uint64_t total_sq = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const int outcome = sampler.sample(counter_rng(seed, i));
    std::uint64_t depth = 0;
    int id = t.root();
    while (!t.node(id).is_leaf()) {
      const auto& nd = t.node(id);
      id = std::binary_search(nd.yes_set.begin(), nd.yes_set.end(), outcome) ? nd.yes : nd.no;
      ++depth;
    }
    total += depth;
    total_sq += depth * depth;
  }

  SimulationResult result;
  const double n = static_cast<double>(trials);
  result.mean = static_cast<double>(total) / n;
  if (trials > 1) {
    const double variance =
        (static_cast<double>(total_sq) - n * result.mean * result.mean) / (n - 1.0);
    result.std_error = std::sqrt(std::max(variance, 0.0) / n);
  }
  return result;
}

/// Exact evaluation of one strategy tree: every StrategyReport field from
/// the tree analyses, no sampling involved.
inline StrategyReport exhaustive_evaluate(const QuestionTree& t, const Distribution& d) {
  require_valid(t, d);
  StrategyReport report;
  report.expected_questions = expected_questions(t, d);
  report.expected_questions_decimal = report.expected_questions.to_double();
  report.entropy_bits = entropy_bits(d);
  report.information_yield_bits = information_yield_bits(t, d);
  report.redundancy_bits = report.expected_questions_decimal - report.entropy_bits;
  report.depth_histogram = depth_histogram(t, d);
  const auto words = codewords(t);
  for (int i = 0; i < d.size(); ++i) {
    report.codewords[d.label(i)] = words[static_cast<std::size_t>(i)];
  }
  return report;
}

}  // namespace yesno
