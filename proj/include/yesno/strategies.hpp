#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "yesno/distribution.hpp"
#include "yesno/errors.hpp"
#include "yesno/question_tree.hpp"
#include "yesno/rational.hpp"

namespace yesno {

/// Outcome ordering for the one-by-one strategy.
enum class AskOrder {
  input,       // ask in the distribution's outcome order
  descending,  // most probable first, ties by ascending index
};

// Widest outcome set balanced division will split (subset enumeration
// is exponential in the node width).
inline constexpr int kDivisionCapacity = 24;

// Largest distribution the brute-force optimality search accepts.
inline constexpr int kOracleCapacity = 16;

namespace detail {

// Probabilities as integer weights over one common denominator, so the
// builders can compare subset masses with plain integer arithmetic.
struct IntegerWeights {
  BigInt denom;
  std::vector<BigInt> w;
};

inline IntegerWeights integer_weights(const Distribution& d) {
  IntegerWeights iw;
  iw.denom = 1;
  for (const auto& o : d.outcomes()) iw.denom = lcm(iw.denom, o.p.den());
  iw.w.reserve(static_cast<std::size_t>(d.size()));
  for (const auto& o : d.outcomes()) iw.w.push_back(o.p.num() * (iw.denom / o.p.den()));
  return iw;
}

inline std::vector<int> indices_by_descending_p(const Distribution& d) {
  std::vector<int> order(static_cast<std::size_t>(d.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto cmp = d.p(a) <=> d.p(b);
    if (cmp != 0) return cmp > 0;
    return a < b;
  });
  return order;
}

}  // namespace detail

/// One-by-one asking: question k is "is it outcome pi(k)?", a chain whose
/// final question separates the last two outcomes.
inline QuestionTree build_sequential(const Distribution& d, AskOrder order = AskOrder::input) {
  const int n = d.size();
  std::vector<int> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  if (order == AskOrder::descending) pi = detail::indices_by_descending_p(d);

  TreeBuilder b;
  int tail = b.leaf(pi[static_cast<std::size_t>(n - 1)]);
  for (int k = n - 2; k >= 0; --k) {
    tail = b.internal(b.leaf(pi[static_cast<std::size_t>(k)]), tail);
  }
  return std::move(b).build(tail);
}

namespace detail {

// Minimum |mass(A) - mass(S\A)| split of S over all proper subsets A
// containing S's smallest index. Ties prefer smaller |A|, then the
// lexicographically smallest sorted index sequence. Enumerates masks in
// Gray-code order so each candidate costs one integer add or subtract.
inline std::uint32_t best_balanced_mask(const std::vector<int>& S,
                                        const std::vector<BigInt>& w,
                                        const BigInt& total) {
  const int bits = static_cast<int>(S.size()) - 1;
  const std::uint32_t full = (bits >= 32) ? ~0u : ((1u << bits) - 1u);
  BigInt a = w[static_cast<std::size_t>(S[0])];

  const auto diff_of = [&](const BigInt& x) {
    BigInt dd = 2 * x - total;
    if (dd < 0) dd = -dd;
    return dd;
  };
  // Equal popcount masks: the sorted index sequence with the smaller
  // first difference is the one holding the lowest differing bit.
  const auto lex_less = [](std::uint32_t x, std::uint32_t y) {
    const std::uint32_t delta = x ^ y;
    return delta != 0 && (x & (delta & (~delta + 1u)));
  };

  std::uint32_t best_mask = 0;
  int best_size = 1;
  BigInt best_diff = diff_of(a);

  std::uint32_t gray = 0;
  for (std::uint64_t k = 1; k < (1ull << bits); ++k) {
    const int j = std::countr_zero(k);
    gray ^= (1u << j);
    if (gray & (1u << j)) {
      a += w[static_cast<std::size_t>(S[static_cast<std::size_t>(1 + j)])];
    } else {
      a -= w[static_cast<std::size_t>(S[static_cast<std::size_t>(1 + j)])];
    }
    if (gray == full) continue;  // A == S is not a split
    BigInt diff = diff_of(a);
    const auto cmp = diff.compare(best_diff);
    if (cmp > 0) continue;
    const int size = std::popcount(gray) + 1;
    if (cmp < 0 || size < best_size ||
        (size == best_size && lex_less(gray, best_mask))) {
      best_mask = gray;
      best_size = size;
      best_diff = std::move(diff);
    }
  }
  return best_mask;
}

}  // namespace detail

/// Top-down division: split every node's outcome set into the two most
/// probability-balanced halves and recurse. The yes branch is the half
/// containing the node's smallest outcome index.
inline QuestionTree build_balanced_division(const Distribution& d) {
  const auto iw = detail::integer_weights(d);
  TreeBuilder b;
  const std::function<int(const std::vector<int>&)> split = [&](const std::vector<int>& S) -> int {
    if (S.size() == 1) return b.leaf(S[0]);
    if (static_cast<int>(S.size()) > kDivisionCapacity) {
      throw CapacityError("balanced division node width " + std::to_string(S.size()) +
                          " exceeds capacity " + std::to_string(kDivisionCapacity));
    }
    BigInt total = 0;
    for (int i : S) total += iw.w[static_cast<std::size_t>(i)];
    const std::uint32_t mask = detail::best_balanced_mask(S, iw.w, total);

    std::vector<int> yes_part{S[0]};
    std::vector<int> no_part;
    for (std::size_t j = 1; j < S.size(); ++j) {
      if (mask & (1u << (j - 1))) {
        yes_part.push_back(S[j]);
      } else {
        no_part.push_back(S[j]);
      }
    }
    const int yes_id = split(yes_part);
    const int no_id = split(no_part);
    return b.internal(yes_id, no_id);
  };
  std::vector<int> all(static_cast<std::size_t>(d.size()));
  std::iota(all.begin(), all.end(), 0);
  return std::move(b).build(split(all));
}

/// Sorted contiguous division: order outcomes by descending probability
/// and split each run at the boundary with the smallest mass difference
/// (ties: earlier boundary). The left segment is the yes branch.
inline QuestionTree build_shannon_fano(const Distribution& d) {
  const auto iw = detail::integer_weights(d);
  const std::vector<int> order = detail::indices_by_descending_p(d);
  std::vector<BigInt> prefix(order.size() + 1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    prefix[i + 1] = prefix[i] + iw.w[static_cast<std::size_t>(order[i])];
  }

  TreeBuilder b;
  const std::function<int(std::size_t, std::size_t)> split = [&](std::size_t lo, std::size_t hi) -> int {
    if (hi - lo == 1) return b.leaf(order[lo]);
    const BigInt total = prefix[hi] - prefix[lo];
    std::size_t best_b = lo + 1;
    BigInt best_diff = -1;
    for (std::size_t cut = lo + 1; cut < hi; ++cut) {
      BigInt diff = 2 * (prefix[cut] - prefix[lo]) - total;
      if (diff < 0) diff = -diff;
      if (best_diff < 0 || diff < best_diff) {
        best_diff = std::move(diff);
        best_b = cut;
      }
    }
    const int yes_id = split(lo, best_b);
    const int no_id = split(best_b, hi);
    return b.internal(yes_id, no_id);
  };
  return std::move(b).build(split(0, order.size()));
}

/// One merge of the down-top construction: the two lightest pool entries
/// combined into one.
struct MergeStep {
  int step_index = 0;  // 0-based position in the merge sequence
  std::pair<Rational, Rational> merged_masses;  // in pop order
  Rational result_mass;
};

struct HuffmanResult {
  QuestionTree tree;
  std::vector<MergeStep> steps;
};

/// Down-top merging (Huffman): repeatedly merge the two least probable
/// pool entries. Two queues give a total, deterministic order: queue A
/// holds the leaves sorted ascending by (p, index), queue B holds merged
/// nodes in creation order; ties between queue fronts prefer A. The
/// element popped first (the lighter one, ties included) becomes the no
/// branch.
inline HuffmanResult build_huffman(const Distribution& d) {
  const auto iw = detail::integer_weights(d);
  const int n = d.size();
  TreeBuilder b;
  if (n == 1) {
    return HuffmanResult{std::move(b).build(b.leaf(0)), {}};
  }

  struct Item {
    BigInt mass;
    int node;
  };
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const auto cmp = iw.w[static_cast<std::size_t>(x)].compare(iw.w[static_cast<std::size_t>(y)]);
    if (cmp != 0) return cmp < 0;
    return x < y;
  });

  std::vector<Item> queue_a;
  queue_a.reserve(order.size());
  for (int i : order) queue_a.push_back({iw.w[static_cast<std::size_t>(i)], b.leaf(i)});
  std::vector<Item> queue_b;
  queue_b.reserve(order.size());
  std::size_t head_a = 0;
  std::size_t head_b = 0;

  const auto pop_lightest = [&]() -> Item {
    const bool a_left = head_a < queue_a.size();
    const bool b_left = head_b < queue_b.size();
    if (a_left && (!b_left || queue_a[head_a].mass <= queue_b[head_b].mass)) {
      return std::move(queue_a[head_a++]);
    }
    return std::move(queue_b[head_b++]);
  };

  std::vector<MergeStep> steps;
  steps.reserve(static_cast<std::size_t>(n - 1));
  for (int step = 0; step < n - 1; ++step) {
    Item first = pop_lightest();
    Item second = pop_lightest();
    BigInt sum = first.mass + second.mass;
    steps.push_back({step,
                     {Rational(first.mass, iw.denom), Rational(second.mass, iw.denom)},
                     Rational(sum, iw.denom)});
    const int node = b.internal(/*yes_child=*/second.node, /*no_child=*/first.node);
    queue_b.push_back({std::move(sum), node});
  }
  return HuffmanResult{std::move(b).build(queue_b.back().node), std::move(steps)};
}

struct OptimalResult {
  Rational expected_questions;
  QuestionTree tree;
};

namespace detail {

// All non-decreasing codeword length vectors satisfying the Kraft
// equality, visited in lexicographic order. Budget is in units of
// 2^-(n-1); lengths stay within [1, n-1].
template <typename Visit>
inline void for_each_kraft_vector(int n, Visit&& visit) {
  std::vector<int> lengths(static_cast<std::size_t>(n));
  const auto rec = [&](auto&& self, int i, int min_len, std::int64_t budget) -> void {
    if (i == n) {
      if (budget == 0) visit(lengths);
      return;
    }
    const std::int64_t remaining = n - i;
    for (int len = min_len; len <= n - 1; ++len) {
      const std::int64_t unit = std::int64_t{1} << (n - 1 - len);
      if (unit * remaining < budget) break;  // even all-minimal lengths cannot fill
      if (unit > budget) continue;
      lengths[static_cast<std::size_t>(i)] = len;
      self(self, i + 1, len, budget - unit);
    }
  };
  rec(rec, 0, 1, std::int64_t{1} << (n - 1));
}

// Canonical codeword assignment: lengths ascending, first code all
// zeroes, each next code = (previous + 1) << (length delta).
inline std::vector<std::string> canonical_codes(const std::vector<int>& lengths) {
  std::vector<std::string> codes;
  codes.reserve(lengths.size());
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (i > 0) code = (code + 1) << (lengths[i] - lengths[i - 1]);
    std::string bits(static_cast<std::size_t>(lengths[i]), '0');
    for (int j = 0; j < lengths[i]; ++j) {
      if (code & (1u << (lengths[i] - 1 - j))) bits[static_cast<std::size_t>(j)] = '1';
    }
    codes.push_back(std::move(bits));
  }
  return codes;
}

inline int build_code_trie(TreeBuilder& b,
                           const std::vector<std::pair<std::string, int>>& codes,
                           const std::string& prefix) {
  for (const auto& [bits, outcome] : codes) {
    if (bits == prefix) return b.leaf(outcome);
  }
  const int yes_id = build_code_trie(b, codes, prefix + '1');
  const int no_id = build_code_trie(b, codes, prefix + '0');
  return b.internal(yes_id, no_id);
}

}  // namespace detail

/// Exhaustive optimal prefix code search. Enumerates every Kraft-equality
/// length vector, assigns lengths ascending to probabilities descending
/// (no optimum is missed, by the exchange argument), and returns the
/// minimum expected question count with a canonical tree realizing it.
inline OptimalResult brute_force_optimal(const Distribution& d) {
  const int n = d.size();
  if (n > kOracleCapacity) {
    throw CapacityError("brute-force search supports at most " +
                        std::to_string(kOracleCapacity) + " outcomes, got " + std::to_string(n));
  }
  if (n == 1) {
    TreeBuilder b;
    return OptimalResult{Rational(0), std::move(b).build(b.leaf(0))};
  }

  const auto iw = detail::integer_weights(d);
  const std::vector<int> order = detail::indices_by_descending_p(d);
  std::vector<int> best_lengths;
  BigInt best_cost = -1;
  detail::for_each_kraft_vector(n, [&](const std::vector<int>& lengths) {
    BigInt cost = 0;
    for (int i = 0; i < n; ++i) {
      cost += iw.w[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] *
              lengths[static_cast<std::size_t>(i)];
    }
    if (best_cost < 0 || cost < best_cost) {
      best_cost = std::move(cost);
      best_lengths = lengths;
    }
  });

  const std::vector<std::string> bits = detail::canonical_codes(best_lengths);
  std::vector<std::pair<std::string, int>> codes;
  codes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    codes.emplace_back(bits[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
  }
  TreeBuilder b;
  const int root = detail::build_code_trie(b, codes, "");
  return OptimalResult{Rational(best_cost, iw.denom), std::move(b).build(root)};
}

}  // namespace yesno
