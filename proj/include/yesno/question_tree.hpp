#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "yesno/distribution.hpp"
#include "yesno/errors.hpp"
#include "yesno/information.hpp"
#include "yesno/rational.hpp"

namespace yesno {

/// A full binary decision tree over outcome indices. Each internal node
/// asks "is the outcome one of yes_set?"; each leaf names one outcome.
/// The yes branch carries bit '1', the no branch bit '0', so a tree is
/// also a binary prefix code. Nodes live in an arena; trees are immutable
/// once built (construct via TreeBuilder).
class QuestionTree {
 public:
  struct Node {
    int outcome = -1;          // leaf: outcome index; internal: -1
    int yes = -1;              // yes-branch child id (internal only)
    int no = -1;               // no-branch child id (internal only)
    std::vector<int> yes_set;  // sorted outcomes reached through the yes child

    bool is_leaf() const noexcept { return outcome >= 0; }
  };

  int root() const noexcept { return root_; }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }

  // Structural equality on (yes_set, children); arena layout is irrelevant.
  friend bool operator==(const QuestionTree& a, const QuestionTree& b) {
    return same_shape(a, a.root_, b, b.root_);
  }

 private:
  friend class TreeBuilder;
  QuestionTree(std::vector<Node> nodes, int root) : nodes_(std::move(nodes)), root_(root) {}

  static bool same_shape(const QuestionTree& a, int ia, const QuestionTree& b, int ib) {
    const Node& na = a.node(ia);
    const Node& nb = b.node(ib);
    if (na.is_leaf() != nb.is_leaf()) return false;
    if (na.is_leaf()) return na.outcome == nb.outcome;
    return na.yes_set == nb.yes_set && same_shape(a, na.yes, b, nb.yes) &&
           same_shape(a, na.no, b, nb.no);
  }

  std::vector<Node> nodes_;
  int root_ = -1;
};

/// Builds QuestionTree arenas bottom-up. The two-argument internal()
/// derives yes_set from the yes child; the three-argument form stores
/// whatever it is given, so tests can assemble inconsistent trees for
/// validate() to reject.
class TreeBuilder {
 public:
  int leaf(int outcome) {
    QuestionTree::Node n;
    n.outcome = outcome;
    nodes_.push_back(std::move(n));
    leaves_.push_back({outcome});
    return last_id();
  }

  int internal(int yes_child, int no_child) {
    return internal(leaves_under(yes_child), yes_child, no_child);
  }

  int internal(std::vector<int> yes_set, int yes_child, int no_child) {
    QuestionTree::Node n;
    n.yes = yes_child;
    n.no = no_child;
    n.yes_set = std::move(yes_set);
    nodes_.push_back(std::move(n));
    std::vector<int> merged;
    const std::vector<int>& ys = leaves_under(yes_child);
    const std::vector<int>& ns = leaves_under(no_child);
    merged.reserve(ys.size() + ns.size());
    std::merge(ys.begin(), ys.end(), ns.begin(), ns.end(), std::back_inserter(merged));
    leaves_.push_back(std::move(merged));
    return last_id();
  }

  QuestionTree build(int root_id) && {
    return QuestionTree(std::move(nodes_), root_id);
  }

 private:
  int last_id() const noexcept { return static_cast<int>(nodes_.size()) - 1; }

  const std::vector<int>& leaves_under(int id) const {
    static const std::vector<int> kNone;
    if (id < 0 || id >= static_cast<int>(leaves_.size())) return kNone;
    return leaves_[static_cast<std::size_t>(id)];
  }

  std::vector<QuestionTree::Node> nodes_;
  std::vector<std::vector<int>> leaves_;
};

namespace detail {

struct TreeChecker {
  const QuestionTree& t;
  int n_outcomes;
  std::vector<int> visits;
  std::vector<int> leaf_count;
  std::vector<std::string> issues;

  explicit TreeChecker(const QuestionTree& tree, int n)
      : t(tree),
        n_outcomes(n),
        visits(static_cast<std::size_t>(tree.node_count()), 0),
        leaf_count(static_cast<std::size_t>(n < 0 ? 0 : n), 0) {}

  std::vector<int> walk(int id) {
    if (id < 0 || id >= t.node_count()) {
      issues.push_back("child id " + std::to_string(id) + " out of range");
      return {};
    }
    if (++visits[static_cast<std::size_t>(id)] > 1) {
      issues.push_back("node " + std::to_string(id) + " reachable by more than one path");
      return {};
    }
    const auto& nd = t.node(id);
    if (nd.is_leaf()) {
      if (nd.outcome >= n_outcomes) {
        issues.push_back("leaf outcome " + std::to_string(nd.outcome) + " out of range");
        return {};
      }
      ++leaf_count[static_cast<std::size_t>(nd.outcome)];
      return {nd.outcome};
    }
    std::vector<int> ys = walk(nd.yes);
    std::vector<int> ns = walk(nd.no);
    if (nd.yes_set != ys) {
      issues.push_back("node " + std::to_string(id) + ": stored yes_set differs from yes-child leaves");
    }
    std::vector<int> merged;
    merged.reserve(ys.size() + ns.size());
    std::merge(ys.begin(), ys.end(), ns.begin(), ns.end(), std::back_inserter(merged));
    return merged;
  }
};

}  // namespace detail

/// Checks every tree invariant against an outcome count. Returns the empty
/// vector iff the tree is valid.
inline std::vector<std::string> validate(const QuestionTree& t, int n_outcomes) {
  detail::TreeChecker checker(t, n_outcomes);
  if (t.root() < 0 || t.root() >= t.node_count()) {
    checker.issues.push_back("root id out of range");
  } else {
    checker.walk(t.root());
    for (int k = 0; k < n_outcomes; ++k) {
      const int c = checker.leaf_count[static_cast<std::size_t>(k)];
      if (c == 0) checker.issues.push_back("missing outcome " + std::to_string(k));
      if (c > 1) checker.issues.push_back("outcome " + std::to_string(k) + " appears in multiple leaves");
    }
    int unreachable = 0;
    for (int v : checker.visits) {
      if (v == 0) ++unreachable;
    }
    if (unreachable > 0) {
      checker.issues.push_back(std::to_string(unreachable) + " unreachable node(s) in arena");
    }
  }
  return std::move(checker.issues);
}

inline void require_valid(const QuestionTree& t, int n_outcomes) {
  const auto issues = validate(t, n_outcomes);
  if (!issues.empty()) {
    std::string msg = "invalid question tree:";
    for (const auto& s : issues) msg += " [" + s + "]";
    throw ValidationError(msg);
  }
}

inline void require_valid(const QuestionTree& t, const Distribution& d) {
  require_valid(t, d.size());
}

namespace detail {

inline int count_leaves(const QuestionTree& t, int id) {
  const auto& nd = t.node(id);
  if (nd.is_leaf()) return 1;
  return count_leaves(t, nd.yes) + count_leaves(t, nd.no);
}

inline int reachable_leaf_count(const QuestionTree& t) {
  if (t.root() < 0 || t.root() >= t.node_count()) return 0;
  return count_leaves(t, t.root());
}

// Reach probability of every node, indexed by node id.
inline std::vector<Rational> node_masses(const QuestionTree& t, const Distribution& d) {
  std::vector<Rational> mass(static_cast<std::size_t>(t.node_count()));
  const auto fill = [&](auto&& self, int id) -> Rational {
    const auto& nd = t.node(id);
    Rational m = nd.is_leaf() ? d.p(nd.outcome) : self(self, nd.yes) + self(self, nd.no);
    mass[static_cast<std::size_t>(id)] = m;
    return m;
  };
  fill(fill, t.root());
  return mass;
}

}  // namespace detail

/// Codeword per outcome: the root-to-leaf answer string, '1' for yes and
/// '0' for no. The set is prefix-free.
inline std::vector<std::string> codewords(const QuestionTree& t) {
  const int n = detail::reachable_leaf_count(t);
  require_valid(t, n);
  std::vector<std::string> words(static_cast<std::size_t>(n));
  const auto walk = [&](auto&& self, int id, std::string& prefix) -> void {
    const auto& nd = t.node(id);
    if (nd.is_leaf()) {
      words[static_cast<std::size_t>(nd.outcome)] = prefix;
      return;
    }
    prefix.push_back('1');
    self(self, nd.yes, prefix);
    prefix.back() = '0';
    self(self, nd.no, prefix);
    prefix.pop_back();
  };
  std::string prefix;
  walk(walk, t.root(), prefix);
  return words;
}

/// Exact expected number of questions: sum of p_i * depth(leaf_i).
inline Rational expected_questions(const QuestionTree& t, const Distribution& d) {
  require_valid(t, d);
  Rational total;
  const auto walk = [&](auto&& self, int id, long long depth) -> void {
    const auto& nd = t.node(id);
    if (nd.is_leaf()) {
      total += Rational(depth) * d.p(nd.outcome);
      return;
    }
    self(self, nd.yes, depth + 1);
    self(self, nd.no, depth + 1);
  };
  walk(walk, t.root(), 0);
  return total;
}

/// Sum of reach probabilities over internal nodes. Equals
/// expected_questions on every valid tree: each merge/division step costs
/// one bit weighted by the mass it touches.
inline Rational internal_mass_sum(const QuestionTree& t, const Distribution& d) {
  require_valid(t, d);
  const auto mass = detail::node_masses(t, d);
  Rational total;
  for (int id = 0; id < t.node_count(); ++id) {
    if (!t.node(id).is_leaf()) total += mass[static_cast<std::size_t>(id)];
  }
  return total;
}

/// Information gathered by the questioning process: sum over internal
/// nodes of reach probability times the binary entropy of the split.
/// Equals the source entropy for every valid tree (chain rule).
inline double information_yield_bits(const QuestionTree& t, const Distribution& d) {
  require_valid(t, d);
  const auto mass = detail::node_masses(t, d);
  double bits = 0.0;
  for (int id = 0; id < t.node_count(); ++id) {
    const auto& nd = t.node(id);
    if (nd.is_leaf()) continue;
    const Rational& m = mass[static_cast<std::size_t>(id)];
    bits += m.to_double() * binary_entropy_bits(mass[static_cast<std::size_t>(nd.yes)] / m);
  }
  return bits;
}

/// Information received along the root-to-leaf path of one outcome:
/// sum of -log2 P(observed answer | node reached). Telescopes to
/// surprisal_bits(p_outcome).
inline double path_surprisal_bits(const QuestionTree& t, const Distribution& d, int outcome) {
  require_valid(t, d);
  if (outcome < 0 || outcome >= d.size()) {
    throw std::out_of_range("unknown outcome index " + std::to_string(outcome));
  }
  const auto mass = detail::node_masses(t, d);
  double bits = 0.0;
  int id = t.root();
  while (!t.node(id).is_leaf()) {
    const auto& nd = t.node(id);
    const bool yes = std::binary_search(nd.yes_set.begin(), nd.yes_set.end(), outcome);
    const int child = yes ? nd.yes : nd.no;
    bits += surprisal_bits(mass[static_cast<std::size_t>(child)] / mass[static_cast<std::size_t>(id)]);
    id = child;
  }
  return bits;
}

struct DepthBucket {
  int leaves = 0;
  Rational probability;
};

/// Leaf count and probability mass per depth (depth = questions asked).
inline std::map<int, DepthBucket> depth_histogram(const QuestionTree& t, const Distribution& d) {
  require_valid(t, d);
  std::map<int, DepthBucket> hist;
  const auto walk = [&](auto&& self, int id, int depth) -> void {
    const auto& nd = t.node(id);
    if (nd.is_leaf()) {
      auto& bucket = hist[depth];
      bucket.leaves += 1;
      bucket.probability += d.p(nd.outcome);
      return;
    }
    self(self, nd.yes, depth + 1);
    self(self, nd.no, depth + 1);
  };
  walk(walk, t.root(), 0);
  return hist;
}

/// Kraft sum over leaves: sum of 2^-depth. Exactly 1 for full trees.
inline Rational kraft_sum(const QuestionTree& t) {
  require_valid(t, detail::reachable_leaf_count(t));
  Rational total;
  const auto walk = [&](auto&& self, int id, int depth) -> void {
    const auto& nd = t.node(id);
    if (nd.is_leaf()) {
      total += Rational(BigInt(1), BigInt(1) << depth);
      return;
    }
    self(self, nd.yes, depth + 1);
    self(self, nd.no, depth + 1);
  };
  walk(walk, t.root(), 0);
  return total;
}

/// Everything the exact analyses can say about one strategy tree.
struct StrategyReport {
  Rational expected_questions;
  double expected_questions_decimal = 0.0;
  double entropy_bits = 0.0;
  double information_yield_bits = 0.0;
  double redundancy_bits = 0.0;  // expected_questions_decimal - entropy_bits
  std::map<int, DepthBucket> depth_histogram;
  std::map<std::string, std::string> codewords;  // outcome label -> bit string
};

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// Graphviz rendering. Internal nodes show the question (their yes_set
/// labels) and exact reach probability; edges are labeled Yes/No. Node
/// ids follow pre-order, yes branch first, so output is deterministic.
inline std::string export_dot(const QuestionTree& t, const Distribution& d) {
  require_valid(t, d);
  const auto mass = detail::node_masses(t, d);
  std::vector<int> order;
  std::vector<int> name(static_cast<std::size_t>(t.node_count()), -1);
  const auto number = [&](auto&& self, int id) -> void {
    name[static_cast<std::size_t>(id)] = static_cast<int>(order.size());
    order.push_back(id);
    const auto& nd = t.node(id);
    if (!nd.is_leaf()) {
      self(self, nd.yes);
      self(self, nd.no);
    }
  };
  number(number, t.root());

  std::string out = "digraph question_tree {\n";
  for (int id : order) {
    const auto& nd = t.node(id);
    const std::string p = mass[static_cast<std::size_t>(id)].str();
    out += "  n" + std::to_string(name[static_cast<std::size_t>(id)]);
    if (nd.is_leaf()) {
      out += " [shape=oval, label=\"" + detail::dot_escape(d.label(nd.outcome)) + "\\np = " + p + "\"];\n";
    } else {
      std::string labels;
      for (std::size_t i = 0; i < nd.yes_set.size(); ++i) {
        if (i > 0) labels += ", ";
        labels += d.label(nd.yes_set[static_cast<std::size_t>(i)]);
      }
      out += " [shape=box, label=\"{" + detail::dot_escape(labels) + "}\\np = " + p + "\"];\n";
    }
  }
  for (int id : order) {
    const auto& nd = t.node(id);
    if (nd.is_leaf()) continue;
    const std::string me = std::to_string(name[static_cast<std::size_t>(id)]);
    out += "  n" + me + " -> n" + std::to_string(name[static_cast<std::size_t>(nd.yes)]) + " [label=\"Yes\"];\n";
    out += "  n" + me + " -> n" + std::to_string(name[static_cast<std::size_t>(nd.no)]) + " [label=\"No\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace yesno
