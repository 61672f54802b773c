#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "yesno/errors.hpp"
#include "yesno/information.hpp"
#include "yesno/rational.hpp"

namespace yesno {

// Probabilities did not sum to one; carries the exact shortfall 1 - sum.
struct SumMismatchError : ValidationError {
  SumMismatchError(const std::string& msg, Rational deficit_)
      : ValidationError(msg), deficit(std::move(deficit_)) {}
  Rational deficit;
};

/// A labeled discrete distribution. Outcome identity is the position in
/// the list; labels are display names. Immutable once constructed, with
/// every probability strictly positive and an exact rational sum of 1.
class Distribution {
 public:
  struct Outcome {
    std::string label;
    Rational p;
  };

  static Distribution from_outcomes(std::vector<Outcome> outcomes) {
    if (outcomes.empty()) {
      throw ValidationError("a distribution needs at least one outcome");
    }
    std::unordered_set<std::string_view> seen;
    Rational sum;
    for (const Outcome& o : outcomes) {
      if (o.label.empty()) {
        throw ValidationError("outcome labels must be non-empty");
      }
      if (!seen.insert(o.label).second) {
        throw ValidationError("duplicate outcome label '" + o.label + "'");
      }
      if (o.p <= Rational(0)) {
        throw ValidationError("outcome '" + o.label + "' has non-positive probability " + o.p.str());
      }
      sum += o.p;
    }
    if (sum != Rational(1)) {
      const Rational deficit = Rational(1) - sum;
      throw SumMismatchError("probabilities sum to " + sum.str() + ", not 1; off by " + deficit.str(),
                             deficit);
    }
    return Distribution(std::move(outcomes));
  }

  /// n equiprobable outcomes labeled "<prefix>1".."<prefix>N", zero-padded
  /// to the width of N.
  static Distribution uniform(int n, std::string_view label_prefix = "box") {
    if (n < 1) throw ValidationError("uniform distribution needs n >= 1");
    const std::size_t width = std::to_string(n).size();
    std::vector<Outcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      std::string digits = std::to_string(i);
      digits.insert(digits.begin(), width - digits.size(), '0');
      outcomes.push_back({std::string(label_prefix) + digits, Rational(1, n)});
    }
    return from_outcomes(std::move(outcomes));
  }

  // Document format: {"outcomes": [{"label": "...", "p": "a/b" | decimal}, ...]}
  static Distribution parse(std::string_view text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid distribution document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("outcomes") || !doc["outcomes"].is_array()) {
      throw ParseError("expected a top-level object with an \"outcomes\" array");
    }
    std::vector<Outcome> outcomes;
    for (const auto& entry : doc["outcomes"]) {
      if (!entry.is_object() || !entry.contains("label") || !entry["label"].is_string() ||
          !entry.contains("p") || !entry["p"].is_string()) {
        throw ParseError("each outcome needs a string \"label\" and a string \"p\"");
      }
      outcomes.push_back({entry["label"].get<std::string>(),
                          Rational::parse(entry["p"].get<std::string>())});
    }
    return from_outcomes(std::move(outcomes));
  }

  /// Inverse of parse: probabilities rendered as exact "a/b" strings.
  std::string render() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Outcome& o : outcomes_) {
      arr.push_back({{"label", o.label}, {"p", o.p.str()}});
    }
    nlohmann::ordered_json doc;
    doc["outcomes"] = std::move(arr);
    return doc.dump(2) + "\n";
  }

  int size() const noexcept { return static_cast<int>(outcomes_.size()); }
  const Outcome& outcome(int i) const { return outcomes_.at(static_cast<std::size_t>(i)); }
  const std::string& label(int i) const { return outcome(i).label; }
  const Rational& p(int i) const { return outcome(i).p; }
  const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }

 private:
  explicit Distribution(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {}

  std::vector<Outcome> outcomes_;
};

/// Shannon entropy in bits: sum of p_i * surprisal(p_i).
inline double entropy_bits(const Distribution& d) {
  double h = 0.0;
  for (const auto& o : d.outcomes()) {
    h += o.p.to_double() * surprisal_bits(o.p);
  }
  return h;
}

}  // namespace yesno
