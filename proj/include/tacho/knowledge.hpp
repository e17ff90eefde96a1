#pragma once

// Explicit-to-inferable knowledge over propositional literals.
//
// infer_step fires every rule whose premises are all known, once. It is
// reflexive and monotone but not idempotent; infer_fixpoint iterates it to
// the least fixed point.

#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace tacho::knowledge {

struct Proposition {
  std::string atom;
  bool negated{false};

  Proposition negation() const { return {atom, !negated}; }
  std::string text() const { return (negated ? "!" : "") + atom; }

  auto operator<=>(const Proposition&) const = default;
};

// "A" or "!A".
inline Proposition parse_proposition(std::string_view s) {
  const bool neg = !s.empty() && s.front() == '!';
  if (neg) s.remove_prefix(1);
  if (s.empty()) throw std::invalid_argument("empty proposition");
  return {std::string(s), neg};
}

using KnowledgeBase = std::set<Proposition>;

struct InferenceRule {
  std::set<Proposition> premises;
  Proposition conclusion;

  InferenceRule(std::set<Proposition> p, Proposition c)
      : premises(std::move(p)), conclusion(std::move(c)) {
    if (premises.empty()) throw std::invalid_argument("inference rule needs at least one premise");
  }
};

class Inconsistent : public std::runtime_error {
 public:
  explicit Inconsistent(const Proposition& p)
      : std::runtime_error("knowledge base derives both " + p.text() + " and " +
                           p.negation().text()) {}
};

inline bool is_consistent(const KnowledgeBase& kb) {
  for (const auto& p : kb) {
    if (!p.negated && kb.count(p.negation())) return false;
  }
  return true;
}

inline KnowledgeBase infer_step(const KnowledgeBase& kb, const std::vector<InferenceRule>& rules) {
  KnowledgeBase out = kb;
  for (const auto& r : rules) {
    bool fires = true;
    for (const auto& p : r.premises) {
      if (!kb.count(p)) {
        fires = false;
        break;
      }
    }
    if (fires) out.insert(r.conclusion);
  }
  return out;
}

inline KnowledgeBase infer_fixpoint(KnowledgeBase kb, const std::vector<InferenceRule>& rules) {
  while (true) {
    auto next = infer_step(kb, rules);
    if (next.size() == kb.size()) return kb;
    kb = std::move(next);
  }
}

enum class Answer { Yes, No, Unknown };

inline std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "?";
}

inline Answer answer_query(const KnowledgeBase& kb, const std::vector<InferenceRule>& rules,
                           const Proposition& q) {
  const auto closed = infer_fixpoint(kb, rules);
  const bool yes = closed.count(q) > 0;
  const bool no = closed.count(q.negation()) > 0;
  if (yes && no) throw Inconsistent(q);
  if (yes) return Answer::Yes;
  if (no) return Answer::No;
  return Answer::Unknown;
}

struct KnowledgeDocument {
  KnowledgeBase facts;
  std::vector<InferenceRule> rules;
};

// {"facts": ["A", "!B"], "rules": [{"premises": ["A"], "conclusion": "C"}]}
inline KnowledgeDocument load_knowledge(std::string_view json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  KnowledgeDocument out;
  if (doc.contains("facts")) {
    for (const auto& f : doc.at("facts")) out.facts.insert(parse_proposition(f.get<std::string>()));
  }
  if (doc.contains("rules")) {
    for (const auto& r : doc.at("rules")) {
      std::set<Proposition> premises;
      for (const auto& p : r.at("premises")) premises.insert(parse_proposition(p.get<std::string>()));
      out.rules.emplace_back(std::move(premises),
                             parse_proposition(r.at("conclusion").get<std::string>()));
    }
  }
  return out;
}

}  // namespace tacho::knowledge
