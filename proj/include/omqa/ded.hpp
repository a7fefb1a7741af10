#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "omqa/schema.hpp"
#include "omqa/term.hpp"

namespace omqa {

/// One disjunct of a rule head: relational atoms and equalities over the
/// frontier plus its own existential variables.
struct HeadDisjunct {
  std::vector<Atom> atoms;
  std::vector<Equality> equalities;

  std::set<Term> variables() const;
  auto operator<=>(const HeadDisjunct&) const = default;
};

/// Disjunctive embedded dependency  body -> head_1 | ... | head_k.
/// k = 0 is falsum. Head variables absent from the body are existential in
/// their disjunct.
class DED {
 public:
  /// Throws Error on an empty body or a non-relational body.
  DED(std::vector<Atom> body, std::vector<HeadDisjunct> heads);

  const std::vector<Atom>& body() const { return body_; }
  const std::vector<HeadDisjunct>& heads() const { return heads_; }
  bool isFalsum() const { return heads_.empty(); }

  /// Body variables in order of first occurrence.
  const std::vector<Term>& bodyVariables() const { return bodyVariables_; }
  /// Body variables that also occur in some head, in body order.
  const std::vector<Term>& frontier() const { return frontier_; }
  /// Existential variables of disjunct i, sorted.
  const std::vector<Term>& existentials(std::size_t disjunct) const {
    return existentials_.at(disjunct);
  }

  bool hasEqualities() const;
  std::set<Term> constants() const;

  auto operator<=>(const DED& other) const {
    if (auto c = body_ <=> other.body_; c != 0) return c;
    return heads_ <=> other.heads_;
  }
  bool operator==(const DED& other) const {
    return body_ == other.body_ && heads_ == other.heads_;
  }

 private:
  std::vector<Atom> body_;
  std::vector<HeadDisjunct> heads_;
  std::vector<Term> bodyVariables_;
  std::vector<Term> frontier_;
  std::vector<std::vector<Term>> existentials_;
};

using Program = std::vector<DED>;

Schema inferSchema(const Program& program, Partition partition = Partition::Auxiliary);

std::string toString(const DED& rule);
std::string toString(const Program& program);

}  // namespace omqa
