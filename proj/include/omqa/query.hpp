#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "omqa/instance.hpp"
#include "omqa/term.hpp"

namespace omqa {

/// Boolean conjunctive query. Every variable is existentially quantified.
struct CQ {
  std::vector<Atom> atoms;

  std::set<Term> variables() const;
  std::set<Term> constants() const;
  /// Variables in order of first occurrence.
  std::vector<Term> orderedVariables() const;

  auto operator<=>(const CQ&) const = default;
};

/// Boolean union of conjunctive queries, always held in canonical form:
/// atoms sorted and deduplicated, variables renamed V0, V1, ... by first
/// occurrence, disjuncts sorted and deduplicated.
class UCQ {
 public:
  /// Throws Error on an empty disjunct list, an empty disjunct, or a null
  /// term inside a query.
  explicit UCQ(std::vector<CQ> disjuncts);
  UCQ(CQ disjunct);  // NOLINT: a CQ is a one-disjunct UCQ

  const std::vector<CQ>& disjuncts() const { return disjuncts_; }
  std::set<Term> constants() const;
  std::set<std::string> relations() const;

  /// ||q||. Atom count of the normal form, except for conjunctions, which
  /// carry the sum of their operand sizes.
  std::size_t size() const { return size_; }

  bool operator==(const UCQ& other) const { return disjuncts_ == other.disjuncts_; }

 private:
  friend UCQ conj(const UCQ& lhs, const UCQ& rhs);
  friend UCQ disj(const UCQ& lhs, const UCQ& rhs);

  std::vector<CQ> disjuncts_;
  std::size_t size_ = 0;
};

/// p ∧ q distributed into disjunction-of-CQs form; operand variables are
/// renamed apart. Size is ||p|| + ||q||.
UCQ conj(const UCQ& lhs, const UCQ& rhs);
/// p ∨ q.
UCQ disj(const UCQ& lhs, const UCQ& rhs);

std::size_t querySize(const UCQ& query);

/// Canonical renaming and atom ordering of a single CQ.
CQ canonical(const CQ& query);

/// Strict total order: size first, then canonical serialization.
std::strong_ordering queryCompare(const UCQ& lhs, const UCQ& rhs);

/// Sorts a pool by queryCompare.
void sortQueries(std::vector<UCQ>& queries);

/// Gaifman graph of the query (one vertex per term) is a forest.
bool isAcyclic(const CQ& query);

/// [q]: the atoms of the CQ with each variable frozen into a labelled null
/// of the same name.
Instance canonicalDatabase(const CQ& query);

std::string toString(const CQ& query);
std::string toString(const UCQ& query);

}  // namespace omqa
