#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "omqa/instance.hpp"
#include "omqa/query.hpp"

namespace omqa {

/// Finite map from source terms to target terms.
using Mapping = std::map<Term, Term>;

/// Backtracking search for maps from a pattern (a conjunction of atoms) into
/// an instance. Terms for which `isFree` holds are mapped; all other terms
/// must occur literally in the target. The next atom to match is the one with
/// the fewest consistent candidates (forward checking prunes on zero).
class Matcher {
 public:
  using FreePredicate = std::function<bool(const Term&)>;
  /// Return false from the visitor to stop the enumeration.
  using Visitor = std::function<bool(const Mapping&)>;

  Matcher(std::span<const Atom> pattern, const Instance& target, FreePredicate isFree);

  /// Images of free terms must be pairwise distinct and must avoid `reserved`.
  Matcher& injective(std::set<Term> reserved = {});
  /// Pre-binds some free terms.
  Matcher& seed(Mapping initial);

  /// Enumerates every complete match; returns false iff the visitor stopped it.
  bool forEach(const Visitor& visit) const;
  std::optional<Mapping> first() const;
  bool exists() const { return first().has_value(); }

 private:
  bool search(std::vector<bool>& done, std::size_t remaining, Mapping& binding,
              std::set<Term>& used, const Visitor& visit) const;
  bool consistent(const Atom& pattern, const Atom& fact, const Mapping& binding,
                  const std::set<Term>& used) const;

  std::vector<Atom> pattern_;
  const Instance& target_;
  FreePredicate isFree_;
  bool injective_ = false;
  std::set<Term> reserved_;
  Mapping initial_;
};

/// Pattern matcher where exactly the variables are free.
Matcher variableMatcher(std::span<const Atom> pattern, const Instance& target);

/// C-homomorphism from I to J (injective on adom(I) when requested). Returns a
/// witness total on adom(I) or nullopt when none exists.
std::optional<Mapping> findHomomorphism(const Instance& source, const Instance& target,
                                        const std::set<Term>& fixed, bool injective);

/// I ⊨ q: some disjunct p has a const(p)-homomorphism from [p] into I.
bool evaluateUCQ(const Instance& instance, const UCQ& query);
bool evaluateCQ(const Instance& instance, const CQ& query);

/// p ⊨ q, decided disjunct-wise through canonical databases.
bool ucqContains(const UCQ& p, const UCQ& q);
bool ucqEquivalent(const UCQ& p, const UCQ& q);

/// Bijective C-homomorphism between two instances.
bool isomorphic(const Instance& lhs, const Instance& rhs, const std::set<Term>& fixed);

}  // namespace omqa
