#pragma once

#include <string>
#include <vector>

#include "omqa/instance.hpp"
#include "omqa/term.hpp"

namespace omqa {

/// Quantifier-free positive formula over relational atoms and inequalities.
struct EpfoFormula {
  enum class Kind { And, Or, Atom, NotEqual };

  Kind kind = Kind::And;
  std::vector<EpfoFormula> children;
  omqa::Atom atom;
  Term lhs;
  Term rhs;

  static EpfoFormula conjunction(std::vector<EpfoFormula> parts);
  static EpfoFormula disjunction(std::vector<EpfoFormula> parts);
  static EpfoFormula relational(omqa::Atom atom);
  static EpfoFormula notEqual(Term lhs, Term rhs);

  bool operator==(const EpfoFormula&) const = default;
};

/// ∃x⃗ φ with φ built from atoms and inequalities by ∧ and ∨.
struct EpfoSentence {
  std::vector<Term> variables;
  EpfoFormula matrix;

  /// ∃X ¬(X = X), the always-false sentence.
  static EpfoSentence falsum();
  /// Empty conjunction.
  static EpfoSentence verum();

  bool operator==(const EpfoSentence&) const = default;
};

/// One conjunctive branch of a sentence in disjunctive normal form.
struct EpfoConjunct {
  std::vector<Atom> atoms;
  std::vector<std::pair<Term, Term>> inequalities;
};

std::vector<EpfoConjunct> toDnf(const EpfoFormula& formula);

/// Active-domain evaluation over a finite database. Throws Error if the
/// matrix mentions an unquantified variable.
bool evaluateEPFO(const EpfoSentence& sentence, const Instance& database);

/// Disjunction of sentences with their variables renamed apart.
EpfoSentence disjunction(const std::vector<EpfoSentence>& sentences);

/// λ_n: at least n distinct elements.
EpfoSentence atLeastSentence(std::size_t n);

/// Number of distinct terms (variables and constants) the sentence mentions.
std::size_t termCount(const EpfoSentence& sentence);

std::string toString(const EpfoSentence& sentence);

}  // namespace omqa
