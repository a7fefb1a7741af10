#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <vector>

namespace omqa {

enum class TermKind { Constant, Variable, Null };

/// A constant, a variable or a labelled null. The three kinds never compare
/// equal to each other even when their names coincide.
struct Term {
  TermKind kind = TermKind::Constant;
  std::string name;

  static Term constant(std::string name);
  static Term variable(std::string name);
  static Term null(std::string name);

  bool isConstant() const { return kind == TermKind::Constant; }
  bool isVariable() const { return kind == TermKind::Variable; }
  bool isNull() const { return kind == TermKind::Null; }

  auto operator<=>(const Term&) const = default;
};

/// Relational atom R(t1, ..., tk).
struct Atom {
  std::string relation;
  std::vector<Term> args;

  bool isGround() const;
  auto operator<=>(const Atom&) const = default;
};

/// Equality atom t1 = t2; only allowed in rule heads.
struct Equality {
  Term lhs;
  Term rhs;

  auto operator<=>(const Equality&) const = default;
};

std::string toString(const Term& term);
std::string toString(const Atom& atom);
std::string toString(const Equality& eq);

std::ostream& operator<<(std::ostream& os, const Term& term);
std::ostream& operator<<(std::ostream& os, const Atom& atom);

}  // namespace omqa
