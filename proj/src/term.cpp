#include "omqa/term.hpp"

#include <stdexcept>

namespace omqa {

namespace {

Term make(TermKind kind, std::string name) {
  if (name.empty()) throw std::invalid_argument("term name must be non-empty");
  return Term{kind, std::move(name)};
}

}  // namespace

Term Term::constant(std::string name) { return make(TermKind::Constant, std::move(name)); }
Term Term::variable(std::string name) { return make(TermKind::Variable, std::move(name)); }
Term Term::null(std::string name) { return make(TermKind::Null, std::move(name)); }

bool Atom::isGround() const {
  for (const auto& t : args)
    if (t.isVariable()) return false;
  return true;
}

std::string toString(const Term& term) {
  if (term.isNull()) return "_" + term.name;
  return term.name;
}

std::string toString(const Atom& atom) {
  std::string out = atom.relation + "(";
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ",";
    out += toString(atom.args[i]);
  }
  return out + ")";
}

std::string toString(const Equality& eq) { return toString(eq.lhs) + " = " + toString(eq.rhs); }

std::ostream& operator<<(std::ostream& os, const Term& term) { return os << toString(term); }
std::ostream& operator<<(std::ostream& os, const Atom& atom) { return os << toString(atom); }

}  // namespace omqa
