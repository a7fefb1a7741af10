#include "omqa/epfo.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "omqa/error.hpp"
#include "omqa/hom.hpp"

namespace omqa {

EpfoFormula EpfoFormula::conjunction(std::vector<EpfoFormula> parts) {
  EpfoFormula f;
  f.kind = Kind::And;
  f.children = std::move(parts);
  return f;
}

EpfoFormula EpfoFormula::disjunction(std::vector<EpfoFormula> parts) {
  EpfoFormula f;
  f.kind = Kind::Or;
  f.children = std::move(parts);
  return f;
}

EpfoFormula EpfoFormula::relational(omqa::Atom atom) {
  EpfoFormula f;
  f.kind = Kind::Atom;
  f.atom = std::move(atom);
  return f;
}

EpfoFormula EpfoFormula::notEqual(Term lhs, Term rhs) {
  EpfoFormula f;
  f.kind = Kind::NotEqual;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return f;
}

EpfoSentence EpfoSentence::falsum() {
  Term x = Term::variable("X");
  return {{x}, EpfoFormula::notEqual(x, x)};
}

EpfoSentence EpfoSentence::verum() { return {{}, EpfoFormula::conjunction({})}; }

std::vector<EpfoConjunct> toDnf(const EpfoFormula& formula) {
  using Kind = EpfoFormula::Kind;
  switch (formula.kind) {
    case Kind::Atom: return {EpfoConjunct{{formula.atom}, {}}};
    case Kind::NotEqual: return {EpfoConjunct{{}, {{formula.lhs, formula.rhs}}}};
    case Kind::Or: {
      std::vector<EpfoConjunct> out;
      for (const auto& c : formula.children) {
        auto part = toDnf(c);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case Kind::And: {
      std::vector<EpfoConjunct> out{EpfoConjunct{}};
      for (const auto& c : formula.children) {
        auto part = toDnf(c);
        std::vector<EpfoConjunct> next;
        for (const auto& l : out) {
          for (const auto& r : part) {
            EpfoConjunct merged = l;
            merged.atoms.insert(merged.atoms.end(), r.atoms.begin(), r.atoms.end());
            merged.inequalities.insert(merged.inequalities.end(), r.inequalities.begin(),
                                       r.inequalities.end());
            next.push_back(std::move(merged));
          }
        }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

namespace {

Term resolve(const Term& t, const Mapping& binding) {
  if (!t.isVariable()) return t;
  auto it = binding.find(t);
  return it == binding.end() ? t : it->second;
}

/// Extends a partial assignment to the variables that only occur in
/// inequalities, checking every inequality as soon as both sides are known.
bool completeAssignment(const EpfoConjunct& conjunct, std::vector<Term> pending,
                        const std::vector<Term>& domain, Mapping& binding) {
  for (const auto& [l, r] : conjunct.inequalities) {
    Term a = resolve(l, binding);
    Term b = resolve(r, binding);
    if (!a.isVariable() && !b.isVariable() && a == b) return false;
  }
  if (pending.empty()) return true;
  Term next = pending.back();
  pending.pop_back();
  for (const auto& value : domain) {
    binding[next] = value;
    if (completeAssignment(conjunct, pending, domain, binding)) {
      binding.erase(next);
      return true;
    }
  }
  binding.erase(next);
  return false;
}

void collectVariables(const EpfoFormula& f, std::set<Term>& out) {
  using Kind = EpfoFormula::Kind;
  if (f.kind == Kind::Atom) {
    for (const auto& t : f.atom.args)
      if (t.isVariable()) out.insert(t);
  } else if (f.kind == Kind::NotEqual) {
    if (f.lhs.isVariable()) out.insert(f.lhs);
    if (f.rhs.isVariable()) out.insert(f.rhs);
  }
  for (const auto& c : f.children) collectVariables(c, out);
}

void collectTerms(const EpfoFormula& f, std::set<Term>& out) {
  using Kind = EpfoFormula::Kind;
  if (f.kind == Kind::Atom) out.insert(f.atom.args.begin(), f.atom.args.end());
  if (f.kind == Kind::NotEqual) {
    out.insert(f.lhs);
    out.insert(f.rhs);
  }
  for (const auto& c : f.children) collectTerms(c, out);
}

EpfoFormula rename(const EpfoFormula& f, const Mapping& renaming) {
  EpfoFormula out = f;
  for (auto& t : out.atom.args) t = resolve(t, renaming);
  out.lhs = resolve(out.lhs, renaming);
  out.rhs = resolve(out.rhs, renaming);
  for (auto& c : out.children) c = rename(c, renaming);
  return out;
}

std::string formulaString(const EpfoFormula& f, bool nested) {
  using Kind = EpfoFormula::Kind;
  switch (f.kind) {
    case Kind::Atom: return toString(f.atom);
    case Kind::NotEqual: return toString(f.lhs) + " != " + toString(f.rhs);
    case Kind::And:
    case Kind::Or: {
      if (f.children.empty()) return f.kind == Kind::And ? "true" : "false";
      if (f.children.size() == 1) return formulaString(f.children.front(), nested);
      std::string sep = f.kind == Kind::And ? ", " : " | ";
      std::string out;
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += sep;
        out += formulaString(f.children[i], true);
      }
      return nested ? "(" + out + ")" : out;
    }
  }
  return "";
}

}  // namespace

bool evaluateEPFO(const EpfoSentence& sentence, const Instance& database) {
  std::set<Term> quantified(sentence.variables.begin(), sentence.variables.end());
  std::set<Term> used;
  collectVariables(sentence.matrix, used);
  for (const auto& v : used)
    if (!quantified.count(v)) throw Error("EPFO sentence has free variable " + v.name);

  auto domainSet = database.activeDomain();
  std::vector<Term> domain(domainSet.begin(), domainSet.end());
  // ∃ over an empty active domain is false even when the matrix is trivial.
  if (domain.empty() && !sentence.variables.empty()) return false;

  for (const auto& conjunct : toDnf(sentence.matrix)) {
    std::set<Term> inAtoms;
    for (const auto& a : conjunct.atoms)
      for (const auto& t : a.args)
        if (t.isVariable()) inAtoms.insert(t);
    std::vector<Term> pending;
    for (const auto& [l, r] : conjunct.inequalities) {
      for (const auto& t : {l, r})
        if (t.isVariable() && !inAtoms.count(t) &&
            std::find(pending.begin(), pending.end(), t) == pending.end())
          pending.push_back(t);
    }
    bool satisfied = false;
    variableMatcher(conjunct.atoms, database).forEach([&](const Mapping& m) {
      Mapping binding = m;
      satisfied = completeAssignment(conjunct, pending, domain, binding);
      return !satisfied;
    });
    if (satisfied) return true;
  }
  return false;
}

EpfoSentence disjunction(const std::vector<EpfoSentence>& sentences) {
  if (sentences.empty()) return EpfoSentence::falsum();
  if (sentences.size() == 1) return sentences.front();
  EpfoSentence out;
  std::vector<EpfoFormula> parts;
  for (std::size_t k = 0; k < sentences.size(); ++k) {
    Mapping renaming;
    for (const auto& v : sentences[k].variables) {
      Term fresh = Term::variable(v.name + "_" + std::to_string(k + 1));
      renaming.emplace(v, fresh);
      out.variables.push_back(fresh);
    }
    parts.push_back(rename(sentences[k].matrix, renaming));
  }
  out.matrix = EpfoFormula::disjunction(std::move(parts));
  return out;
}

EpfoSentence atLeastSentence(std::size_t n) {
  EpfoSentence out;
  for (std::size_t i = 1; i <= n; ++i) out.variables.push_back(Term::variable("X" + std::to_string(i)));
  std::vector<EpfoFormula> parts;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      parts.push_back(EpfoFormula::notEqual(out.variables[i], out.variables[j]));
  out.matrix = EpfoFormula::conjunction(std::move(parts));
  return out;
}

std::size_t termCount(const EpfoSentence& sentence) {
  std::set<Term> terms(sentence.variables.begin(), sentence.variables.end());
  collectTerms(sentence.matrix, terms);
  return terms.size();
}

std::string toString(const EpfoSentence& sentence) {
  std::string out;
  if (!sentence.variables.empty()) {
    out += "exists ";
    for (std::size_t i = 0; i < sentence.variables.size(); ++i) {
      if (i) out += ",";
      out += sentence.variables[i].name;
    }
    out += ": ";
  }
  return out + formulaString(sentence.matrix, false);
}

}  // namespace omqa
