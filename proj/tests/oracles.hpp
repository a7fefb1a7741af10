#pragma once

// Independent brute-force reference implementations. Nothing here calls the
// library's search code; only the plain data types are shared.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "omqa/ded.hpp"
#include "omqa/instance.hpp"
#include "omqa/query.hpp"

namespace oracle {

using omqa::Atom;
using omqa::Instance;
using omqa::Term;

inline std::set<Term> termsOf(const std::vector<Atom>& atoms) {
  std::set<Term> out;
  for (const auto& a : atoms) out.insert(a.args.begin(), a.args.end());
  return out;
}

/// Calls visit(f) for every total function from `domain` to `range`.
inline bool forEachFunction(const std::vector<Term>& domain, const std::vector<Term>& range,
                            const std::function<bool(const std::map<Term, Term>&)>& visit) {
  if (range.empty() && !domain.empty()) return true;
  std::vector<std::size_t> digits(domain.size(), 0);
  for (;;) {
    std::map<Term, Term> f;
    for (std::size_t i = 0; i < domain.size(); ++i) f.emplace(domain[i], range[digits[i]]);
    if (!visit(f)) return false;
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == range.size()) digits[k++] = 0;
    if (k == digits.size()) return true;
  }
}

inline Atom substitute(const Atom& a, const std::map<Term, Term>& f) {
  Atom out = a;
  for (auto& t : out.args)
    if (auto it = f.find(t); it != f.end()) t = it->second;
  return out;
}

/// Exhaustive C-homomorphism test over all |adom(J)|^|adom(I)| functions.
inline bool homomorphismExists(const Instance& source, const Instance& target,
                               const std::set<Term>& fixed, bool injective) {
  auto src = source.activeDomain();
  auto tgt = target.activeDomain();
  for (const auto& c : fixed)
    if (!tgt.count(c)) return false;
  std::vector<Term> domain(src.begin(), src.end());
  std::vector<Term> range(tgt.begin(), tgt.end());
  bool found = false;
  forEachFunction(domain, range, [&](const std::map<Term, Term>& f) {
    for (const auto& [x, y] : f)
      if (fixed.count(x) && x != y) return true;
    if (injective) {
      std::set<Term> image;
      for (const auto& [x, y] : f) image.insert(y);
      if (image.size() != f.size()) return true;
    }
    for (const auto& a : source)
      if (!target.contains(substitute(a, f))) return true;
    found = true;
    return false;
  });
  return found;
}

/// I ⊨ p by enumerating every assignment of p's variables into adom(I).
inline bool satisfies(const Instance& instance, const omqa::CQ& query) {
  auto vars = query.variables();
  std::vector<Term> domain(vars.begin(), vars.end());
  auto adom = instance.activeDomain();
  std::vector<Term> range(adom.begin(), adom.end());
  bool found = false;
  forEachFunction(domain, range, [&](const std::map<Term, Term>& f) {
    for (const auto& a : query.atoms)
      if (!instance.contains(substitute(a, f))) return true;
    found = true;
    return false;
  });
  return found;
}

inline bool satisfies(const Instance& instance, const omqa::UCQ& query) {
  return std::any_of(query.disjuncts().begin(), query.disjuncts().end(),
                     [&](const omqa::CQ& d) { return satisfies(instance, d); });
}

/// Freezes the variables of a CQ into nulls.
inline Instance freeze(const omqa::CQ& query) {
  Instance out;
  for (const auto& a : query.atoms) {
    Atom g = a;
    for (auto& t : g.args)
      if (t.isVariable()) t = Term::null(t.name);
    out.insert(g);
  }
  return out;
}

/// p ⊨ q: every disjunct of p, frozen, satisfies q.
inline bool implies(const omqa::UCQ& p, const omqa::UCQ& q) {
  return std::all_of(p.disjuncts().begin(), p.disjuncts().end(),
                     [&](const omqa::CQ& d) { return satisfies(freeze(d), q); });
}

/// Does every body match extend to some head disjunct? Checked by brute force
/// over assignments into adom(I).
inline bool modelOf(const Instance& instance, const omqa::DED& rule) {
  auto adom = instance.activeDomain();
  std::vector<Term> range(adom.begin(), adom.end());
  auto bodyVars = termsOf(rule.body());
  std::vector<Term> domain;
  for (const auto& t : bodyVars)
    if (t.isVariable()) domain.push_back(t);
  bool ok = true;
  forEachFunction(domain, range, [&](const std::map<Term, Term>& f) {
    for (const auto& a : rule.body())
      if (!instance.contains(substitute(a, f))) return true;
    bool someHead = false;
    for (const auto& head : rule.heads()) {
      std::set<Term> ex;
      for (const auto& t : head.variables())
        if (!f.count(t)) ex.insert(t);
      std::vector<Term> exv(ex.begin(), ex.end());
      forEachFunction(exv, range, [&](const std::map<Term, Term>& g) {
        std::map<Term, Term> h = f;
        h.insert(g.begin(), g.end());
        for (const auto& a : head.atoms)
          if (!instance.contains(substitute(a, h))) return true;
        for (const auto& e : head.equalities) {
          Term l = e.lhs.isVariable() ? h.at(e.lhs) : e.lhs;
          Term r = e.rhs.isVariable() ? h.at(e.rhs) : e.rhs;
          if (l != r) return true;
        }
        someHead = true;
        return false;
      });
      if (someHead) break;
    }
    if (!someHead) ok = false;
    return ok;
  });
  return ok;
}

/// All inclusion-minimal hitting sets by subset enumeration of the universe.
template <typename T>
std::set<std::set<T>> hittingSets(const std::vector<std::set<T>>& family, bool cardinality) {
  std::set<T> universe;
  for (const auto& m : family) universe.insert(m.begin(), m.end());
  std::vector<T> items(universe.begin(), universe.end());
  std::vector<std::set<T>> hitting;
  for (std::size_t mask = 0; mask < (std::size_t{1} << items.size()); ++mask) {
    std::set<T> h;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (mask >> i & 1) h.insert(items[i]);
    bool hits = std::all_of(family.begin(), family.end(), [&](const std::set<T>& m) {
      return std::any_of(m.begin(), m.end(), [&](const T& x) { return h.count(x) > 0; });
    });
    if (hits) hitting.push_back(h);
  }
  std::set<std::set<T>> minimal;
  for (const auto& h : hitting) {
    bool isMin = std::none_of(hitting.begin(), hitting.end(), [&](const std::set<T>& g) {
      return g.size() < h.size() && std::includes(h.begin(), h.end(), g.begin(), g.end());
    });
    if (isMin) minimal.insert(h);
  }
  if (cardinality && !minimal.empty()) {
    std::size_t best = minimal.begin()->size();
    for (const auto& h : minimal) best = std::min(best, h.size());
    std::set<std::set<T>> out;
    for (const auto& h : minimal)
      if (h.size() == best) out.insert(h);
    return out;
  }
  return minimal;
}

/// Non-empty subsets of {0..n-1}, each as a sorted index list.
inline std::vector<std::vector<std::size_t>> nonEmptySubsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

/// Random instance over `relations` (name, arity) using constants c0..c{k-1}.
inline Instance randomInstance(std::mt19937& rng,
                               const std::vector<std::pair<std::string, std::size_t>>& relations,
                               std::size_t constants, std::size_t maxFacts) {
  std::uniform_int_distribution<std::size_t> rel(0, relations.size() - 1);
  std::uniform_int_distribution<std::size_t> con(0, constants - 1);
  std::uniform_int_distribution<std::size_t> count(1, maxFacts);
  Instance out;
  std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [name, arity] = relations[rel(rng)];
    Atom a{name, {}};
    for (std::size_t k = 0; k < arity; ++k)
      a.args.push_back(Term::constant("c" + std::to_string(con(rng))));
    out.insert(a);
  }
  return out;
}

}  // namespace oracle
