#include "omqa/query.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "omqa/error.hpp"

namespace omqa {

std::set<Term> CQ::variables() const {
  std::set<Term> out;
  for (const auto& a : atoms)
    for (const auto& t : a.args)
      if (t.isVariable()) out.insert(t);
  return out;
}

std::set<Term> CQ::constants() const {
  std::set<Term> out;
  for (const auto& a : atoms)
    for (const auto& t : a.args)
      if (t.isConstant()) out.insert(t);
  return out;
}

std::vector<Term> CQ::orderedVariables() const {
  std::vector<Term> out;
  std::set<Term> seen;
  for (const auto& a : atoms)
    for (const auto& t : a.args)
      if (t.isVariable() && seen.insert(t).second) out.push_back(t);
  return out;
}

namespace {

void sortUnique(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

std::vector<Atom> renameByFirstOccurrence(const std::vector<Atom>& atoms, const std::string& prefix) {
  std::map<Term, Term> renaming;
  std::vector<Atom> out = atoms;
  for (auto& a : out) {
    for (auto& t : a.args) {
      if (!t.isVariable()) continue;
      auto it = renaming.find(t);
      if (it == renaming.end())
        it = renaming.emplace(t, Term::variable(prefix + std::to_string(renaming.size()))).first;
      t = it->second;
    }
  }
  return out;
}

}  // namespace

CQ canonical(const CQ& query) {
  std::vector<Atom> atoms = query.atoms;
  sortUnique(atoms);
  // Rename and re-sort until the ordering is stable. A cycle is broken by
  // taking its least state, which keeps the result idempotent.
  std::vector<std::vector<Atom>> seen{atoms};
  for (;;) {
    auto next = renameByFirstOccurrence(atoms, "V");
    sortUnique(next);
    if (next == atoms) break;
    auto cycleStart = std::find(seen.begin(), seen.end(), next);
    if (cycleStart != seen.end()) {
      atoms = *std::min_element(cycleStart, seen.end());
      break;
    }
    seen.push_back(next);
    atoms = std::move(next);
  }
  return CQ{std::move(atoms)};
}

UCQ::UCQ(std::vector<CQ> disjuncts) {
  if (disjuncts.empty()) throw Error("a UCQ needs at least one disjunct");
  for (auto& d : disjuncts) {
    if (d.atoms.empty()) throw Error("a CQ needs at least one atom");
    for (const auto& a : d.atoms) {
      if (a.args.empty()) throw Error("atom " + a.relation + " has no arguments");
      for (const auto& t : a.args)
        if (t.isNull()) throw Error("queries cannot mention labelled nulls");
    }
    d = canonical(d);
  }
  std::sort(disjuncts.begin(), disjuncts.end());
  disjuncts.erase(std::unique(disjuncts.begin(), disjuncts.end()), disjuncts.end());
  disjuncts_ = std::move(disjuncts);
  size_ = 0;
  for (const auto& d : disjuncts_) size_ += d.atoms.size();
}

UCQ::UCQ(CQ disjunct) : UCQ(std::vector<CQ>{std::move(disjunct)}) {}

std::set<Term> UCQ::constants() const {
  std::set<Term> out;
  for (const auto& d : disjuncts_) {
    auto c = d.constants();
    out.insert(c.begin(), c.end());
  }
  return out;
}

std::set<std::string> UCQ::relations() const {
  std::set<std::string> out;
  for (const auto& d : disjuncts_)
    for (const auto& a : d.atoms) out.insert(a.relation);
  return out;
}

UCQ conj(const UCQ& lhs, const UCQ& rhs) {
  std::vector<CQ> out;
  out.reserve(lhs.disjuncts_.size() * rhs.disjuncts_.size());
  for (const auto& l : lhs.disjuncts_) {
    for (const auto& r : rhs.disjuncts_) {
      CQ merged = l;
      // lhs variables are V*, so a W prefix keeps the operands apart.
      auto renamed = renameByFirstOccurrence(r.atoms, "W");
      merged.atoms.insert(merged.atoms.end(), renamed.begin(), renamed.end());
      out.push_back(std::move(merged));
    }
  }
  UCQ result(std::move(out));
  result.size_ = lhs.size_ + rhs.size_;
  return result;
}

UCQ disj(const UCQ& lhs, const UCQ& rhs) {
  std::vector<CQ> out = lhs.disjuncts_;
  out.insert(out.end(), rhs.disjuncts_.begin(), rhs.disjuncts_.end());
  UCQ result(std::move(out));
  result.size_ = std::max(result.size_, lhs.size_ + rhs.size_);
  return result;
}

std::size_t querySize(const UCQ& query) { return query.size(); }

std::strong_ordering queryCompare(const UCQ& lhs, const UCQ& rhs) {
  if (auto c = lhs.size() <=> rhs.size(); c != 0) return c;
  auto c = toString(lhs).compare(toString(rhs));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

void sortQueries(std::vector<UCQ>& queries) {
  std::sort(queries.begin(), queries.end(),
            [](const UCQ& a, const UCQ& b) { return queryCompare(a, b) < 0; });
}

bool isAcyclic(const CQ& query) {
  std::map<Term, std::size_t> index;
  for (const auto& a : query.atoms)
    for (const auto& t : a.args) index.emplace(t, index.size());
  std::vector<std::size_t> parent(index.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& a : query.atoms) {
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      for (std::size_t j = i + 1; j < a.args.size(); ++j) {
        auto u = index[a.args[i]];
        auto v = index[a.args[j]];
        if (u == v) continue;
        edges.emplace(std::min(u, v), std::max(u, v));
      }
    }
  }
  for (auto [u, v] : edges) {
    auto ru = find(u);
    auto rv = find(v);
    if (ru == rv) return false;
    parent[ru] = rv;
  }
  return true;
}

Instance canonicalDatabase(const CQ& query) {
  Instance out;
  for (auto a : query.atoms) {
    for (auto& t : a.args)
      if (t.isVariable()) t = Term::null(t.name);
    out.insert(std::move(a));
  }
  return out;
}

std::string toString(const CQ& query) {
  std::string out;
  auto vars = query.orderedVariables();
  if (!vars.empty()) {
    out += "exists ";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i) out += ",";
      out += vars[i].name;
    }
    out += ": ";
  }
  for (std::size_t i = 0; i < query.atoms.size(); ++i) {
    if (i) out += ", ";
    out += toString(query.atoms[i]);
  }
  return out;
}

std::string toString(const UCQ& query) {
  std::string out;
  for (std::size_t i = 0; i < query.disjuncts().size(); ++i) {
    if (i) out += " | ";
    out += toString(query.disjuncts()[i]);
  }
  return out;
}

}  // namespace omqa
