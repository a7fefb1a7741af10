#include "omqa/dbenum.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "omqa/error.hpp"

namespace omqa {

namespace {

constexpr std::size_t kMaxUncappedFacts = 24;

std::vector<Term> freshConstants(const std::set<Term>& fixed, std::size_t count) {
  std::vector<Term> out;
  for (std::size_t i = 1; out.size() < count; ++i) {
    Term c = Term::constant("c" + std::to_string(i));
    if (!fixed.count(c)) out.push_back(c);
  }
  return out;
}

void allTuples(std::size_t arity, const std::vector<Term>& pool, std::vector<Term>& prefix,
               std::vector<std::vector<Term>>& out) {
  if (prefix.size() == arity) {
    out.push_back(prefix);
    return;
  }
  for (const auto& t : pool) {
    prefix.push_back(t);
    allTuples(arity, pool, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Atom> candidateFacts(const Schema& schema, const std::vector<Term>& pool) {
  std::vector<Atom> facts;
  for (const auto& [name, info] : schema.all()) {
    std::vector<std::vector<Term>> tuples;
    std::vector<Term> prefix;
    allTuples(info.arity, pool, prefix, tuples);
    for (auto& t : tuples) facts.push_back(Atom{name, std::move(t)});
  }
  return facts;
}

}  // namespace

std::string canonicalKey(const Database& database, const std::set<Term>& fixed) {
  std::vector<Term> movable;
  for (const auto& t : database.activeDomain())
    if (!fixed.count(t)) movable.push_back(t);
  std::vector<std::size_t> perm(movable.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Term> names = freshConstants(fixed, movable.size());
  // Distinct from any fixed constant so renamed terms never collide with them.
  for (auto& n : names) n = Term::null(n.name);

  std::optional<std::vector<Atom>> best;
  do {
    std::map<Term, Term> rename;
    for (std::size_t i = 0; i < movable.size(); ++i) rename.emplace(movable[i], names[perm[i]]);
    std::vector<Atom> image;
    image.reserve(database.size());
    for (const auto& f : database) {
      Atom g = f;
      for (auto& x : g.args)
        if (auto it = rename.find(x); it != rename.end()) x = it->second;
      image.push_back(std::move(g));
    }
    std::sort(image.begin(), image.end());
    if (!best || image < *best) best = std::move(image);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::string key;
  for (const auto& a : *best) key += toString(a) + ";";
  return key;
}

std::vector<Database> enumerateDatabases(const Schema& schema, const std::set<Term>& fixed,
                                         std::size_t maxConstants,
                                         std::optional<std::size_t> maxFacts) {
  std::vector<Database> out;
  std::set<std::string> seen;
  auto keep = [&](const Database& d) {
    if (d.activeDomain().size() > maxConstants) return;
    if (seen.insert(canonicalKey(d, fixed)).second) out.push_back(d);
  };
  keep(Database{});
  if (schema.empty()) return out;

  std::vector<Term> fixedList(fixed.begin(), fixed.end());
  std::size_t freshMax = maxConstants;
  for (std::size_t k = 0; k <= freshMax; ++k) {
    std::vector<Term> fresh = freshConstants(fixed, k);
    std::vector<Term> pool = fixedList;
    pool.insert(pool.end(), fresh.begin(), fresh.end());
    if (pool.empty()) continue;
    std::vector<Atom> facts = candidateFacts(schema, pool);
    std::size_t cap = maxFacts ? std::min(*maxFacts, facts.size()) : facts.size();
    if (!maxFacts && facts.size() > kMaxUncappedFacts)
      throw Error("database enumeration over " + std::to_string(facts.size()) +
                  " candidate facts needs a fact cap");

    std::set<Term> freshSet(fresh.begin(), fresh.end());
    auto consider = [&](const std::vector<Atom>& chosen) {
      Database d(chosen);
      auto adom = d.activeDomain();
      // Each fresh constant must occur; smaller k already covered the rest.
      for (const auto& c : freshSet)
        if (!adom.count(c)) return;
      keep(d);
    };

    // Subsets of size <= cap, in order of size.
    std::vector<Atom> chosen;
    std::vector<std::size_t> idx;
    for (std::size_t size = 1; size <= cap; ++size) {
      idx.resize(size);
      std::iota(idx.begin(), idx.end(), 0);
      for (;;) {
        chosen.clear();
        for (auto i : idx) chosen.push_back(facts[i]);
        consider(chosen);
        std::size_t p = size;
        while (p > 0 && idx[p - 1] == facts.size() - size + p - 1) --p;
        if (p == 0) break;
        ++idx[p - 1];
        for (std::size_t q = p; q < size; ++q) idx[q] = idx[q - 1] + 1;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Database& a, const Database& b) {
    auto na = a.activeDomain().size();
    auto nb = b.activeDomain().size();
    if (na != nb) return na < nb;
    return a.size() < b.size();
  });
  return out;
}

}  // namespace omqa
