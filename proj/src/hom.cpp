#include "omqa/hom.hpp"

#include <limits>

namespace omqa {

Matcher::Matcher(std::span<const Atom> pattern, const Instance& target, FreePredicate isFree)
    : pattern_(pattern.begin(), pattern.end()), target_(target), isFree_(std::move(isFree)) {}

Matcher& Matcher::injective(std::set<Term> reserved) {
  injective_ = true;
  reserved_ = std::move(reserved);
  return *this;
}

Matcher& Matcher::seed(Mapping initial) {
  initial_ = std::move(initial);
  return *this;
}

bool Matcher::consistent(const Atom& pattern, const Atom& fact, const Mapping& binding,
                         const std::set<Term>& used) const {
  if (pattern.args.size() != fact.args.size()) return false;
  // Bindings introduced by this very atom (repeated free terms).
  Mapping local;
  std::set<Term> localImages;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& s = pattern.args[i];
    const Term& t = fact.args[i];
    if (!isFree_(s)) {
      if (s != t) return false;
      continue;
    }
    if (auto it = binding.find(s); it != binding.end()) {
      if (it->second != t) return false;
      continue;
    }
    if (auto it = local.find(s); it != local.end()) {
      if (it->second != t) return false;
      continue;
    }
    if (injective_ && (used.count(t) || reserved_.count(t) || localImages.count(t))) return false;
    local.emplace(s, t);
    localImages.insert(t);
  }
  return true;
}

bool Matcher::search(std::vector<bool>& done, std::size_t remaining, Mapping& binding,
                     std::set<Term>& used, const Visitor& visit) const {
  if (remaining == 0) return visit(binding);

  // Forward checking: the atom with the fewest consistent facts goes next.
  std::size_t best = pattern_.size();
  std::vector<const Atom*> bestCandidates;
  std::size_t bestCount = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < pattern_.size(); ++i) {
    if (done[i]) continue;
    std::vector<const Atom*> candidates;
    auto [first, last] = target_.relation(pattern_[i].relation);
    for (auto it = first; it != last; ++it)
      if (consistent(pattern_[i], *it, binding, used)) candidates.push_back(&*it);
    if (candidates.empty()) return true;
    if (candidates.size() < bestCount) {
      best = i;
      bestCount = candidates.size();
      bestCandidates = std::move(candidates);
      if (bestCount == 1) break;
    }
  }

  const Atom& atom = pattern_[best];
  done[best] = true;
  for (const Atom* fact : bestCandidates) {
    std::vector<Term> added;
    for (std::size_t k = 0; k < atom.args.size(); ++k) {
      const Term& s = atom.args[k];
      if (!isFree_(s) || binding.count(s)) continue;
      binding.emplace(s, fact->args[k]);
      if (injective_) used.insert(fact->args[k]);
      added.push_back(s);
    }
    bool keepGoing = search(done, remaining - 1, binding, used, visit);
    for (const auto& s : added) {
      if (injective_) used.erase(binding[s]);
      binding.erase(s);
    }
    if (!keepGoing) {
      done[best] = false;
      return false;
    }
  }
  done[best] = false;
  return true;
}

bool Matcher::forEach(const Visitor& visit) const {
  Mapping binding = initial_;
  std::set<Term> used;
  if (injective_) {
    for (const auto& [s, t] : binding) {
      if (used.count(t) || reserved_.count(t)) return true;
      used.insert(t);
    }
  }
  std::vector<bool> done(pattern_.size(), false);
  return search(done, pattern_.size(), binding, used, visit);
}

std::optional<Mapping> Matcher::first() const {
  std::optional<Mapping> out;
  forEach([&](const Mapping& m) {
    out = m;
    return false;
  });
  return out;
}

Matcher variableMatcher(std::span<const Atom> pattern, const Instance& target) {
  return Matcher(pattern, target, [](const Term& t) { return t.isVariable(); });
}

std::optional<Mapping> findHomomorphism(const Instance& source, const Instance& target,
                                        const std::set<Term>& fixed, bool injective) {
  auto targetDomain = target.activeDomain();
  auto sourceDomain = source.activeDomain();
  for (const auto& c : fixed)
    if (!targetDomain.count(c)) return std::nullopt;

  std::vector<Atom> pattern(source.begin(), source.end());
  Matcher matcher(pattern, target, [&](const Term& t) { return !fixed.count(t); });
  if (injective) {
    std::set<Term> reserved;
    for (const auto& c : fixed)
      if (sourceDomain.count(c)) reserved.insert(c);
    matcher.injective(std::move(reserved));
  }
  auto found = matcher.first();
  if (!found) return std::nullopt;
  for (const auto& t : sourceDomain)
    if (fixed.count(t)) found->emplace(t, t);
  return found;
}

bool evaluateCQ(const Instance& instance, const CQ& query) {
  return variableMatcher(query.atoms, instance).exists();
}

bool evaluateUCQ(const Instance& instance, const UCQ& query) {
  for (const auto& d : query.disjuncts())
    if (evaluateCQ(instance, d)) return true;
  return false;
}

bool ucqContains(const UCQ& p, const UCQ& q) {
  for (const auto& pi : p.disjuncts()) {
    Instance frozen = canonicalDatabase(pi);
    bool covered = false;
    for (const auto& qj : q.disjuncts()) {
      if (evaluateCQ(frozen, qj)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool ucqEquivalent(const UCQ& p, const UCQ& q) { return ucqContains(p, q) && ucqContains(q, p); }

bool isomorphic(const Instance& lhs, const Instance& rhs, const std::set<Term>& fixed) {
  if (lhs.size() != rhs.size()) return false;
  auto ld = lhs.activeDomain();
  auto rd = rhs.activeDomain();
  if (ld.size() != rd.size()) return false;
  std::set<Term> sharedFixed;
  for (const auto& c : fixed) {
    bool inL = ld.count(c) > 0;
    bool inR = rd.count(c) > 0;
    if (inL != inR) return false;
    if (inL) sharedFixed.insert(c);
  }
  return findHomomorphism(lhs, rhs, sharedFixed, true).has_value();
}

}  // namespace omqa
