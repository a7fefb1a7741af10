#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "omqa/error.hpp"
#include "omqa/instance.hpp"
#include "omqa/query.hpp"

namespace omqa {

/// {[p] : p a disjunct of q}; variables are frozen into nulls.
std::set<Instance> disjunctSet(const UCQ& query);

enum class HittingMode {
  Inclusion,    ///< all inclusion-minimal hitting sets
  Cardinality,  ///< only those of minimum size
};

/// Minimal hitting sets of a finite family, sorted. The empty family yields
/// the single empty set; an empty member throws Error.
template <typename T>
std::vector<std::set<T>> minimalHittingSets(const std::vector<std::set<T>>& family,
                                            HittingMode mode = HittingMode::Inclusion) {
  for (const auto& m : family)
    if (m.empty()) throw Error("family has an empty member, no hitting set exists");

  std::set<std::set<T>> candidates;
  std::set<T> current;
  // Branch on the elements of the first member not yet hit.
  auto search = [&](auto&& self) -> void {
    auto unhit = std::find_if(family.begin(), family.end(), [&](const std::set<T>& m) {
      return std::none_of(m.begin(), m.end(), [&](const T& x) { return current.count(x) > 0; });
    });
    if (unhit == family.end()) {
      candidates.insert(current);
      return;
    }
    for (const auto& x : *unhit) {
      current.insert(x);
      self(self);
      current.erase(x);
    }
  };
  search(search);

  auto hits = [&](const std::set<T>& h) {
    return std::all_of(family.begin(), family.end(), [&](const std::set<T>& m) {
      return std::any_of(m.begin(), m.end(), [&](const T& x) { return h.count(x) > 0; });
    });
  };
  std::vector<std::set<T>> out;
  for (const auto& h : candidates) {
    bool minimal = std::all_of(h.begin(), h.end(), [&](const T& x) {
      std::set<T> smaller = h;
      smaller.erase(x);
      return !hits(smaller);
    });
    if (minimal) out.push_back(h);
  }
  if (mode == HittingMode::Cardinality && !out.empty()) {
    std::size_t best = std::min_element(out.begin(), out.end(), [](const auto& a, const auto& b) {
                         return a.size() < b.size();
                       })->size();
    std::erase_if(out, [&](const std::set<T>& h) { return h.size() != best; });
  }
  return out;
}

/// ⊕_C H: the union of copies of the members of H in which every term outside
/// C becomes the null `name_k` for the k-th member (1-based).
Instance amalgamate(const std::vector<Instance>& members, const std::set<Term>& shared);

/// U(Λ, D): one amalgamation over adom(D) per minimal hitting set of
/// Γ = {disjunctSet(q) : q ∈ Λ}. Disjunct databases isomorphic over adom(D)
/// are identified first.
std::vector<Instance> universalModelSet(const std::vector<UCQ>& entailed, const Database& database,
                                        HittingMode mode = HittingMode::Inclusion);

/// q holds in every instance of U.
bool certainViaUModels(const std::vector<Instance>& models, const UCQ& query);

}  // namespace omqa
