#include "omqa/umodels.hpp"

#include <map>

#include "omqa/hom.hpp"

namespace omqa {

std::set<Instance> disjunctSet(const UCQ& query) {
  std::set<Instance> out;
  for (const auto& d : query.disjuncts()) out.insert(canonicalDatabase(d));
  return out;
}

Instance amalgamate(const std::vector<Instance>& members, const std::set<Term>& shared) {
  Instance out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    std::string suffix = "_" + std::to_string(k + 1);
    for (const auto& f : members[k]) {
      Atom g = f;
      for (auto& t : g.args)
        if (!shared.count(t)) t = Term::null(t.name + suffix);
      out.insert(std::move(g));
    }
  }
  return out;
}

std::vector<Instance> universalModelSet(const std::vector<UCQ>& entailed, const Database& database,
                                        HittingMode mode) {
  auto adom = database.activeDomain();
  // Representatives of the isomorphism classes over adom(D).
  std::vector<Instance> reps;
  auto representative = [&](const Instance& i) {
    for (const auto& r : reps)
      if (r == i || isomorphic(r, i, adom)) return r;
    reps.push_back(i);
    return i;
  };
  std::vector<std::set<Instance>> family;
  for (const auto& q : entailed) {
    std::set<Instance> member;
    for (const auto& d : disjunctSet(q)) member.insert(representative(d));
    family.push_back(std::move(member));
  }
  std::vector<Instance> out;
  for (const auto& h : minimalHittingSets(family, mode)) {
    Instance model = amalgamate(std::vector<Instance>(h.begin(), h.end()), adom);
    if (std::find(out.begin(), out.end(), model) == out.end()) out.push_back(std::move(model));
  }
  return out;
}

bool certainViaUModels(const std::vector<Instance>& models, const UCQ& query) {
  return std::all_of(models.begin(), models.end(),
                     [&](const Instance& i) { return evaluateUCQ(i, query); });
}

}  // namespace omqa
