#include "omqa/instance.hpp"

#include "omqa/error.hpp"

namespace omqa {

Instance::Instance(std::initializer_list<Atom> facts) {
  for (const auto& f : facts) insert(f);
}

Instance::Instance(std::vector<Atom> facts) {
  for (auto& f : facts) insert(std::move(f));
}

bool Instance::insert(Atom fact) {
  if (!fact.isGround()) throw Error("instance fact " + toString(fact) + " contains a variable");
  return facts_.insert(std::move(fact)).second;
}

std::pair<Instance::const_iterator, Instance::const_iterator> Instance::relation(
    const std::string& name) const {
  auto first = facts_.lower_bound(Atom{name, {}});
  auto last = first;
  while (last != facts_.end() && last->relation == name) ++last;
  return {first, last};
}

std::set<Term> Instance::activeDomain() const {
  std::set<Term> out;
  for (const auto& f : facts_) out.insert(f.args.begin(), f.args.end());
  return out;
}

std::set<Term> Instance::constants() const {
  std::set<Term> out;
  for (const auto& f : facts_)
    for (const auto& t : f.args)
      if (t.isConstant()) out.insert(t);
  return out;
}

bool Instance::isDatabase() const {
  for (const auto& f : facts_)
    for (const auto& t : f.args)
      if (!t.isConstant()) return false;
  return true;
}

Schema Instance::inferSchema(Partition partition) const {
  Schema schema;
  for (const auto& f : facts_) schema.add(f.relation, f.args.size(), partition);
  return schema;
}

void Instance::unite(const Instance& other) { facts_.insert(other.facts_.begin(), other.facts_.end()); }

Instance restrict(const Instance& instance, const std::set<Term>& terms) {
  Instance out;
  for (const auto& f : instance) {
    bool keep = true;
    for (const auto& t : f.args) {
      if (!terms.count(t)) {
        keep = false;
        break;
      }
    }
    if (keep) out.insert(f);
  }
  return out;
}

}  // namespace omqa
