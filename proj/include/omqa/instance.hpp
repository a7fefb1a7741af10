#pragma once

#include <compare>
#include <initializer_list>
#include <set>
#include <vector>

#include "omqa/schema.hpp"
#include "omqa/term.hpp"

namespace omqa {

/// A finite set of ground relational facts. Facts may mention labelled nulls;
/// an instance without nulls is a database.
class Instance {
 public:
  using const_iterator = std::set<Atom>::const_iterator;

  Instance() = default;
  Instance(std::initializer_list<Atom> facts);
  explicit Instance(std::vector<Atom> facts);

  /// Inserts a fact; throws Error if it contains a variable.
  bool insert(Atom fact);
  bool erase(const Atom& fact) { return facts_.erase(fact) > 0; }
  bool contains(const Atom& fact) const { return facts_.count(fact) > 0; }

  const std::set<Atom>& facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  const_iterator begin() const { return facts_.begin(); }
  const_iterator end() const { return facts_.end(); }

  /// Facts of one relation, as a [first, last) range.
  std::pair<const_iterator, const_iterator> relation(const std::string& name) const;

  /// Every term occurring in some fact (constants and nulls).
  std::set<Term> activeDomain() const;
  /// Only the constants occurring in some fact.
  std::set<Term> constants() const;

  bool isDatabase() const;
  /// Schema inferred from the facts (all relations tagged `partition`).
  Schema inferSchema(Partition partition = Partition::Database) const;

  void unite(const Instance& other);

  auto operator<=>(const Instance&) const = default;

 private:
  std::set<Atom> facts_;
};

using Database = Instance;

/// I|_A: the facts of I that only involve terms in A.
Instance restrict(const Instance& instance, const std::set<Term>& terms);

}  // namespace omqa
