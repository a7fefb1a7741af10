#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omqa/term.hpp"

namespace omqa {

/// Which side of the (D, Q) split a relation belongs to.
enum class Partition { Database, Query, Auxiliary };

struct RelationInfo {
  std::size_t arity = 0;
  Partition partition = Partition::Auxiliary;

  bool operator==(const RelationInfo&) const = default;
};

class Schema {
 public:
  Schema() = default;

  /// Declares a relation. Re-declaring with the same arity and partition is a
  /// no-op; anything else throws SchemaError.
  void add(const std::string& name, std::size_t arity,
           Partition partition = Partition::Auxiliary);

  std::optional<RelationInfo> find(const std::string& name) const;
  bool contains(const std::string& name) const { return relations_.count(name) > 0; }
  std::size_t arity(const std::string& name) const;

  /// Relation names with the given partition tag, sorted.
  std::vector<std::string> relations(Partition partition) const;
  const std::map<std::string, RelationInfo>& all() const { return relations_; }
  bool empty() const { return relations_.empty(); }

  /// Throws SchemaError if the atom's relation is undeclared or has a
  /// different arity.
  void check(const Atom& atom) const;

  /// Adds every relation of `other`; conflicts throw SchemaError.
  void merge(const Schema& other);

  /// Parses "P/1,Q/2" (whitespace tolerant).
  static Schema parse(std::string_view text, Partition partition);

  bool operator==(const Schema&) const = default;

 private:
  std::map<std::string, RelationInfo> relations_;
};

std::string toString(const Schema& schema);

}  // namespace omqa
