#include "omqa/schema.hpp"

#include <cctype>

#include "omqa/error.hpp"

namespace omqa {

void Schema::add(const std::string& name, std::size_t arity, Partition partition) {
  if (name.empty()) throw SchemaError("relation name must be non-empty");
  if (arity == 0) throw SchemaError("relation " + name + " must have arity >= 1");
  auto [it, inserted] = relations_.emplace(name, RelationInfo{arity, partition});
  if (inserted) return;
  if (it->second.arity != arity)
    throw SchemaError("relation " + name + " declared with arity " +
                      std::to_string(it->second.arity) + " and " + std::to_string(arity));
  if (it->second.partition != partition)
    throw SchemaError("relation " + name + " declared in two schema partitions");
}

std::optional<RelationInfo> Schema::find(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) return std::nullopt;
  return it->second;
}

std::size_t Schema::arity(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw SchemaError("undeclared relation " + name);
  return it->second.arity;
}

std::vector<std::string> Schema::relations(Partition partition) const {
  std::vector<std::string> out;
  for (const auto& [name, info] : relations_)
    if (info.partition == partition) out.push_back(name);
  return out;
}

void Schema::check(const Atom& atom) const {
  auto it = relations_.find(atom.relation);
  if (it == relations_.end()) throw SchemaError("undeclared relation " + atom.relation);
  if (it->second.arity != atom.args.size())
    throw SchemaError("arity mismatch for " + atom.relation + ": expected " +
                      std::to_string(it->second.arity) + ", got " +
                      std::to_string(atom.args.size()));
}

void Schema::merge(const Schema& other) {
  for (const auto& [name, info] : other.relations_) add(name, info.arity, info.partition);
}

Schema Schema::parse(std::string_view text, Partition partition) {
  Schema schema;
  std::size_t pos = 0;
  auto skipSpace = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skipSpace();
  while (pos < text.size()) {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '/' && text[pos] != ',' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    std::string name(text.substr(start, pos - start));
    skipSpace();
    if (name.empty() || pos >= text.size() || text[pos] != '/')
      throw SchemaError("schema entries must look like Name/arity");
    ++pos;
    skipSpace();
    std::size_t arity = 0;
    std::size_t digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      arity = arity * 10 + static_cast<std::size_t>(text[pos] - '0');
      ++pos;
      ++digits;
    }
    if (digits == 0) throw SchemaError("missing arity for relation " + name);
    schema.add(name, arity, partition);
    skipSpace();
    if (pos < text.size()) {
      if (text[pos] != ',') throw SchemaError("expected ',' in schema list");
      ++pos;
      skipSpace();
    }
  }
  return schema;
}

std::string toString(const Schema& schema) {
  std::string out;
  for (const auto& [name, info] : schema.all()) {
    if (!out.empty()) out += ",";
    out += name + "/" + std::to_string(info.arity);
  }
  return out;
}

}  // namespace omqa
