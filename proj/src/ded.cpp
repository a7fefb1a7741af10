#include "omqa/ded.hpp"

#include <algorithm>

#include "omqa/error.hpp"

namespace omqa {

std::set<Term> HeadDisjunct::variables() const {
  std::set<Term> out;
  for (const auto& a : atoms)
    for (const auto& t : a.args)
      if (t.isVariable()) out.insert(t);
  for (const auto& e : equalities) {
    if (e.lhs.isVariable()) out.insert(e.lhs);
    if (e.rhs.isVariable()) out.insert(e.rhs);
  }
  return out;
}

DED::DED(std::vector<Atom> body, std::vector<HeadDisjunct> heads)
    : body_(std::move(body)), heads_(std::move(heads)) {
  if (body_.empty()) throw Error("a rule needs a non-empty body");
  std::set<Term> seen;
  for (const auto& a : body_) {
    if (a.relation.empty()) throw Error("rule bodies may only contain relational atoms");
    for (const auto& t : a.args) {
      if (t.isNull()) throw Error("rules cannot mention labelled nulls");
      if (t.isVariable() && seen.insert(t).second) bodyVariables_.push_back(t);
    }
  }
  std::set<Term> inHeads;
  for (const auto& h : heads_) {
    for (const auto& a : h.atoms)
      for (const auto& t : a.args)
        if (t.isNull()) throw Error("rules cannot mention labelled nulls");
    auto vars = h.variables();
    inHeads.insert(vars.begin(), vars.end());
    std::vector<Term> ex;
    for (const auto& v : vars)
      if (!seen.count(v)) ex.push_back(v);
    existentials_.push_back(std::move(ex));
  }
  for (const auto& v : bodyVariables_)
    if (inHeads.count(v)) frontier_.push_back(v);
}

bool DED::hasEqualities() const {
  return std::any_of(heads_.begin(), heads_.end(),
                     [](const HeadDisjunct& h) { return !h.equalities.empty(); });
}

std::set<Term> DED::constants() const {
  std::set<Term> out;
  auto add = [&](const Term& t) {
    if (t.isConstant()) out.insert(t);
  };
  for (const auto& a : body_)
    for (const auto& t : a.args) add(t);
  for (const auto& h : heads_) {
    for (const auto& a : h.atoms)
      for (const auto& t : a.args) add(t);
    for (const auto& e : h.equalities) {
      add(e.lhs);
      add(e.rhs);
    }
  }
  return out;
}

Schema inferSchema(const Program& program, Partition partition) {
  Schema schema;
  for (const auto& rule : program) {
    for (const auto& a : rule.body()) schema.add(a.relation, a.args.size(), partition);
    for (const auto& h : rule.heads())
      for (const auto& a : h.atoms) schema.add(a.relation, a.args.size(), partition);
  }
  return schema;
}

std::string toString(const DED& rule) {
  std::string out;
  for (std::size_t i = 0; i < rule.body().size(); ++i) {
    if (i) out += ", ";
    out += toString(rule.body()[i]);
  }
  out += " -> ";
  if (rule.isFalsum()) return out + "false.";
  for (std::size_t i = 0; i < rule.heads().size(); ++i) {
    if (i) out += " | ";
    const auto& h = rule.heads()[i];
    bool first = true;
    for (const auto& a : h.atoms) {
      if (!first) out += ", ";
      out += toString(a);
      first = false;
    }
    for (const auto& e : h.equalities) {
      if (!first) out += ", ";
      out += toString(e);
      first = false;
    }
  }
  return out + ".";
}

std::string toString(const Program& program) {
  std::string out;
  for (const auto& rule : program) out += toString(rule) + "\n";
  return out;
}

}  // namespace omqa
