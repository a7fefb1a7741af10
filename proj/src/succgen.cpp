#include "omqa/succgen.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "omqa/error.hpp"
#include "omqa/syntax.hpp"

namespace omqa {

namespace {

std::string vars(const std::string& stem, std::size_t from, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) out += (i ? "," : "") + stem + std::to_string(from + i);
  return out;
}

}  // namespace

Schema Vocabulary::schema(const Schema& schemaQ) const {
  Schema s;
  const std::pair<std::string, std::size_t> fixed[] = {
      {ad(), 1},     {less(), 2},  {link(), 2},  {next(), 2},   {first(), 1}, {last(), 1},
      {partial(), 1}, {zero(), 2}, {dmax(), 2},  {succ(), 3},   {lt(), 3},    {tc(), 2},
      {rt(), 3},     {accept(), 2}, {truth(), 2}, {copy(), 4},  {ucq(), 2},   {unionOf(), 4},
      {cq(), 2},     {qvar(), 3}};
  for (const auto& [name, arity] : fixed) s.add(name, arity, Partition::Auxiliary);
  for (const auto& [name, info] : schemaQ.all()) s.add(hasQ(name), info.arity + 2, Partition::Auxiliary);
  return s;
}

void Vocabulary::checkDisjoint(const Schema& user, const Schema& schemaQ) const {
  const Schema aux = schema(schemaQ);
  for (const auto& [name, info] : aux.all())
    if (user.contains(name))
      throw SchemaError("relation " + name + " clashes with an auxiliary relation; pick a prefix");
}

Program orderRules(const Schema& schemaD, const Vocabulary& vocab) {
  std::ostringstream text;
  for (const auto& [name, info] : schemaD.all()) {
    if (info.partition != Partition::Database) continue;
    for (std::size_t i = 1; i <= info.arity; ++i)
      text << name << '(' << vars("X", 1, info.arity) << ") -> " << vocab.ad() << "(X" << i
           << ").\n";
  }
  const auto ad = vocab.ad();
  const auto less = vocab.less();
  text << ad << "(X), " << ad << "(Y) -> " << less << "(X,Y) | X = Y | " << less << "(Y,X).\n"
       << less << "(X,Y), " << less << "(Y,Z) -> " << less << "(X,Z).\n"
       << less << "(X,X) -> false.\n";
  return parseProgram(text.str());
}

Program successorRules(const Vocabulary& v) {
  std::ostringstream text;
  text << v.ad() << "(X) -> " << v.link() << "(X,V), " << v.last() << "(V), " << v.first()
       << "(V).\n"
       << v.ad() << "(X) -> " << v.link() << "(X,V), " << v.last() << "(V), " << v.partial()
       << "(V).\n";
  for (const auto& mark : {v.first(), v.partial()})
    text << v.less() << "(X,Y), " << v.link() << "(Y,V), " << v.partial() << "(V) -> "
         << v.link() << "(X,U), " << v.next() << "(U,V), " << mark << "(U).\n";
  return parseProgram(text.str());
}

Program numericRules(const Vocabulary& v) {
  std::ostringstream text;
  text << v.first() << "(W), " << v.link() << "(X,W) -> " << v.zero() << "(W,X), " << v.rt()
       << "(W,W,X).\n"
       << v.next() << "(U,V), " << v.rt() << "(W,U,X), " << v.link() << "(Y,V) -> " << v.succ()
       << "(W,X,Y), " << v.rt() << "(W,V,Y).\n"
       << v.last() << "(V), " << v.rt() << "(W,V,X) -> " << v.dmax() << "(W,X), " << v.tc()
       << "(W,X).\n"
       << v.tc() << "(V,X) -> " << v.succ() << "(V,X,Y), " << v.tc() << "(V,Y).\n"
       << v.succ() << "(V,X,Y) -> " << v.lt() << "(V,X,Y).\n"
       << v.lt() << "(V,X,Y), " << v.lt() << "(V,Y,Z) -> " << v.lt() << "(V,X,Z).\n";
  return parseProgram(text.str());
}

Program modelBuilderRules(const Schema& schemaQ, const Vocabulary& v) {
  std::ostringstream text;
  text << v.accept() << "(V,X) -> " << v.truth() << "(V,X).\n"
       << v.truth() << "(V,X), " << v.unionOf() << "(V,X,Y,Z) -> " << v.truth() << "(V,Y) | "
       << v.truth() << "(V,Z).\n"
       << v.cq() << "(V,X), " << v.qvar() << "(V,X,Y) -> " << v.copy() << "(V,X,Y,Z).\n"
       << v.cq() << "(V,X), " << v.ad() << "(Y) -> " << v.copy() << "(V,X,Y,Y).\n";
  for (const auto& [name, info] : schemaQ.all()) {
    std::size_t k = info.arity;
    text << v.truth() << "(V,X), " << v.cq() << "(V,X), " << v.hasQ(name) << "(V,X,"
         << vars("Y", 1, k) << ")";
    for (std::size_t i = 1; i <= k; ++i)
      text << ", " << v.copy() << "(V,X,Y" << i << ",Z" << i << ")";
    text << " -> " << name << '(' << vars("Z", 1, k) << ").\n";
  }
  return parseProgram(text.str());
}

Term encodeQuery(const UCQ& query, const Vocabulary& v, const Term& order, Instance& out,
                 std::size_t& counter) {
  std::vector<Term> codes;
  for (const auto& d : query.disjuncts()) {
    Term code = Term::constant("d" + std::to_string(counter++));
    out.insert(Atom{v.cq(), {order, code}});
    std::map<Term, Term> varCode;
    for (const auto& x : d.orderedVariables()) {
      Term c = Term::constant("v" + code.name.substr(1) + "_" + std::to_string(varCode.size()));
      varCode.emplace(x, c);
      out.insert(Atom{v.qvar(), {order, code, c}});
    }
    for (const auto& a : d.atoms) {
      Atom fact{v.hasQ(a.relation), {order, code}};
      for (const auto& t : a.args) fact.args.push_back(t.isVariable() ? varCode.at(t) : t);
      out.insert(std::move(fact));
    }
    codes.push_back(code);
  }
  // The UCQ d1 | ... | dn is Union(u1, d1, u2), ..., Union(u_{n-1}, d_{n-1}, dn).
  Term rest = codes.back();
  out.insert(Atom{v.ucq(), {order, rest}});
  for (std::size_t i = codes.size() - 1; i-- > 0;) {
    Term u = Term::constant("u" + std::to_string(counter++));
    out.insert(Atom{v.ucq(), {order, u}});
    out.insert(Atom{v.unionOf(), {order, u, codes[i], rest}});
    rest = u;
  }
  return rest;
}

Instance modelBuilderSeed(const OntologyOracle& oracle, const Database& database,
                          const std::vector<UCQ>& queries, const Vocabulary& v) {
  auto adom = database.activeDomain();
  std::string orderName = "o";
  auto taken = [&](const std::string& n) {
    if (adom.count(Term::constant(n))) return true;
    return std::any_of(queries.begin(), queries.end(),
                       [&](const UCQ& q) { return q.constants().count(Term::constant(n)) > 0; });
  };
  while (taken(orderName)) orderName += "o";
  Term order = Term::constant(orderName);

  Instance seed;
  for (const auto& c : adom) seed.insert(Atom{v.ad(), {c}});
  std::size_t counter = 0;
  for (const auto& q : queries) {
    Term code = encodeQuery(q, v, order, seed, counter);
    Verdict verdict = oracle.member(database, q);
    if (verdict.answer == Answer::Unknown)
      throw UnresolvedError("oracle undecided on " + toString(q));
    if (verdict.answer == Answer::Yes) seed.insert(Atom{v.accept(), {order, code}});
  }
  return seed;
}

std::vector<Chain> extractChains(const Instance& instance, const Vocabulary& v) {
  std::map<Term, Term> link;
  std::map<Term, Term> next;
  std::set<Term> firsts;
  std::set<Term> lasts;
  for (const auto& f : instance) {
    if (f.relation == v.link() && f.args.size() == 2) {
      if (!link.emplace(f.args[1], f.args[0]).second && link[f.args[1]] != f.args[0])
        throw Error("alias " + toString(f.args[1]) + " links to two constants");
    } else if (f.relation == v.next() && f.args.size() == 2) {
      if (!next.emplace(f.args[0], f.args[1]).second && next[f.args[0]] != f.args[1])
        throw Error("alias " + toString(f.args[0]) + " has two Next successors");
    } else if (f.relation == v.first() && f.args.size() == 1) {
      firsts.insert(f.args[0]);
    } else if (f.relation == v.last() && f.args.size() == 1) {
      lasts.insert(f.args[0]);
    }
  }

  std::vector<Chain> out;
  for (const auto& head : firsts) {
    Chain chain{head, {}};
    std::set<Term> visited;
    Term cur = head;
    bool complete = false;
    for (;;) {
      if (!visited.insert(cur).second) throw Error("Next cycle through " + toString(cur));
      auto l = link.find(cur);
      if (l == link.end()) throw Error("alias " + toString(cur) + " has no Link");
      chain.elements.push_back(l->second);
      if (lasts.count(cur)) {
        complete = true;
        break;
      }
      auto n = next.find(cur);
      if (n == next.end()) break;
      cur = n->second;
    }
    if (complete) out.push_back(std::move(chain));
  }
  std::sort(out.begin(), out.end(), [](const Chain& a, const Chain& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    if (a.elements != b.elements) return a.elements < b.elements;
    return a.name < b.name;
  });
  return out;
}

Database totalOrderSeed(std::size_t n, const Vocabulary& v) {
  Database seed;
  for (std::size_t i = 1; i <= n; ++i) {
    seed.insert(Atom{v.ad(), {Term::constant("c" + std::to_string(i))}});
    for (std::size_t j = 1; j < i; ++j)
      seed.insert(Atom{v.less(), {Term::constant("c" + std::to_string(i)),
                                  Term::constant("c" + std::to_string(j))}});
  }
  return seed;
}

ChainRun runSuccessorChase(const Database& seed, const Vocabulary& vocab, std::size_t budget) {
  ChaseOptions options;
  options.budget = budget;
  options.strategy = Strategy::SemiOblivious;
  ChainRun run;
  run.tree = chase(seed, successorRules(vocab), options);
  if (run.tree.branches.size() != 1 || run.tree.branches[0].status != BranchStatus::Saturated)
    throw Error("successor chase did not saturate in a single branch");
  run.instance = run.tree.branches[0].instance;
  run.chains = extractChains(run.instance, vocab);
  return run;
}

ChainRun figure1() { return runSuccessorChase(totalOrderSeed(3)); }

std::string chainsToDot(const Instance& instance, const Vocabulary& v) {
  std::set<Term> firsts, lasts, partials;
  for (const auto& f : instance) {
    if (f.args.size() != 1) continue;
    if (f.relation == v.first()) firsts.insert(f.args[0]);
    if (f.relation == v.last()) lasts.insert(f.args[0]);
    if (f.relation == v.partial()) partials.insert(f.args[0]);
  }
  std::ostringstream out;
  out << "digraph chains {\n  rankdir=LR;\n";
  for (const auto& t : instance.activeDomain()) {
    if (t.isConstant()) {
      out << "  \"" << toString(t) << "\" [shape=box];\n";
      continue;
    }
    std::string marks;
    if (firsts.count(t)) marks += " F";
    if (lasts.count(t)) marks += " L";
    if (partials.count(t)) marks += " P";
    out << "  \"" << toString(t) << "\" [shape=ellipse, label=\"" << toString(t) << marks
        << "\"];\n";
  }
  for (const auto& f : instance) {
    if (f.args.size() != 2) continue;
    if (f.relation == v.link())
      out << "  \"" << toString(f.args[0]) << "\" -> \"" << toString(f.args[1])
          << "\" [style=dashed];\n";
    else if (f.relation == v.next())
      out << "  \"" << toString(f.args[0]) << "\" -> \"" << toString(f.args[1])
          << "\" [label=\"next\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string toString(const Chain& chain) {
  std::string out = "(";
  for (std::size_t i = 0; i < chain.elements.size(); ++i)
    out += (i ? "," : "") + toString(chain.elements[i]);
  return out + ") head " + toString(chain.name);
}

}  // namespace omqa
