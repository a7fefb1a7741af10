#include <gtest/gtest.h>

#include "omqa/chase.hpp"
#include "omqa/error.hpp"
#include "omqa/oracle.hpp"
#include "omqa/succgen.hpp"
#include "omqa/syntax.hpp"
#include "oracles.hpp"

using namespace omqa;

namespace {

Term c(const std::string& n) { return Term::constant(n); }

std::vector<Term> consts(std::initializer_list<const char*> names) {
  std::vector<Term> out;
  for (const char* n : names) out.push_back(c(n));
  return out;
}

std::size_t countRelation(const Instance& i, const std::string& relation) {
  return static_cast<std::size_t>(
      std::count_if(i.begin(), i.end(), [&](const Atom& a) { return a.relation == relation; }));
}

FunctionOracle acceptAll() {
  return FunctionOracle([](const Database&, const UCQ&) { return Verdict{Answer::Yes, "", {}}; },
                        "accept all");
}

}  // namespace

TEST(OrderRules, RuleCountAndBranches) {
  auto schema = Schema::parse("P/1,E/2", Partition::Database);
  auto rules = orderRules(schema);
  EXPECT_EQ(rules.size(), 6u);

  auto one = chase(parseDatabase("P(c1)."), rules);
  ASSERT_EQ(one.count(BranchStatus::Saturated), 1u);
  for (const auto& b : one.branches)
    if (b.status == BranchStatus::Saturated) EXPECT_EQ(countRelation(b.instance, "Less"), 0u);

  auto two = chase(parseDatabase("E(c1,c2)."), rules);
  EXPECT_EQ(two.count(BranchStatus::Saturated), 2u);
  EXPECT_EQ(two.count(BranchStatus::Failed), 1u);

  auto three = chase(parseDatabase("P(c1). E(c2,c3)."), rules);
  EXPECT_EQ(three.count(BranchStatus::Saturated), 6u);
}

TEST(OrderRules, EveryBranchHoldsALinearOrder) {
  auto rules = orderRules(Schema::parse("P/1", Partition::Database));
  auto tree = chase(parseDatabase("P(c1). P(c2). P(c3)."), rules);
  for (const auto& b : tree.branches) {
    if (b.status != BranchStatus::Saturated) continue;
    EXPECT_EQ(countRelation(b.instance, "Less"), 3u);
    for (const auto& rule : rules) EXPECT_TRUE(oracle::modelOf(b.instance, rule));
  }
}

TEST(SuccessorRules, Structure) {
  auto rules = successorRules();
  ASSERT_EQ(rules.size(), 4u);
  for (const auto& r : rules) {
    ASSERT_EQ(r.heads().size(), 1u);
    EXPECT_EQ(r.existentials(0).size(), 1u);
  }
  EXPECT_EQ(parseProgram(serialize(rules)), rules);
}

TEST(SuccessorRules, SingleConstantHasOneChain) {
  auto run = runSuccessorChase(parseDatabase("AD(c1)."));
  ASSERT_EQ(run.chains.size(), 1u);
  EXPECT_EQ(run.chains[0].elements, consts({"c1"}));
}

TEST(Figure1, SevenChains) {
  auto run = figure1();
  std::vector<std::vector<Term>> got;
  for (const auto& ch : run.chains) got.push_back(ch.elements);
  std::vector<std::vector<Term>> expected = {consts({"c1"}),       consts({"c2"}),
                                             consts({"c3"}),       consts({"c2", "c1"}),
                                             consts({"c3", "c1"}), consts({"c3", "c2"}),
                                             consts({"c3", "c2", "c1"})};
  EXPECT_EQ(got, expected);
  std::set<Term> names;
  for (const auto& ch : run.chains) names.insert(ch.name);
  EXPECT_EQ(names.size(), 7u);
  EXPECT_NE(chainsToDot(run.instance).find("digraph"), std::string::npos);
  EXPECT_EQ(toString(run.chains.back()).rfind("(c3,c2,c1) head ", 0), 0u);
}

TEST(Figure1, ChainsFollowTheOrder) {
  auto run = figure1();
  auto seed = totalOrderSeed(3);
  for (const auto& ch : run.chains)
    for (std::size_t i = 0; i + 1 < ch.elements.size(); ++i)
      EXPECT_TRUE(seed.contains(Atom{"Less", {ch.elements[i], ch.elements[i + 1]}}));
}

TEST(ExtractChains, BijectionWithNonEmptySubsets) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto run = runSuccessorChase(totalOrderSeed(n));
    ASSERT_EQ(run.chains.size(), (std::size_t{1} << n) - 1) << n;
    std::set<std::vector<Term>> got;
    for (const auto& ch : run.chains) got.insert(ch.elements);
    std::set<std::vector<Term>> expected;
    for (const auto& subset : oracle::nonEmptySubsets(n)) {
      // c_n < ... < c_1, so ascending order lists the largest index first.
      std::vector<Term> seq;
      for (auto it = subset.rbegin(); it != subset.rend(); ++it)
        seq.push_back(c("c" + std::to_string(*it + 1)));
      expected.insert(seq);
    }
    EXPECT_EQ(got, expected);
  }
}

TEST(ExtractChains, EmptyAndMalformed) {
  EXPECT_TRUE(extractChains(parseInstance("AD(c1). Less(c1,c2).")).empty());
  EXPECT_THROW(extractChains(parseInstance("First(_h). Link(a,_h). Next(_h,_x). Next(_h,_y). "
                                           "Link(b,_x). Link(c,_y). Last(_x). Last(_y).")),
               Error);
  EXPECT_THROW(extractChains(parseInstance("First(_h). Last(_h).")), Error);
  EXPECT_THROW(extractChains(parseInstance("First(_h). Link(a,_h). Next(_h,_x). Link(b,_x). "
                                           "Next(_x,_h).")),
               Error);
}

TEST(NumericRules, TwoChainWithBoundedTail) {
  auto rules = numericRules();
  EXPECT_EQ(rules.size(), 6u);
  auto seed = parseInstance("First(_h). Link(c2,_h). Next(_h,_t). Link(c1,_t). Last(_t).");
  ChaseOptions o;
  o.maxNulls = 3;
  auto tree = chase(seed, rules, o);
  ASSERT_EQ(tree.branches.size(), 1u);
  EXPECT_EQ(tree.branches[0].status, BranchStatus::Truncated);
  const auto& i = tree.branches[0].instance;
  Term h = Term::null("h");
  EXPECT_TRUE(i.contains(Atom{"Zero", {h, c("c2")}}));
  EXPECT_TRUE(i.contains(Atom{"DMax", {h, c("c1")}}));
  EXPECT_TRUE(i.contains(Atom{"Succ", {h, c("c2"), c("c1")}}));
  EXPECT_EQ(countRelation(i, "Succ"), 4u);
  EXPECT_EQ(countRelation(i, "Zero"), 1u);
  EXPECT_EQ(countRelation(i, "DMax"), 1u);

  // LT is the transitive closure of Succ and irreflexive.
  std::set<std::pair<Term, Term>> succ, lt;
  for (const auto& a : i) {
    if (a.relation == "Succ") succ.emplace(a.args[1], a.args[2]);
    if (a.relation == "LT") lt.emplace(a.args[1], a.args[2]);
  }
  auto closure = succ;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [x, y] : std::set(closure))
      for (const auto& [y2, z] : std::set(closure))
        if (y == y2) grew |= closure.emplace(x, z).second;
  }
  EXPECT_EQ(lt, closure);
  for (const auto& [x, y] : lt) EXPECT_NE(x, y);
  EXPECT_EQ(lt.size(), 10u);  // every ordered pair of the 5-element chain
}

TEST(NumericRules, Figure1ChainsGetOneZeroAndDMaxEach) {
  auto run = figure1();
  ChaseOptions o;
  o.maxNulls = 7 * 2;
  auto rules = numericRules();
  auto tree = chase(run.instance, rules, o);
  ASSERT_EQ(tree.branches.size(), 1u);
  const auto& i = tree.branches[0].instance;
  for (const auto& ch : run.chains) {
    std::size_t zeros = 0, maxes = 0;
    std::set<std::pair<Term, Term>> constSucc;
    for (const auto& a : i) {
      if (a.args.empty() || a.args[0] != ch.name) continue;
      zeros += a.relation == "Zero";
      maxes += a.relation == "DMax";
      if (a.relation == "Succ" && a.args[1].isConstant() && a.args[2].isConstant())
        constSucc.emplace(a.args[1], a.args[2]);
    }
    EXPECT_EQ(zeros, 1u);
    EXPECT_EQ(maxes, 1u);
    std::set<std::pair<Term, Term>> consecutive;
    for (std::size_t k = 0; k + 1 < ch.elements.size(); ++k)
      consecutive.emplace(ch.elements[k], ch.elements[k + 1]);
    EXPECT_EQ(constSucc, consecutive) << toString(ch);
  }
}

TEST(NumericRules, EmptySeedProducesNothing) {
  auto tree = chase(Database{}, numericRules());
  ASSERT_EQ(tree.branches.size(), 1u);
  EXPECT_TRUE(tree.branches[0].instance.empty());
}

TEST(ModelBuilder, RuleCount) {
  EXPECT_EQ(modelBuilderRules(Schema::parse("Q/1", Partition::Query)).size(), 5u);
  EXPECT_EQ(modelBuilderRules(Schema::parse("Q/1,S/1,R/2", Partition::Query)).size(), 7u);
}

TEST(ModelBuilder, DisjunctChoiceSplitsBranches) {
  auto schemaQ = Schema::parse("Q/1,S/1", Partition::Query);
  auto oracle = acceptAll();
  auto seed = modelBuilderSeed(oracle, parseDatabase("P(a)."), {parseQuery("Q(a) | S(a)")});
  auto tree = chase(seed, modelBuilderRules(schemaQ));
  ASSERT_EQ(tree.count(BranchStatus::Saturated), 2u);
  std::set<std::pair<bool, bool>> seen;
  for (const auto& b : tree.branches)
    seen.emplace(b.instance.contains(Atom{"Q", {c("a")}}), b.instance.contains(Atom{"S", {c("a")}}));
  EXPECT_EQ(seen, (std::set<std::pair<bool, bool>>{{true, false}, {false, true}}));
}

TEST(ModelBuilder, VariableBecomesFreshNull) {
  auto schemaQ = Schema::parse("Q/1", Partition::Query);
  auto oracle = acceptAll();
  auto seed = modelBuilderSeed(oracle, parseDatabase("P(a)."), {parseQuery("exists X: Q(X)")});
  auto tree = chase(seed, modelBuilderRules(schemaQ));
  ASSERT_EQ(tree.branches.size(), 1u);
  std::vector<Atom> qs;
  for (const auto& f : tree.branches[0].instance)
    if (f.relation == "Q") qs.push_back(f);
  ASSERT_EQ(qs.size(), 1u);
  EXPECT_TRUE(qs[0].args[0].isNull());
}

TEST(ModelBuilder, RejectedQueriesStayUncopied) {
  auto schemaQ = Schema::parse("Q/1", Partition::Query);
  FunctionOracle none([](const Database&, const UCQ&) { return Verdict{Answer::No, "", {}}; }, "none");
  auto seed = modelBuilderSeed(none, parseDatabase("P(a)."), {parseQuery("Q(a)")});
  auto tree = chase(seed, modelBuilderRules(schemaQ));
  EXPECT_EQ(countRelation(tree.branches[0].instance, "Q"), 0u);
}

TEST(ModelBuilder, OrderConstantAvoidsCollisions) {
  auto oracle = acceptAll();
  auto seed = modelBuilderSeed(oracle, parseDatabase("P(o)."), {parseQuery("Q(o)")});
  for (const auto& f : seed)
    if (f.relation == "UCQ") EXPECT_NE(f.args[0], c("o"));
}

TEST(EncodeQuery, CodesAreInjective) {
  Instance out;
  std::size_t counter = 0;
  Vocabulary v;
  Term a = encodeQuery(parseQuery("Q(a) | S(a)"), v, c("o"), out, counter);
  Term b = encodeQuery(parseQuery("exists X: Q(X)"), v, c("o"), out, counter);
  EXPECT_NE(a, b);
  EXPECT_TRUE(out.contains(Atom{"UCQ", {c("o"), a}}));
  EXPECT_TRUE(out.contains(Atom{"UCQ", {c("o"), b}}));
  EXPECT_EQ(countRelation(out, "Union"), 1u);
  EXPECT_EQ(countRelation(out, "CQ"), 3u);
  EXPECT_EQ(countRelation(out, "QVar"), 1u);
}

TEST(Vocabulary, PrefixAvoidsCollisions) {
  auto user = Schema::parse("Less/2,P/1", Partition::Database);
  EXPECT_THROW(Vocabulary{}.checkDisjoint(user), SchemaError);
  Vocabulary aux{"Aux"};
  EXPECT_NO_THROW(aux.checkDisjoint(user));
  auto rules = orderRules(user, aux);
  auto tree = chase(parseDatabase("P(c1). P(c2). Less(c1,c2)."), rules);
  EXPECT_EQ(tree.count(BranchStatus::Saturated), 2u);
  auto run = runSuccessorChase(totalOrderSeed(2, aux), aux);
  EXPECT_EQ(run.chains.size(), 3u);
}
