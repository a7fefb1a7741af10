#pragma once

#include <string>
#include <vector>

#include "omqa/chase.hpp"
#include "omqa/ded.hpp"
#include "omqa/oracle.hpp"
#include "omqa/schema.hpp"

namespace omqa {

/// Names of the auxiliary relations, optionally prefixed to keep them apart
/// from user schemas.
struct Vocabulary {
  std::string prefix;

  std::string ad() const { return prefix + "AD"; }
  std::string less() const { return prefix + "Less"; }
  std::string link() const { return prefix + "Link"; }
  std::string next() const { return prefix + "Next"; }
  std::string first() const { return prefix + "First"; }
  std::string last() const { return prefix + "Last"; }
  std::string partial() const { return prefix + "Partial"; }
  std::string zero() const { return prefix + "Zero"; }
  std::string dmax() const { return prefix + "DMax"; }
  std::string succ() const { return prefix + "Succ"; }
  std::string lt() const { return prefix + "LT"; }
  std::string tc() const { return prefix + "TC"; }
  std::string rt() const { return prefix + "RT"; }
  std::string accept() const { return prefix + "Accept"; }
  std::string truth() const { return prefix + "True"; }
  std::string copy() const { return prefix + "Copy"; }
  std::string ucq() const { return prefix + "UCQ"; }
  std::string unionOf() const { return prefix + "Union"; }
  std::string cq() const { return prefix + "CQ"; }
  std::string qvar() const { return prefix + "QVar"; }
  std::string hasQ(const std::string& relation) const { return prefix + "HasQ_" + relation; }

  /// Auxiliary schema; HasQ relations are included for the given Q-schema.
  Schema schema(const Schema& schemaQ = {}) const;
  /// Throws SchemaError if a user relation uses an auxiliary name.
  void checkDisjoint(const Schema& user, const Schema& schemaQ = {}) const;
};

/// AD projections for every D-relation and position, then totality,
/// transitivity and irreflexivity of Less.
Program orderRules(const Schema& schemaD, const Vocabulary& vocab = {});
/// The four partial-successor generators.
Program successorRules(const Vocabulary& vocab = {});
/// Zero/RT, Succ/RT, DMax/TC, the unbounded TC tail, Succ into LT, LT
/// transitivity.
Program numericRules(const Vocabulary& vocab = {});
/// Accept into True, disjunct choice over Union, variable and constant
/// copies, and one atom-copying rule per Q-relation.
Program modelBuilderRules(const Schema& schemaQ, const Vocabulary& vocab = {});

/// Facts describing q under the order term: UCQ, Union chain, CQ, QVar and
/// HasQ facts with small constant codes (u<k>, d<k>, v<k>_<i>). `counter`
/// numbers the codes across calls. Returns the code of q.
Term encodeQuery(const UCQ& query, const Vocabulary& vocab, const Term& order, Instance& out,
                 std::size_t& counter);

/// Seed for the model builder: AD over adom(D), the encoding of every query,
/// and Accept for those the oracle puts in O at D. Throws UnresolvedError on
/// an undecided query.
Instance modelBuilderSeed(const OntologyOracle& oracle, const Database& database,
                          const std::vector<UCQ>& queries, const Vocabulary& vocab = {});

struct Chain {
  Term name;                   ///< the First alias
  std::vector<Term> elements;  ///< constants from head to tail
  auto operator<=>(const Chain&) const = default;
};

/// Every Next-path from a First alias to a Last alias, mapped through Link.
/// Throws Error on an alias with two Next successors, no Link, or a cycle.
/// Sorted by length, then elements.
std::vector<Chain> extractChains(const Instance& instance, const Vocabulary& vocab = {});

/// AD(c1..cn) with Less(ci, cj) for all i > j, so cn < ... < c1.
Database totalOrderSeed(std::size_t n, const Vocabulary& vocab = {});

struct ChainRun {
  ChaseTree tree;
  Instance instance;
  std::vector<Chain> chains;
};

/// Semi-oblivious chase of successorRules() over a seed, then chain
/// extraction. Throws Error unless the chase saturates in a single branch.
ChainRun runSuccessorChase(const Database& seed, const Vocabulary& vocab = {},
                           std::size_t budget = 100000);

/// The three-constant worked example.
ChainRun figure1();

/// DOT rendering of the Link/Next/First/Last structure.
std::string chainsToDot(const Instance& instance, const Vocabulary& vocab = {});

std::string toString(const Chain& chain);

}  // namespace omqa
