#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "omqa/chase.hpp"
#include "omqa/instance.hpp"
#include "omqa/query.hpp"

namespace omqa {

/// Membership test (D, q) ∈ O with a three-valued verdict.
class OntologyOracle {
 public:
  virtual ~OntologyOracle() = default;
  virtual Verdict member(const Database& database, const UCQ& query) const = 0;
  virtual std::string describe() const = 0;
};

/// O = {(D, q) : D ∪ Σ ⊨ q}, decided by the budgeted chase. Verdicts are
/// cached; safe to call from several threads.
class ChaseOracle : public OntologyOracle {
 public:
  ChaseOracle(Program program, ChaseOptions options = {});

  Verdict member(const Database& database, const UCQ& query) const override;
  std::string describe() const override;
  const Program& program() const { return program_; }

 private:
  Program program_;
  ChaseOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, Verdict> cache_;
};

/// Wraps a function; used for ontologies given by a formula.
class FunctionOracle : public OntologyOracle {
 public:
  using Function = std::function<Verdict(const Database&, const UCQ&)>;
  FunctionOracle(Function fn, std::string name) : fn_(std::move(fn)), name_(std::move(name)) {}

  Verdict member(const Database& database, const UCQ& query) const override {
    return fn_(database, query);
  }
  std::string describe() const override { return name_; }

 private:
  Function fn_;
  std::string name_;
};

struct OntologyPair {
  Database database;
  UCQ query;
};

/// An explicit finite ontology: the listed pairs over a universe of databases
/// and a query pool. Answers Unknown outside the universe.
class TableOracle : public OntologyOracle {
 public:
  /// Throws Error listing the violated closure rules if the table is not
  /// closed on its universe.
  TableOracle(std::vector<Database> universe, std::vector<UCQ> pool,
              std::vector<OntologyPair> pairs);

  Verdict member(const Database& database, const UCQ& query) const override;
  std::string describe() const override;

  /// One message per violation of: closure under conjunctions (when the pool
  /// holds a query equivalent to p ∧ p'), under implications within the
  /// pool, and under injective const(q)-homomorphisms into the universe.
  static std::vector<std::string> closureViolations(const std::vector<Database>& universe,
                                                    const std::vector<UCQ>& pool,
                                                    const std::vector<OntologyPair>& pairs);

  const std::vector<OntologyPair>& pairs() const { return pairs_; }

 private:
  std::vector<Database> universe_;
  std::vector<UCQ> pool_;
  std::vector<OntologyPair> pairs_;
  std::set<std::pair<std::size_t, std::size_t>> index_;
};

}  // namespace omqa
