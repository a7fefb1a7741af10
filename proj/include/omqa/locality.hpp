#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omqa/bound.hpp"
#include "omqa/epfo.hpp"
#include "omqa/oracle.hpp"
#include "omqa/schema.hpp"

namespace omqa {

struct LocalityResult {
  enum class Kind { Witness, None, Unknown };
  Kind kind = Kind::Unknown;
  std::set<Term> witness;  ///< A ⊆ adom(D) when kind == Witness
  std::size_t bound = 0;   ///< ℓ(||q||)
  std::string note;
};

/// Looks for A ⊆ adom(D), |A| <= ℓ(||q||), with (D|_A, q) ∈ O iff (D, q) ∈ O.
/// Throws Error when const(q) ⊄ adom(D).
LocalityResult checkLocal(const OntologyOracle& oracle, const Database& database,
                          const UCQ& query, const BoundFunction& bound);

enum class LambdaMode {
  /// Fresh variables also differ from every constant of q.
  WithConstants,
  /// Inequalities among the fresh variables only.
  PaperStrict,
};

/// ψ_D: constants outside const(q) become variables, which are pairwise
/// distinct.
EpfoSentence canonicalSentence(const Database& database, const std::set<Term>& queryConstants,
                               LambdaMode mode = LambdaMode::WithConstants);

/// Disjunction of ψ_D over the databases with at most ℓ(||q||) constants
/// (up to isomorphism over const(q)) that the oracle puts in O. Throws
/// UnresolvedError naming the databases it could not decide.
EpfoSentence rewrite(const OntologyOracle& oracle, const UCQ& query, const BoundFunction& bound,
                     const Schema& schemaD, LambdaMode mode = LambdaMode::WithConstants,
                     std::optional<std::size_t> maxFacts = std::nullopt);

struct RewritingReport {
  struct Line {
    Database database;
    Answer oracle = Answer::Unknown;
    bool sentence = false;
  };
  std::vector<Line> lines;
  std::size_t mismatches = 0;
  std::size_t unresolved = 0;

  /// One tab-separated line per database: facts, oracle verdict, ψ verdict.
  std::string toString() const;
};

RewritingReport verifyRewriting(const EpfoSentence& sentence, const OntologyOracle& oracle,
                                const UCQ& query, const Schema& schemaD, std::size_t maxConstants,
                                std::optional<std::size_t> maxFacts = std::nullopt);

/// A finite stand-in for all Q-UCQs: sorted by queryCompare. `sizeCap` is the
/// size up to which the pool is meant to be closed under conjunction.
struct QueryPool {
  std::vector<UCQ> queries;
  std::size_t sizeCap = 0;

  static QueryPool make(std::vector<UCQ> queries, std::size_t sizeCap);
  std::optional<std::size_t> indexOf(const UCQ& query) const;
};

/// Decides the admission condition for (D, q), recursing over the pool
/// members preceding q. Unknown oracle verdicts propagate.
Verdict conditionHolds(const OntologyOracle& oracle, const Database& database, const UCQ& query,
                       const QueryPool& pool, const BoundFunction& bound);

/// Admission of every pool member at D, in pool order.
std::vector<Answer> admittedQueries(const OntologyOracle& oracle, const Database& database,
                                    const QueryPool& pool, const BoundFunction& bound);

struct ClosureResult {
  std::vector<OntologyPair> pairs;
  std::vector<std::string> diagnostics;
};

/// Least superset of `pairs` over pool × universe closed under conjunction
/// (when the pool has the conjunction), implication within the pool, and
/// injective const(q)-homomorphisms between universe databases. A missing
/// conjunction within the pool's size cap is reported as a diagnostic.
ClosureResult closeOntology(const std::vector<OntologyPair>& pairs, const QueryPool& pool,
                            const std::vector<Database>& universe);

}  // namespace omqa
