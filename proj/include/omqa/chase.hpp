#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omqa/ded.hpp"
#include "omqa/hom.hpp"
#include "omqa/instance.hpp"
#include "omqa/query.hpp"

namespace omqa {

enum class Answer { Yes, No, Unknown };

/// Three-valued answer. Yes/No only when the budgeted computation was
/// conclusive; `witness` names the counterexample branch for No.
struct Verdict {
  Answer answer = Answer::Unknown;
  std::string witness;
  std::vector<std::string> warnings;
};

std::string toString(Answer answer);

enum class Strategy {
  /// Fire a trigger only while none of its head disjuncts is satisfied.
  Restricted,
  /// Fire once per (rule, frontier assignment).
  SemiOblivious,
};

struct ChaseOptions {
  std::size_t budget = 10000;  ///< maximum firings over the whole tree
  Strategy strategy = Strategy::Restricted;
  /// Per-branch cap on invented nulls. Triggers that would exceed it are
  /// skipped and the branch ends Truncated instead of Saturated.
  std::optional<std::size_t> maxNulls;
  unsigned parallelism = 1;
};

enum class BranchStatus {
  Open,       ///< still had work when the budget ran out
  Saturated,  ///< no applicable trigger
  Failed,     ///< falsum fired or two distinct constants were equated
  Truncated,  ///< saturated except for triggers cut by maxNulls
  Entailed,   ///< the stop query became true; expansion halted
};

std::string toString(BranchStatus status);

struct TraceStep {
  std::size_t rule = 0;
  std::optional<std::size_t> disjunct;  ///< nullopt for a falsum head
  std::vector<std::pair<Term, Term>> assignment;
};

struct ChaseBranch {
  std::string id;
  Instance instance;
  BranchStatus status = BranchStatus::Open;
  std::vector<TraceStep> trace;
  /// Merged term -> its representative, induced by head equalities.
  std::map<Term, Term> merges;
  std::string failure;
};

struct ChaseTree {
  Database root;
  std::vector<ChaseBranch> branches;
  std::size_t firings = 0;
  std::size_t budget = 0;
  Strategy strategy = Strategy::Restricted;

  bool hasOpenBranches() const;
  std::size_t count(BranchStatus status) const;
};

/// Breadth-first disjunctive chase. Branches are expanded round-robin, one
/// firing per branch per turn; within a branch triggers are fired round by
/// round in (rule, assignment) order. Throws SchemaError when D and Σ
/// disagree on an arity.
ChaseTree chase(const Database& database, const Program& program, const ChaseOptions& options = {});

/// Same, but every branch stops as soon as `stop` holds in it.
ChaseTree chaseUntil(const Database& database, const Program& program, const UCQ& stop,
                     const ChaseOptions& options = {});

/// D ∪ Σ ⊨ q. Yes when every branch entails q or fails, No as soon as a
/// saturated branch does not entail q, Unknown otherwise.
Verdict certainAnswer(const Database& database, const Program& program, const UCQ& query,
                      const ChaseOptions& options = {});

/// Every body match extends to some head disjunct in I.
bool isModelOf(const Instance& instance, const DED& rule);
bool isModel(const Instance& instance, const Program& program);

/// Some disjunct of the rule holds under `binding` (a body assignment).
bool headSatisfied(const Instance& instance, const DED& rule, const Mapping& binding);

/// `branch-id rule-id disjunct-index assignment`, one line per firing.
std::string traceLog(const ChaseTree& tree);
/// DOT graph of the final instances, one cluster per branch.
std::string toDot(const ChaseTree& tree);

}  // namespace omqa
