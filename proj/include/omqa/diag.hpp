#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omqa/epfo.hpp"
#include "omqa/oracle.hpp"
#include "omqa/schema.hpp"

namespace omqa {

/// q_n = ∃x0..xn R(x0,x1), ..., R(x_{n-1},x_n). When a schema is given the
/// relation must be declared there with arity 2.
CQ pathQuery(std::size_t n, const std::string& relation = "R", const Schema* schemaQ = nullptr);

struct NamedOracle {
  std::string name;
  std::shared_ptr<const OntologyOracle> oracle;
};

struct ProcedureStep {
  std::size_t i = 0;
  std::size_t n = 0;
  std::size_t j = 0;          ///< 1-based position in the current theory list
  std::string theory;
  std::size_t testBound = 0;  ///< n or n + 1
  Answer outcome = Answer::Unknown;
};

struct SequencePrefix {
  std::vector<std::size_t> N;
  std::vector<std::string> t;
  std::vector<ProcedureStep> trace;
  bool exhausted = false;  ///< the theory list ran out before iMax
  std::string aborted;     ///< non-empty when stopped by Unknown or the bound
};

/// Runs the sequence-generating double loop for i = 1..iMax over a finite
/// theory list. Existence tests enumerate D-databases up to isomorphism with
/// at most the tested number of constants (and at most `maxFacts` facts).
SequencePrefix runProcedure1(const std::vector<NamedOracle>& theories, std::size_t iMax,
                             std::size_t dbSearchBound, const Schema& schemaD,
                             std::optional<std::size_t> maxFacts = std::nullopt,
                             const std::string& relation = "R");

/// i, n, j, theory, bound, outcome as tab-separated lines with a header.
std::string traceTsv(const SequencePrefix& prefix);

/// λ_{N_m + 1} for the least m with q_m ⊨ q, or the false sentence when no
/// path query implies q. Throws Error when that m exceeds the prefix.
EpfoSentence phiQuery(const UCQ& query, const std::vector<std::size_t>& N,
                      const std::string& relation = "R");

}  // namespace omqa
