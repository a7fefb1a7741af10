#include "omqa/locality.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "omqa/dbenum.hpp"
#include "omqa/error.hpp"
#include "omqa/hom.hpp"

namespace omqa {

namespace {

/// Calls `visit` on every k-subset of `items` in lexicographic index order
/// until it returns false.
template <typename Visit>
void forEachSubset(const std::vector<Term>& items, std::size_t k, Visit&& visit) {
  if (k > items.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    std::set<Term> subset;
    for (auto i : idx) subset.insert(items[i]);
    if (!visit(subset)) return;
    std::size_t p = k;
    while (p > 0 && idx[p - 1] == items.size() - k + p - 1) --p;
    if (p == 0) return;
    ++idx[p - 1];
    for (std::size_t q = p; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

std::string factList(const Database& d) {
  std::string out;
  for (const auto& f : d) out += (out.empty() ? "" : " ") + toString(f);
  return "{" + out + "}";
}

}  // namespace

LocalityResult checkLocal(const OntologyOracle& oracle, const Database& database,
                          const UCQ& query, const BoundFunction& bound) {
  auto adom = database.activeDomain();
  for (const auto& c : query.constants())
    if (!adom.count(c))
      throw Error("query constant " + c.name + " does not occur in the database");

  LocalityResult result;
  result.bound = bound(query.size());
  Verdict full = oracle.member(database, query);
  if (full.answer == Answer::Unknown) {
    result.kind = LocalityResult::Kind::Unknown;
    result.note = "oracle undecided on the full database";
    return result;
  }
  if (full.answer == Answer::No) {
    result.kind = LocalityResult::Kind::Witness;
    result.note = "not in the ontology; every subset is a witness";
    return result;
  }
  if (adom.size() <= result.bound) {
    result.kind = LocalityResult::Kind::Witness;
    result.witness = adom;
    result.note = "the whole active domain fits the bound";
    return result;
  }

  std::vector<Term> items(adom.begin(), adom.end());
  bool unknown = false;
  bool found = false;
  for (std::size_t k = 0; k <= result.bound && !found; ++k) {
    forEachSubset(items, k, [&](const std::set<Term>& a) {
      Answer ans = oracle.member(restrict(database, a), query).answer;
      if (ans == Answer::Yes) {
        result.witness = a;
        found = true;
        return false;
      }
      if (ans == Answer::Unknown) unknown = true;
      return true;
    });
  }
  if (found) {
    result.kind = LocalityResult::Kind::Witness;
  } else if (unknown) {
    result.kind = LocalityResult::Kind::Unknown;
    result.note = "some restrictions were undecided";
  } else {
    result.kind = LocalityResult::Kind::None;
    result.note = "no restriction within the bound is in the ontology";
  }
  return result;
}

EpfoSentence canonicalSentence(const Database& database, const std::set<Term>& queryConstants,
                               LambdaMode mode) {
  std::map<Term, Term> rename;
  EpfoSentence s;
  for (const auto& c : database.activeDomain()) {
    if (queryConstants.count(c)) continue;
    Term v = Term::variable("X" + std::to_string(rename.size() + 1));
    rename.emplace(c, v);
    s.variables.push_back(v);
  }
  std::vector<EpfoFormula> parts;
  for (const auto& f : database) {
    Atom a = f;
    for (auto& t : a.args)
      if (auto it = rename.find(t); it != rename.end()) t = it->second;
    parts.push_back(EpfoFormula::relational(std::move(a)));
  }
  for (std::size_t i = 0; i < s.variables.size(); ++i) {
    for (std::size_t j = i + 1; j < s.variables.size(); ++j)
      parts.push_back(EpfoFormula::notEqual(s.variables[i], s.variables[j]));
    if (mode == LambdaMode::WithConstants)
      for (const auto& c : queryConstants)
        parts.push_back(EpfoFormula::notEqual(s.variables[i], c));
  }
  s.matrix = EpfoFormula::conjunction(std::move(parts));
  return s;
}

EpfoSentence rewrite(const OntologyOracle& oracle, const UCQ& query, const BoundFunction& bound,
                     const Schema& schemaD, LambdaMode mode, std::optional<std::size_t> maxFacts) {
  auto constants = query.constants();
  auto databases = enumerateDatabases(schemaD, constants, bound(query.size()), maxFacts);
  std::vector<EpfoSentence> disjuncts;
  std::vector<std::string> unresolved;
  for (const auto& d : databases) {
    switch (oracle.member(d, query).answer) {
      case Answer::Yes: disjuncts.push_back(canonicalSentence(d, constants, mode)); break;
      case Answer::Unknown: unresolved.push_back(factList(d)); break;
      case Answer::No: break;
    }
  }
  if (!unresolved.empty()) {
    std::string msg = "rewriting aborted, oracle undecided on " +
                      std::to_string(unresolved.size()) + " database(s):";
    for (const auto& u : unresolved) msg += "\n  " + u;
    throw UnresolvedError(msg);
  }
  if (disjuncts.empty()) return EpfoSentence::falsum();
  if (disjuncts.size() == 1) return disjuncts.front();
  return disjunction(disjuncts);
}

std::string RewritingReport::toString() const {
  std::ostringstream out;
  for (const auto& l : lines)
    out << factList(l.database) << '\t' << omqa::toString(l.oracle) << '\t'
        << (l.sentence ? "yes" : "no") << '\n';
  out << "# " << lines.size() << " databases, " << mismatches << " mismatches, " << unresolved
      << " unresolved\n";
  return out.str();
}

RewritingReport verifyRewriting(const EpfoSentence& sentence, const OntologyOracle& oracle,
                                const UCQ& query, const Schema& schemaD, std::size_t maxConstants,
                                std::optional<std::size_t> maxFacts) {
  RewritingReport report;
  for (auto& d : enumerateDatabases(schemaD, query.constants(), maxConstants, maxFacts)) {
    RewritingReport::Line line;
    line.oracle = oracle.member(d, query).answer;
    line.sentence = evaluateEPFO(sentence, d);
    line.database = std::move(d);
    if (line.oracle == Answer::Unknown) ++report.unresolved;
    else if ((line.oracle == Answer::Yes) != line.sentence) ++report.mismatches;
    report.lines.push_back(std::move(line));
  }
  return report;
}

QueryPool QueryPool::make(std::vector<UCQ> queries, std::size_t sizeCap) {
  sortQueries(queries);
  queries.erase(std::unique(queries.begin(), queries.end()), queries.end());
  return QueryPool{std::move(queries), sizeCap};
}

std::optional<std::size_t> QueryPool::indexOf(const UCQ& query) const {
  for (std::size_t i = 0; i < queries.size(); ++i)
    if (queries[i] == query) return i;
  return std::nullopt;
}

namespace {

class Admission {
 public:
  Admission(const OntologyOracle& oracle, const Database& database, const QueryPool& pool,
            const BoundFunction& bound)
      : oracle_(oracle), database_(database), pool_(pool), bound_(bound),
        memo_(pool.queries.size()), local_(pool.queries.size()), reason_(pool.queries.size()) {
    auto adom = database.activeDomain();
    domain_.assign(adom.begin(), adom.end());
  }

  Answer admitted(std::size_t i) {
    if (memo_[i]) return *memo_[i];
    std::optional<UCQ> prhat;
    std::size_t members = 0;
    for (std::size_t j = 0; j < i; ++j) {
      Answer a = admitted(j);
      if (a == Answer::Unknown) {
        reason_[i] = "admission of " + toString(pool_.queries[j]) + " is undecided";
        return *(memo_[i] = Answer::Unknown);
      }
      if (a == Answer::Yes) {
        prhat = prhat ? conj(*prhat, pool_.queries[j]) : pool_.queries[j];
        ++members;
      }
    }
    prhat = prhat ? conj(pool_.queries[i], *prhat) : pool_.queries[i];

    bool unknown = false;
    std::size_t checked = 0;
    for (std::size_t p = 0; p < pool_.queries.size(); ++p) {
      const UCQ& candidate = pool_.queries[p];
      if (candidate.size() > prhat->size() || !ucqContains(*prhat, candidate)) continue;
      ++checked;
      Answer a = locallyEntailed(p);
      if (a == Answer::No) {
        reason_[i] = toString(candidate) + " has no support on " +
                     std::to_string(bound_(candidate.size())) + " constants";
        return *(memo_[i] = Answer::No);
      }
      if (a == Answer::Unknown) unknown = true;
    }
    reason_[i] = std::to_string(members) + " preceding members admitted, " +
                 std::to_string(checked) + " implied pool queries checked";
    return *(memo_[i] = unknown ? Answer::Unknown : Answer::Yes);
  }

  const std::string& reason(std::size_t i) const { return reason_[i]; }

 private:
  /// ∃A ⊆ adom(D), |A| <= ℓ(||p||), (D|_A, p) ∈ O. Membership is monotone
  /// under inclusion, so only subsets of the largest admissible size matter.
  Answer locallyEntailed(std::size_t p) {
    if (local_[p]) return *local_[p];
    const UCQ& q = pool_.queries[p];
    std::size_t k = std::min(bound_(q.size()), domain_.size());
    Answer result = Answer::No;
    forEachSubset(domain_, k, [&](const std::set<Term>& a) {
      Answer ans = oracle_.member(restrict(database_, a), q).answer;
      if (ans == Answer::Yes) {
        result = Answer::Yes;
        return false;
      }
      if (ans == Answer::Unknown) result = Answer::Unknown;
      return true;
    });
    return *(local_[p] = result);
  }

  const OntologyOracle& oracle_;
  const Database& database_;
  const QueryPool& pool_;
  const BoundFunction& bound_;
  std::vector<Term> domain_;
  std::vector<std::optional<Answer>> memo_;
  std::vector<std::optional<Answer>> local_;
  std::vector<std::string> reason_;
};

}  // namespace

Verdict conditionHolds(const OntologyOracle& oracle, const Database& database, const UCQ& query,
                       const QueryPool& pool, const BoundFunction& bound) {
  auto index = pool.indexOf(query);
  if (!index) throw Error("query " + toString(query) + " is not in the pool");
  Admission admission(oracle, database, pool, bound);
  Verdict v;
  v.answer = admission.admitted(*index);
  v.witness = admission.reason(*index);
  v.warnings.push_back("quantification restricted to a pool of " +
                       std::to_string(pool.queries.size()) + " queries");
  return v;
}

std::vector<Answer> admittedQueries(const OntologyOracle& oracle, const Database& database,
                                    const QueryPool& pool, const BoundFunction& bound) {
  Admission admission(oracle, database, pool, bound);
  std::vector<Answer> out;
  for (std::size_t i = 0; i < pool.queries.size(); ++i) out.push_back(admission.admitted(i));
  return out;
}

ClosureResult closeOntology(const std::vector<OntologyPair>& pairs, const QueryPool& pool,
                            const std::vector<Database>& universe) {
  ClosureResult result;
  const auto& qs = pool.queries;
  const std::size_t n = qs.size();
  std::set<std::pair<std::size_t, std::size_t>> in;
  std::vector<std::pair<std::size_t, std::size_t>> work;
  auto add = [&](std::size_t d, std::size_t q) {
    if (in.emplace(d, q).second) work.emplace_back(d, q);
  };
  for (const auto& p : pairs) {
    auto d = std::find(universe.begin(), universe.end(), p.database);
    auto q = pool.indexOf(p.query);
    if (d == universe.end() || !q) {
      result.diagnostics.push_back("pair outside the universe: " + factList(p.database) + ", " +
                                   toString(p.query));
      continue;
    }
    add(static_cast<std::size_t>(d - universe.begin()), *q);
  }

  std::vector<std::vector<bool>> implies(n, std::vector<bool>(n));
  std::vector<std::vector<std::optional<std::size_t>>> conjOf(
      n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      implies[a][b] = ucqContains(qs[a], qs[b]);
      if (b < a) continue;
      UCQ c = conj(qs[a], qs[b]);
      for (std::size_t r = 0; r < n; ++r)
        if (ucqEquivalent(qs[r], c)) {
          conjOf[a][b] = conjOf[b][a] = r;
          break;
        }
    }
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool> homs;
  auto injectiveImage = [&](std::size_t d, std::size_t e, std::size_t q) {
    auto key = std::make_tuple(d, e, q);
    if (auto it = homs.find(key); it != homs.end()) return it->second;
    bool ok = findHomomorphism(universe[d], universe[e], qs[q].constants(), true).has_value();
    homs.emplace(key, ok);
    return ok;
  };

  std::set<std::pair<std::size_t, std::size_t>> reported;
  while (!work.empty()) {
    auto [d, q] = work.back();
    work.pop_back();
    for (std::size_t r = 0; r < n; ++r)
      if (implies[q][r]) add(d, r);
    std::vector<std::size_t> partners;
    for (const auto& [d2, q2] : in)
      if (d2 == d) partners.push_back(q2);
    for (auto q2 : partners) {
      if (conjOf[q][q2]) {
        add(d, *conjOf[q][q2]);
      } else if (qs[q].size() + qs[q2].size() <= pool.sizeCap &&
                 reported.emplace(std::min(q, q2), std::max(q, q2)).second) {
        result.diagnostics.push_back("pool lacks the conjunction of " + toString(qs[q]) +
                                     " and " + toString(qs[q2]));
      }
    }
    for (std::size_t e = 0; e < universe.size(); ++e)
      if (e != d && injectiveImage(d, e, q)) add(e, q);
  }
  for (const auto& [d, q] : in) result.pairs.push_back(OntologyPair{universe[d], qs[q]});
  return result;
}

}  // namespace omqa
