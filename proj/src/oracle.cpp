#include "omqa/oracle.hpp"

#include <algorithm>

#include "omqa/error.hpp"
#include "omqa/hom.hpp"
#include "omqa/syntax.hpp"

namespace omqa {

ChaseOracle::ChaseOracle(Program program, ChaseOptions options)
    : program_(std::move(program)), options_(options) {}

Verdict ChaseOracle::member(const Database& database, const UCQ& query) const {
  std::string key = serialize(database) + "\n?" + toString(query);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  Verdict v = certainAnswer(database, program_, query, options_);
  std::lock_guard lock(mutex_);
  cache_.emplace(std::move(key), v);
  return v;
}

std::string ChaseOracle::describe() const {
  return "chase over " + std::to_string(program_.size()) + " rules, budget " +
         std::to_string(options_.budget);
}

namespace {

std::optional<std::size_t> findDatabase(const std::vector<Database>& universe,
                                        const Database& d) {
  auto it = std::find(universe.begin(), universe.end(), d);
  if (it == universe.end()) return std::nullopt;
  return static_cast<std::size_t>(it - universe.begin());
}

std::optional<std::size_t> findQuery(const std::vector<UCQ>& pool, const UCQ& q) {
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (pool[i] == q) return i;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (ucqEquivalent(pool[i], q)) return i;
  return std::nullopt;
}

std::string describePair(const Database& d, const UCQ& q) {
  std::string facts;
  for (const auto& f : d) facts += (facts.empty() ? "" : " ") + toString(f);
  return "({" + facts + "}, " + toString(q) + ")";
}

}  // namespace

std::vector<std::string> TableOracle::closureViolations(const std::vector<Database>& universe,
                                                        const std::vector<UCQ>& pool,
                                                        const std::vector<OntologyPair>& pairs) {
  std::vector<std::string> out;
  std::set<std::pair<std::size_t, std::size_t>> in;
  for (const auto& p : pairs) {
    auto d = findDatabase(universe, p.database);
    auto q = findQuery(pool, p.query);
    if (!d || !q) {
      out.push_back("pair " + describePair(p.database, p.query) + " lies outside the universe");
      continue;
    }
    in.emplace(*d, *q);
  }

  const std::size_t n = pool.size();
  std::vector<std::vector<bool>> implies(n, std::vector<bool>(n));
  std::vector<std::vector<std::optional<std::size_t>>> conjOf(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      implies[a][b] = ucqContains(pool[a], pool[b]);
      if (b >= a) {
        UCQ c = conj(pool[a], pool[b]);
        for (std::size_t r = 0; r < n; ++r)
          if (ucqEquivalent(pool[r], c)) {
            conjOf[a][b] = conjOf[b][a] = r;
            break;
          }
      }
    }

  auto missing = [&](std::size_t d, std::size_t q, const std::string& why) {
    if (!in.count({d, q}))
      out.push_back("missing " + describePair(universe[d], pool[q]) + ": " + why);
  };
  for (const auto& [d, q] : in) {
    for (std::size_t r = 0; r < n; ++r)
      if (implies[q][r]) missing(d, r, "implied by " + toString(pool[q]));
    for (const auto& [d2, q2] : in)
      if (d2 == d && conjOf[q][q2]) missing(d, *conjOf[q][q2], "conjunction");
    for (std::size_t e = 0; e < universe.size(); ++e)
      if (e != d && findHomomorphism(universe[d], universe[e], pool[q].constants(), true))
        missing(e, q, "injective homomorphic image of " + describePair(universe[d], pool[q]));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TableOracle::TableOracle(std::vector<Database> universe, std::vector<UCQ> pool,
                         std::vector<OntologyPair> pairs)
    : universe_(std::move(universe)), pool_(std::move(pool)), pairs_(std::move(pairs)) {
  auto violations = closureViolations(universe_, pool_, pairs_);
  if (!violations.empty()) {
    std::string msg = "table ontology is not closed:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw Error(msg);
  }
  for (const auto& p : pairs_) index_.emplace(*findDatabase(universe_, p.database), *findQuery(pool_, p.query));
}

Verdict TableOracle::member(const Database& database, const UCQ& query) const {
  Verdict v;
  auto q = findQuery(pool_, query);
  if (!q) {
    v.warnings.push_back("query outside the table pool");
    return v;
  }
  auto d = findDatabase(universe_, database);
  if (!d) {
    for (std::size_t i = 0; i < universe_.size() && !d; ++i)
      if (isomorphic(universe_[i], database, query.constants())) d = i;
  }
  if (!d) {
    v.warnings.push_back("database outside the table universe");
    return v;
  }
  v.answer = index_.count({*d, *q}) ? Answer::Yes : Answer::No;
  return v;
}

std::string TableOracle::describe() const {
  return "table of " + std::to_string(pairs_.size()) + " pairs over " +
         std::to_string(universe_.size()) + " databases and " + std::to_string(pool_.size()) +
         " queries";
}

}  // namespace omqa
