#include "omqa/diag.hpp"

#include <map>
#include <sstream>

#include "omqa/dbenum.hpp"
#include "omqa/error.hpp"
#include "omqa/hom.hpp"

namespace omqa {

CQ pathQuery(std::size_t n, const std::string& relation, const Schema* schemaQ) {
  if (n == 0) throw Error("path queries start at length 1");
  if (schemaQ) {
    auto info = schemaQ->find(relation);
    if (!info || info->arity != 2)
      throw SchemaError("path queries need a binary relation " + relation);
  }
  CQ q;
  for (std::size_t k = 0; k < n; ++k)
    q.atoms.push_back(Atom{relation, {Term::variable("X" + std::to_string(k)),
                                      Term::variable("X" + std::to_string(k + 1))}});
  return q;
}

namespace {

/// Memoised "∃D, |adom(D)| <= b, (D, q_i) ∈ M(s)" tests.
class ExistenceTests {
 public:
  ExistenceTests(const Schema& schemaD, std::optional<std::size_t> maxFacts,
                 const std::string& relation)
      : schemaD_(schemaD), maxFacts_(maxFacts), relation_(relation) {}

  Answer test(const NamedOracle& theory, std::size_t i, std::size_t bound) {
    auto key = std::make_tuple(theory.oracle.get(), i, bound);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    UCQ q = pathQuery(i, relation_);
    Answer result = Answer::No;
    for (const auto& d : databases(bound)) {
      Answer a = theory.oracle->member(d, q).answer;
      if (a == Answer::Yes) {
        result = Answer::Yes;
        break;
      }
      if (a == Answer::Unknown) result = Answer::Unknown;
    }
    memo_.emplace(key, result);
    return result;
  }

 private:
  const std::vector<Database>& databases(std::size_t bound) {
    auto it = dbs_.find(bound);
    if (it == dbs_.end()) it = dbs_.emplace(bound, enumerateDatabases(schemaD_, {}, bound, maxFacts_)).first;
    return it->second;
  }

  const Schema& schemaD_;
  std::optional<std::size_t> maxFacts_;
  std::string relation_;
  std::map<std::size_t, std::vector<Database>> dbs_;
  std::map<std::tuple<const OntologyOracle*, std::size_t, std::size_t>, Answer> memo_;
};

}  // namespace

SequencePrefix runProcedure1(const std::vector<NamedOracle>& theories, std::size_t iMax,
                             std::size_t dbSearchBound, const Schema& schemaD,
                             std::optional<std::size_t> maxFacts, const std::string& relation) {
  SequencePrefix out;
  std::vector<NamedOracle> s = theories;
  ExistenceTests tests(schemaD, maxFacts, relation);
  std::size_t n = 1;

  auto run = [&](std::size_t i, std::size_t j, std::size_t bound) {
    Answer a = tests.test(s[j - 1], i, bound);
    out.trace.push_back(ProcedureStep{i, n, j, s[j - 1].name, bound, a});
    return a;
  };

  for (std::size_t i = 1; i <= iMax; ++i) {
    if (s.empty()) {
      out.exhausted = true;
      return out;
    }
    std::optional<std::size_t> selected;
    while (!selected) {
      if (n + 1 > dbSearchBound) {
        out.aborted = "search bound " + std::to_string(dbSearchBound) + " reached at i=" +
                      std::to_string(i) + ", n=" + std::to_string(n);
        return out;
      }
      for (std::size_t j = 1; j <= std::min(n, s.size()) && !selected; ++j) {
        Answer a = run(i, j, n);
        if (a == Answer::Unknown) {
          out.aborted = "undecided at (i, n, j) = (" + std::to_string(i) + ", " +
                        std::to_string(n) + ", " + std::to_string(j) + ")";
          return out;
        }
        if (a == Answer::Yes) {
          selected = j;
          break;
        }
        a = run(i, j, n + 1);
        if (a == Answer::Unknown) {
          out.aborted = "undecided at (i, n, j) = (" + std::to_string(i) + ", " +
                        std::to_string(n + 1) + ", " + std::to_string(j) + ")";
          return out;
        }
        if (a == Answer::Yes) {
          ++n;
          selected = j;
        }
      }
      if (!selected) ++n;
    }
    out.N.push_back(n);
    out.t.push_back(s[*selected - 1].name);
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(*selected - 1));
  }
  return out;
}

std::string traceTsv(const SequencePrefix& prefix) {
  std::ostringstream out;
  out << "i\tn\tj\ttheory\tbound\toutcome\n";
  for (const auto& s : prefix.trace)
    out << s.i << '\t' << s.n << '\t' << s.j << '\t' << s.theory << '\t' << s.testBound << '\t'
        << toString(s.outcome) << '\n';
  return out.str();
}

EpfoSentence phiQuery(const UCQ& query, const std::vector<std::size_t>& N,
                      const std::string& relation) {
  // A disjunct maps into some path only if it is constant-free and uses R
  // alone; its image then fits in a path as long as its atom count.
  std::size_t horizon = 0;
  for (const auto& d : query.disjuncts()) {
    bool onlyR = std::all_of(d.atoms.begin(), d.atoms.end(), [&](const Atom& a) {
      return a.relation == relation && a.args.size() == 2;
    });
    if (onlyR && d.constants().empty()) horizon = std::max(horizon, d.atoms.size());
  }
  for (std::size_t m = 1; m <= horizon; ++m) {
    if (!ucqContains(UCQ(pathQuery(m, relation)), query)) continue;
    if (m > N.size())
      throw Error("sequence prefix of length " + std::to_string(N.size()) +
                  " is too short, need N_" + std::to_string(m));
    return atLeastSentence(N[m - 1] + 1);
  }
  return EpfoSentence::falsum();
}

}  // namespace omqa
