#include "omqa/chase.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <set>
#include <sstream>

#include "omqa/error.hpp"

namespace omqa {

std::string toString(Answer answer) {
  switch (answer) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "?";
}

std::string toString(BranchStatus status) {
  switch (status) {
    case BranchStatus::Open: return "open";
    case BranchStatus::Saturated: return "saturated";
    case BranchStatus::Failed: return "failed";
    case BranchStatus::Truncated: return "truncated";
    case BranchStatus::Entailed: return "entailed";
  }
  return "?";
}

bool ChaseTree::hasOpenBranches() const {
  return std::any_of(branches.begin(), branches.end(),
                     [](const ChaseBranch& b) { return b.status == BranchStatus::Open; });
}

std::size_t ChaseTree::count(BranchStatus status) const {
  return static_cast<std::size_t>(std::count_if(
      branches.begin(), branches.end(), [&](const ChaseBranch& b) { return b.status == status; }));
}

namespace {

Term substitute(const Term& t, const Mapping& m) {
  if (!t.isVariable()) return t;
  auto it = m.find(t);
  return it == m.end() ? t : it->second;
}

Atom substitute(const Atom& a, const Mapping& m) {
  Atom out{a.relation, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(substitute(t, m));
  return out;
}

/// Equalities whose sides are unbound existentials get bound on the fly.
bool equalitiesHold(const std::vector<Equality>& equalities, Mapping binding) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : equalities) {
      Term l = substitute(e.lhs, binding);
      Term r = substitute(e.rhs, binding);
      if (l.isVariable() && r.isVariable()) {
        if (l != r) {
          binding[l] = r;
          changed = true;
        }
      } else if (l.isVariable()) {
        binding[l] = r;
        changed = true;
      } else if (r.isVariable()) {
        binding[r] = l;
        changed = true;
      } else if (l != r) {
        return false;
      }
    }
  }
  return true;
}

struct Trigger {
  std::size_t rule = 0;
  std::vector<Term> values;  // in rule.bodyVariables() order

  auto operator<=>(const Trigger&) const = default;
};

using FiredKey = std::pair<std::size_t, std::vector<Term>>;

struct BranchState {
  ChaseBranch data;
  std::deque<Trigger> pending;
  std::set<FiredKey> fired;
  std::size_t nullsCreated = 0;
  std::size_t nextNull = 0;
  bool blocked = false;

  Term find(Term t) const {
    for (auto it = data.merges.find(t); it != data.merges.end(); it = data.merges.find(t))
      t = it->second;
    return t;
  }
};

struct StepResult {
  std::vector<BranchState> states;
  bool fired = false;
};

class ChaseEngine {
 public:
  ChaseEngine(const Program& program, const ChaseOptions& options, const UCQ* stop)
      : program_(program), options_(options), stop_(stop) {}

  ChaseTree run(const Database& database) const {
    Schema schema = database.inferSchema(Partition::Auxiliary);
    schema.merge(inferSchema(program_, Partition::Auxiliary));
    if (stop_) {
      for (const auto& d : stop_->disjuncts())
        for (const auto& a : d.atoms) {
          auto info = schema.find(a.relation);
          if (info && info->arity != a.args.size())
            throw SchemaError("query uses " + a.relation + " with arity " +
                              std::to_string(a.args.size()) + ", schema says " +
                              std::to_string(info->arity));
        }
    }

    std::vector<BranchState> states(1);
    states[0].data.id = "0";
    states[0].data.instance = database;
    if (stop_ && evaluateUCQ(database, *stop_)) states[0].data.status = BranchStatus::Entailed;

    std::size_t firings = 0;
    while (firings < options_.budget) {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].data.status == BranchStatus::Open) open.push_back(i);
      if (open.empty()) break;
      open.resize(std::min(open.size(), options_.budget - firings));

      std::vector<StepResult> results = stepAll(states, open);
      // BranchState holds a deque, so vector growth would copy rather than move.
      std::size_t total = states.size();
      for (const auto& r : results) total += r.states.size();
      std::vector<BranchState> next;
      next.reserve(total);
      std::size_t k = 0;
      for (std::size_t i = 0; i < states.size(); ++i) {
        if (k < open.size() && open[k] == i) {
          if (results[k].fired) ++firings;
          for (auto& s : results[k].states) next.push_back(std::move(s));
          ++k;
        } else {
          next.push_back(std::move(states[i]));
        }
      }
      states = std::move(next);
      if (stop_ && std::any_of(states.begin(), states.end(), [](const BranchState& s) {
            return s.data.status == BranchStatus::Saturated;
          }))
        break;
    }

    // Out of budget: branches with nothing left to fire are still saturated.
    for (auto& s : states) {
      if (s.data.status != BranchStatus::Open) continue;
      BranchState probe = s;
      auto result = step(std::move(probe), false);
      if (!result.fired) s.data.status = result.states.front().data.status;
    }

    ChaseTree tree;
    tree.root = database;
    tree.firings = firings;
    tree.budget = options_.budget;
    tree.strategy = options_.strategy;
    for (auto& s : states) tree.branches.push_back(std::move(s.data));
    return tree;
  }

 private:
  std::vector<StepResult> stepAll(std::vector<BranchState>& states,
                                  const std::vector<std::size_t>& open) const {
    std::vector<StepResult> results(open.size());
    unsigned workers = std::max(1u, options_.parallelism);
    if (workers == 1 || open.size() < 2) {
      for (std::size_t k = 0; k < open.size(); ++k) results[k] = step(std::move(states[open[k]]), true);
      return results;
    }
    std::vector<std::future<void>> jobs;
    std::size_t chunk = (open.size() + workers - 1) / workers;
    for (std::size_t begin = 0; begin < open.size(); begin += chunk) {
      std::size_t end = std::min(open.size(), begin + chunk);
      jobs.push_back(std::async(std::launch::async, [&, begin, end] {
        for (std::size_t k = begin; k < end; ++k) results[k] = step(std::move(states[open[k]]), true);
      }));
    }
    for (auto& j : jobs) j.get();
    return results;
  }

  void refill(BranchState& s) const {
    std::vector<Trigger> found;
    for (std::size_t r = 0; r < program_.size(); ++r) {
      const DED& rule = program_[r];
      variableMatcher(rule.body(), s.data.instance).forEach([&](const Mapping& m) {
        Trigger t{r, {}};
        for (const auto& v : rule.bodyVariables()) t.values.push_back(m.at(v));
        found.push_back(std::move(t));
        return true;
      });
    }
    std::sort(found.begin(), found.end());
    s.pending.assign(found.begin(), found.end());
  }

  Mapping bindingOf(const Trigger& t) const {
    Mapping m;
    const auto& vars = program_[t.rule].bodyVariables();
    for (std::size_t i = 0; i < vars.size(); ++i) m.emplace(vars[i], t.values[i]);
    return m;
  }

  FiredKey keyOf(const BranchState& s, const Trigger& t) const {
    FiredKey key{t.rule, {}};
    const DED& rule = program_[t.rule];
    Mapping m = bindingOf(t);
    for (const auto& v : rule.frontier()) key.second.push_back(s.find(m.at(v)));
    return key;
  }

  static void finish(BranchState& s) {
    s.data.status = s.blocked ? BranchStatus::Truncated : BranchStatus::Saturated;
  }

  StepResult step(BranchState s, bool allowFire) const {
    bool refilled = false;
    for (;;) {
      if (s.pending.empty()) {
        if (!refilled) {
          refill(s);
          refilled = true;
        }
        if (s.pending.empty()) {
          finish(s);
          StepResult out;
          out.states.push_back(std::move(s));
          return out;
        }
      }
      Trigger t = s.pending.front();
      s.pending.pop_front();
      for (auto& v : t.values) v = s.find(v);
      const DED& rule = program_[t.rule];
      Mapping binding = bindingOf(t);

      bool bodyHolds = std::all_of(rule.body().begin(), rule.body().end(), [&](const Atom& a) {
        return s.data.instance.contains(substitute(a, binding));
      });
      if (!bodyHolds) continue;
      FiredKey key = keyOf(s, t);
      if (options_.strategy == Strategy::SemiOblivious) {
        if (s.fired.count(key)) continue;
      } else if (headSatisfied(s.data.instance, rule, binding)) {
        continue;
      }
      if (options_.maxNulls) {
        std::size_t need = 0;
        for (std::size_t i = 0; i < rule.heads().size(); ++i)
          need = std::max(need, rule.existentials(i).size());
        if (s.nullsCreated + need > *options_.maxNulls) {
          s.blocked = true;
          continue;
        }
      }

      StepResult out;
      out.fired = true;
      if (!allowFire) {
        out.states.push_back(std::move(s));
        return out;
      }
      s.fired.insert(key);
      if (rule.isFalsum()) {
        s.data.trace.push_back(traceStep(t, std::nullopt));
        s.data.status = BranchStatus::Failed;
        s.data.failure = "rule " + std::to_string(t.rule) + " has an empty head";
        out.states.push_back(std::move(s));
        return out;
      }
      if (rule.heads().size() == 1) {
        apply(s, t, 0);
        out.states.push_back(std::move(s));
        return out;
      }
      const std::size_t k = rule.heads().size();
      const std::string parent = s.data.id;
      out.states.reserve(k);
      for (std::size_t i = 0; i < k; ++i) {
        out.states.push_back(i + 1 < k ? s : std::move(s));
        BranchState& child = out.states.back();
        child.data.id = parent + "." + std::to_string(i);
        apply(child, t, i);
      }
      return out;
    }
  }

  TraceStep traceStep(const Trigger& t, std::optional<std::size_t> disjunct) const {
    TraceStep step{t.rule, disjunct, {}};
    const auto& vars = program_[t.rule].bodyVariables();
    for (std::size_t i = 0; i < vars.size(); ++i) step.assignment.emplace_back(vars[i], t.values[i]);
    return step;
  }

  void apply(BranchState& s, const Trigger& t, std::size_t disjunct) const {
    const DED& rule = program_[t.rule];
    const HeadDisjunct& head = rule.heads()[disjunct];
    Mapping m = bindingOf(t);
    for (const auto& z : rule.existentials(disjunct)) {
      m[z] = Term::null("n" + std::to_string(++s.nextNull));
      ++s.nullsCreated;
    }
    s.data.trace.push_back(traceStep(t, disjunct));
    for (const auto& a : head.atoms) s.data.instance.insert(substitute(a, m));
    for (const auto& e : head.equalities) {
      if (!merge(s, substitute(e.lhs, m), substitute(e.rhs, m))) return;
    }
    if (stop_ && evaluateUCQ(s.data.instance, *stop_)) s.data.status = BranchStatus::Entailed;
  }

  bool merge(BranchState& s, const Term& lhs, const Term& rhs) const {
    Term a = s.find(lhs);
    Term b = s.find(rhs);
    if (a == b) return true;
    if (a.isConstant() && b.isConstant()) {
      s.data.status = BranchStatus::Failed;
      s.data.failure = "distinct constants " + toString(a) + " and " + toString(b) + " equated";
      return false;
    }
    Term keep = a;
    Term drop = b;
    if (b.isConstant() || (!a.isConstant() && b < a)) std::swap(keep, drop);
    s.data.merges[drop] = keep;

    Instance rewritten;
    for (const auto& f : s.data.instance) {
      Atom g = f;
      for (auto& x : g.args)
        if (x == drop) x = keep;
      rewritten.insert(std::move(g));
    }
    s.data.instance = std::move(rewritten);

    std::set<FiredKey> keys;
    for (auto key : s.fired) {
      for (auto& x : key.second)
        if (x == drop) x = keep;
      keys.insert(std::move(key));
    }
    s.fired = std::move(keys);
    return true;
  }

  const Program& program_;
  const ChaseOptions& options_;
  const UCQ* stop_;
};

}  // namespace

bool headSatisfied(const Instance& instance, const DED& rule, const Mapping& binding) {
  for (const auto& head : rule.heads()) {
    bool holds = false;
    variableMatcher(head.atoms, instance).seed(binding).forEach([&](const Mapping& m) {
      holds = equalitiesHold(head.equalities, m);
      return !holds;
    });
    if (holds) return true;
  }
  return false;
}

bool isModelOf(const Instance& instance, const DED& rule) {
  bool model = true;
  variableMatcher(rule.body(), instance).forEach([&](const Mapping& m) {
    model = headSatisfied(instance, rule, m);
    return model;
  });
  return model;
}

bool isModel(const Instance& instance, const Program& program) {
  return std::all_of(program.begin(), program.end(),
                     [&](const DED& r) { return isModelOf(instance, r); });
}

ChaseTree chase(const Database& database, const Program& program, const ChaseOptions& options) {
  return ChaseEngine(program, options, nullptr).run(database);
}

ChaseTree chaseUntil(const Database& database, const Program& program, const UCQ& stop,
                     const ChaseOptions& options) {
  return ChaseEngine(program, options, &stop).run(database);
}

Verdict certainAnswer(const Database& database, const Program& program, const UCQ& query,
                      const ChaseOptions& options) {
  Verdict verdict;
  auto known = database.constants();
  for (const auto& rule : program) {
    auto c = rule.constants();
    known.insert(c.begin(), c.end());
  }
  for (const auto& c : query.constants())
    if (!known.count(c))
      verdict.warnings.push_back("query constant " + c.name +
                                 " occurs neither in the database nor in the rules");

  ChaseTree tree = chaseUntil(database, program, query, options);
  for (const auto& b : tree.branches) {
    if (b.status == BranchStatus::Saturated) {
      verdict.answer = Answer::No;
      verdict.witness = b.id;
      return verdict;
    }
  }
  bool conclusive = std::all_of(tree.branches.begin(), tree.branches.end(), [](const ChaseBranch& b) {
    return b.status == BranchStatus::Failed || b.status == BranchStatus::Entailed;
  });
  if (conclusive) {
    verdict.answer = Answer::Yes;
    verdict.witness = std::to_string(tree.count(BranchStatus::Entailed)) + " entailing, " +
                      std::to_string(tree.count(BranchStatus::Failed)) + " failed branches";
  }
  return verdict;
}

std::string traceLog(const ChaseTree& tree) {
  std::ostringstream out;
  for (const auto& b : tree.branches) {
    for (const auto& step : b.trace) {
      out << b.id << ' ' << step.rule << ' ';
      if (step.disjunct) out << *step.disjunct;
      else out << '-';
      out << ' ';
      for (std::size_t i = 0; i < step.assignment.size(); ++i) {
        if (i) out << ',';
        out << step.assignment[i].first.name << '=' << toString(step.assignment[i].second);
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string toDot(const ChaseTree& tree) {
  std::ostringstream out;
  out << "digraph chase {\n  rankdir=LR;\n  node [fontname=\"Helvetica\"];\n";
  std::size_t k = 0;
  for (const auto& b : tree.branches) {
    std::string prefix = "b" + std::to_string(k++) + "_";
    out << "  subgraph cluster_" << prefix << " {\n";
    out << "    label=\"branch " << b.id << " (" << toString(b.status) << ")\";\n";
    for (const auto& t : b.instance.activeDomain())
      out << "    \"" << prefix << toString(t) << "\" [label=\"" << toString(t) << "\""
          << (t.isNull() ? ", shape=circle" : ", shape=box") << "];\n";
    std::size_t f = 0;
    for (const auto& fact : b.instance) {
      std::string node = prefix + "f" + std::to_string(f++);
      if (fact.args.size() == 2) {
        out << "    \"" << prefix << toString(fact.args[0]) << "\" -> \"" << prefix
            << toString(fact.args[1]) << "\" [label=\"" << fact.relation << "\"];\n";
        continue;
      }
      out << "    \"" << node << "\" [label=\"" << fact.relation << "\", shape=plaintext];\n";
      for (std::size_t i = 0; i < fact.args.size(); ++i)
        out << "    \"" << node << "\" -> \"" << prefix << toString(fact.args[i]) << "\" [label=\""
            << i + 1 << "\"];\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace omqa
