#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "omqa/chase.hpp"
#include "omqa/diag.hpp"
#include "omqa/error.hpp"
#include "omqa/locality.hpp"
#include "omqa/succgen.hpp"
#include "omqa/syntax.hpp"
#include "omqa/umodels.hpp"

namespace omqa::cli {

namespace {

using nlohmann::json;

/// Bad invocation, including unreadable input files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs `fn` with parse errors reported against the file name.
template <typename Fn>
auto load(const std::string& path, Fn&& fn) {
  std::string text = readFile(path);
  try {
    return fn(text);
  } catch (const ParseError& e) {
    throw Error(path + ":" + e.what());
  }
}

struct ChaseFlags {
  std::size_t budget = 10000;
  std::string strategy = "restricted";
  std::optional<std::size_t> maxNulls;
  unsigned parallel = 1;

  void attach(CLI::App* app) {
    app->add_option("--budget", budget, "maximum chase firings")->capture_default_str();
    app->add_option("--strategy", strategy, "restricted or semi-oblivious")
        ->check(CLI::IsMember({"restricted", "semi-oblivious"}))
        ->capture_default_str();
    app->add_option("--max-nulls", maxNulls, "per-branch cap on invented nulls");
    app->add_option("--parallel", parallel, "branch-parallel chase workers")
        ->check(CLI::Range(1u, 256u));
  }

  ChaseOptions options() const {
    ChaseOptions o;
    o.budget = budget;
    o.strategy = strategy == "semi-oblivious" ? Strategy::SemiOblivious : Strategy::Restricted;
    o.maxNulls = maxNulls;
    o.parallelism = parallel;
    return o;
  }
};

int answerCode(Answer a) {
  switch (a) {
    case Answer::Yes: return kYes;
    case Answer::No: return kNo;
    case Answer::Unknown: return kUnknown;
  }
  return kUnknown;
}

json factsJson(const Instance& instance) {
  json facts = json::array();
  for (const auto& f : instance) facts.push_back(toString(f));
  return facts;
}

std::string setString(const std::set<Term>& terms) {
  std::string out;
  for (const auto& t : terms) out += (out.empty() ? "" : ",") + toString(t);
  return "{" + out + "}";
}

struct Inputs {
  std::string data;
  std::string rules;
  std::string query;
  std::string bound;
  std::string dSchema;
  std::string qSchema;
  std::string format = "text";

  Database database() const { return load(data, [](const std::string& t) { return parseDatabase(t); }); }
  Program program() const { return load(rules, [](const std::string& t) { return parseProgram(t); }); }
  UCQ ucq() const { return load(query, [](const std::string& t) { return parseQuery(t); }); }
  BoundFunction boundFunction() const {
    return load(bound, [](const std::string& t) { return parseBound(t); });
  }
  Schema schemaD() const { return Schema::parse(dSchema, Partition::Database); }
  Schema schemaQ() const { return Schema::parse(qSchema, Partition::Query); }
};

class Driver {
 public:
  Driver(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Ontology-mediated query answering toolkit", "omqa"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "omqa 1.0");

    std::function<int()> action;
    addAnswer(app, action);
    addChase(app, action);
    addRewrite(app, action);
    addVerify(app, action);
    addCheckLocal(app, action);
    addUModels(app, action);
    addGenSucc(app, action);
    addFigure1(app, action);
    addDiag(app, action);
    addPoolClose(app, action);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out_, err_);
      return code == 0 ? kYes : kUsage;
    }

    try {
      return action();
    } catch (const UsageError& e) {
      err_ << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const UnresolvedError& e) {
      err_ << "unresolved: " << e.what() << '\n';
      return kUnknown;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return kDataError;
    }
  }

 private:
  void warn(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) err_ << "warning: " << w << '\n';
  }

  void addAnswer(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("answer", "decide D ∪ Σ ⊨ q");
    cmd->add_option("--data", in_.data, "database (.db)")->required();
    cmd->add_option("--rules", in_.rules, "rules (.ded)")->required();
    cmd->add_option("--query", in_.query, "boolean query (.ucq)")->required();
    cmd->add_option("--format", in_.format)->check(CLI::IsMember({"text", "json"}));
    chase_.attach(cmd);
    cmd->callback([&] {
      action = [&] {
        Verdict v = certainAnswer(in_.database(), in_.program(), in_.ucq(), chase_.options());
        warn(v.warnings);
        if (in_.format == "json") {
          out_ << json{{"answer", toString(v.answer)}, {"witness", v.witness},
                       {"warnings", v.warnings}}.dump(2)
               << '\n';
        } else {
          out_ << toString(v.answer) << '\n';
          if (v.answer == Answer::No) out_ << "counterexample branch " << v.witness << '\n';
          else if (v.answer == Answer::Yes) out_ << v.witness << '\n';
        }
        return answerCode(v.answer);
      };
    });
  }

  void addChase(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("chase", "run the disjunctive chase");
    cmd->add_option("--data", in_.data)->required();
    cmd->add_option("--rules", in_.rules)->required();
    cmd->add_option("--format", in_.format)->check(CLI::IsMember({"text", "json", "dot"}));
    cmd->add_flag("--trace", trace_, "print the firing log");
    chase_.attach(cmd);
    cmd->callback([&] {
      action = [&] {
        ChaseTree tree = chase(in_.database(), in_.program(), chase_.options());
        if (in_.format == "dot") {
          out_ << toDot(tree);
        } else if (in_.format == "json") {
          json branches = json::array();
          for (const auto& b : tree.branches)
            branches.push_back({{"id", b.id}, {"status", toString(b.status)},
                                {"facts", factsJson(b.instance)}, {"failure", b.failure}});
          json doc{{"firings", tree.firings}, {"budget", tree.budget}, {"branches", branches}};
          if (trace_) doc["trace"] = traceLog(tree);
          out_ << doc.dump(2) << '\n';
        } else {
          for (const auto& b : tree.branches) {
            out_ << "--- branch " << b.id << " (" << toString(b.status) << ") ---\n";
            if (!b.failure.empty()) out_ << "# " << b.failure << '\n';
            out_ << serialize(b.instance);
          }
          out_ << "# " << tree.firings << " firings, " << tree.branches.size() << " branches\n";
          if (trace_) out_ << traceLog(tree);
        }
        return tree.hasOpenBranches() ? kUnknown : kYes;
      };
    });
  }

  void addRewriteOptions(CLI::App* cmd) {
    cmd->add_option("--rules", in_.rules)->required();
    cmd->add_option("--query", in_.query)->required();
    cmd->add_option("--bound", in_.bound, "bound function (.bound)")->required();
    cmd->add_option("--d-schema", in_.dSchema, "database schema, e.g. P/1,E/2")->required();
    cmd->add_flag("--paper-strict-lambda", strictLambda_,
                  "omit inequalities between variables and query constants");
    cmd->add_option("--max-facts", maxFacts_, "fact cap for database enumeration");
    chase_.attach(cmd);
  }

  EpfoSentence computeRewriting(const OntologyOracle& oracle, const UCQ& q) {
    return rewrite(oracle, q, in_.boundFunction(), in_.schemaD(),
                   strictLambda_ ? LambdaMode::PaperStrict : LambdaMode::WithConstants, maxFacts_);
  }

  void addRewrite(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("rewrite", "∃⁺FO(≠) rewriting of a query");
    addRewriteOptions(cmd);
    cmd->callback([&] {
      action = [&] {
        ChaseOracle oracle(in_.program(), chase_.options());
        UCQ q = in_.ucq();
        EpfoSentence psi = computeRewriting(oracle, q);
        out_ << toString(psi) << '\n';
        out_ << "# " << termCount(psi) << " terms\n";
        return kYes;
      };
    });
  }

  void addVerify(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("verify-rewriting",
                                   "rewrite, then compare against the chase on small databases");
    addRewriteOptions(cmd);
    cmd->add_option("--max-constants", maxConstants_, "largest database size checked")
        ->required();
    cmd->add_option("--drop-disjunct", dropDisjunct_,
                    "remove the k-th top-level disjunct before verifying (0-based)");
    cmd->callback([&] {
      action = [&] {
        ChaseOracle oracle(in_.program(), chase_.options());
        UCQ q = in_.ucq();
        EpfoSentence psi = computeRewriting(oracle, q);
        if (dropDisjunct_) {
          auto& kids = psi.matrix.children;
          if (psi.matrix.kind != EpfoFormula::Kind::Or || *dropDisjunct_ >= kids.size())
            throw UsageError("rewriting has no disjunct " + std::to_string(*dropDisjunct_));
          kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(*dropDisjunct_));
        }
        RewritingReport report =
            verifyRewriting(psi, oracle, q, in_.schemaD(), maxConstants_, maxFacts_);
        out_ << report.toString();
        if (report.unresolved) return kUnknown;
        return report.mismatches ? kNo : kYes;
      };
    });
  }

  void addCheckLocal(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("check-local", "find a locality witness for (D, q)");
    cmd->add_option("--rules", in_.rules)->required();
    cmd->add_option("--data", in_.data)->required();
    cmd->add_option("--query", in_.query)->required();
    cmd->add_option("--bound", in_.bound)->required();
    cmd->add_option("--format", in_.format)->check(CLI::IsMember({"text", "json"}));
    chase_.attach(cmd);
    cmd->callback([&] {
      action = [&] {
        ChaseOracle oracle(in_.program(), chase_.options());
        LocalityResult r = checkLocal(oracle, in_.database(), in_.ucq(), in_.boundFunction());
        const char* kind = r.kind == LocalityResult::Kind::Witness ? "witness"
                           : r.kind == LocalityResult::Kind::None  ? "none"
                                                                   : "unknown";
        if (in_.format == "json") {
          json w = json::array();
          for (const auto& t : r.witness) w.push_back(toString(t));
          out_ << json{{"result", kind}, {"witness", w}, {"bound", r.bound}, {"note", r.note}}
                      .dump(2)
               << '\n';
        } else {
          out_ << kind;
          if (r.kind == LocalityResult::Kind::Witness) out_ << ' ' << setString(r.witness);
          out_ << " (bound " << r.bound << ")\n# " << r.note << '\n';
        }
        if (r.kind == LocalityResult::Kind::Witness) return kYes;
        return r.kind == LocalityResult::Kind::None ? kNo : kUnknown;
      };
    });
  }

  void addUModels(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("umodels", "universal model set from entailed queries");
    cmd->add_option("--entailed", entailed_, "entailed queries, dot-terminated (.ucq)")
        ->required();
    cmd->add_option("--data", in_.data)->required();
    cmd->add_option("--mode", hitting_, "inclusion or cardinality")
        ->check(CLI::IsMember({"inclusion", "cardinality"}));
    cmd->add_option("--query", in_.query, "check a query against every model");
    cmd->callback([&] {
      action = [&] {
        auto lambda = load(entailed_, [](const std::string& t) { return parseQueries(t); });
        auto models = universalModelSet(
            lambda, in_.database(),
            hitting_ == "cardinality" ? HittingMode::Cardinality : HittingMode::Inclusion);
        out_ << serializeBundle(models);
        if (in_.query.empty()) return kYes;
        bool holds = certainViaUModels(models, in_.ucq());
        out_ << "# " << (holds ? "yes" : "no") << '\n';
        return holds ? kYes : kNo;
      };
    });
  }

  void addGenSucc(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("gen-succ", "emit the successor-encoding rule sets");
    cmd->add_option("--d-schema", in_.dSchema, "database schema for the AD rules");
    cmd->add_option("--q-schema", in_.qSchema, "query schema for the copy rules");
    cmd->add_option("--prefix", prefix_, "prefix for auxiliary relation names");
    cmd->add_option("--part", part_, "order, successor, numeric, model or all")
        ->check(CLI::IsMember({"order", "successor", "numeric", "model", "all"}));
    cmd->callback([&] {
      action = [&] {
        Vocabulary vocab{prefix_};
        Schema d = in_.dSchema.empty() ? Schema{} : in_.schemaD();
        Schema q = in_.qSchema.empty() ? Schema{} : in_.schemaQ();
        Schema user = d;
        user.merge(q);
        vocab.checkDisjoint(user, q);
        auto emit = [&](const std::string& name, const Program& p) {
          if (part_ != "all" && part_ != name) return;
          out_ << "# " << name << '\n' << serialize(p);
        };
        emit("order", orderRules(d, vocab));
        emit("successor", successorRules(vocab));
        emit("numeric", numericRules(vocab));
        emit("model", modelBuilderRules(q, vocab));
        return kYes;
      };
    });
  }

  void addFigure1(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("figure1", "partial successor chains over ordered constants");
    cmd->add_option("--constants", constants_, "number of ordered constants")
        ->check(CLI::Range(1, 8));
    cmd->add_option("--format", in_.format, "text, json, dot or db")
        ->check(CLI::IsMember({"text", "json", "dot", "db"}));
    cmd->callback([&] {
      action = [&] {
        ChainRun run = runSuccessorChase(totalOrderSeed(constants_));
        if (in_.format == "dot") {
          out_ << chainsToDot(run.instance);
        } else if (in_.format == "db") {
          out_ << serialize(run.instance);
        } else if (in_.format == "json") {
          json chains = json::array();
          for (const auto& c : run.chains) {
            json elements = json::array();
            for (const auto& e : c.elements) elements.push_back(toString(e));
            chains.push_back({{"head", toString(c.name)}, {"elements", elements}});
          }
          out_ << json{{"chains", chains}, {"count", run.chains.size()}}.dump(2) << '\n';
        } else {
          for (const auto& c : run.chains) out_ << toString(c) << '\n';
          out_ << run.chains.size() << " chains\n";
        }
        return kYes;
      };
    });
  }

  void addDiag(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("diag", "generate the N and t sequence prefixes");
    cmd->add_option("--theory", theories_, "theory files (.ded), in enumeration order")
        ->required();
    cmd->add_option("--d-schema", in_.dSchema)->required();
    cmd->add_option("--i-max", iMax_)->required();
    cmd->add_option("--db-bound", dbBound_, "largest database size searched")->required();
    cmd->add_option("--max-facts", maxFacts_);
    cmd->add_option("--relation", relation_, "binary relation of the path queries");
    chase_.attach(cmd);
    cmd->callback([&] {
      action = [&] {
        std::vector<NamedOracle> list;
        for (const auto& path : theories_) {
          Program p = load(path, [](const std::string& t) { return parseProgram(t); });
          list.push_back(NamedOracle{std::filesystem::path(path).stem().string(),
                                     std::make_shared<ChaseOracle>(p, chase_.options())});
        }
        SequencePrefix prefix =
            runProcedure1(list, iMax_, dbBound_, in_.schemaD(), maxFacts_, relation_);
        out_ << traceTsv(prefix);
        out_ << "# N =";
        for (auto n : prefix.N) out_ << ' ' << n;
        out_ << "\n# t =";
        for (const auto& t : prefix.t) out_ << ' ' << t;
        out_ << '\n';
        if (prefix.exhausted) out_ << "# theory list exhausted\n";
        if (!prefix.aborted.empty()) {
          err_ << "aborted: " << prefix.aborted << '\n';
          return kUnknown;
        }
        return kYes;
      };
    });
  }

  void addPoolClose(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand(
        "pool-close", "admitted pairs over a pool and database universe, then their closure");
    cmd->add_option("--rules", in_.rules)->required();
    cmd->add_option("--pool", pool_, "query pool, dot-terminated (.ucq)")->required();
    cmd->add_option("--universe", universe_, "database bundle")->required();
    cmd->add_option("--bound", in_.bound)->required();
    cmd->add_option("--size-cap", sizeCap_, "size up to which the pool is conjunction-closed");
    chase_.attach(cmd);
    cmd->callback([&] {
      action = [&] {
        ChaseOracle oracle(in_.program(), chase_.options());
        QueryPool pool = QueryPool::make(
            load(pool_, [](const std::string& t) { return parseQueries(t); }), sizeCap_);
        auto universe = load(universe_, [](const std::string& t) { return parseBundle(t, false); });
        BoundFunction bound = in_.boundFunction();
        std::vector<OntologyPair> admitted;
        bool unknown = false;
        for (const auto& d : universe) {
          auto verdicts = admittedQueries(oracle, d, pool, bound);
          for (std::size_t i = 0; i < verdicts.size(); ++i) {
            if (verdicts[i] == Answer::Yes) admitted.push_back(OntologyPair{d, pool.queries[i]});
            if (verdicts[i] == Answer::Unknown) unknown = true;
          }
        }
        ClosureResult closed = closeOntology(admitted, pool, universe);
        out_ << "# pool of " << pool.queries.size() << " queries, " << universe.size()
             << " databases, " << admitted.size() << " admitted, " << closed.pairs.size()
             << " after closure\n";
        for (const auto& p : closed.pairs) {
          std::string facts;
          for (const auto& f : p.database) facts += (facts.empty() ? "" : " ") + toString(f);
          out_ << '{' << facts << "}\t" << toString(p.query) << '\n';
        }
        for (const auto& d : closed.diagnostics) err_ << "diagnostic: " << d << '\n';
        return unknown ? kUnknown : kYes;
      };
    });
  }

  std::ostream& out_;
  std::ostream& err_;
  Inputs in_;
  ChaseFlags chase_;
  bool trace_ = false;
  bool strictLambda_ = false;
  std::optional<std::size_t> maxFacts_;
  std::size_t maxConstants_ = 0;
  std::optional<std::size_t> dropDisjunct_;
  std::string entailed_;
  std::string hitting_ = "inclusion";
  std::string prefix_;
  std::string part_ = "all";
  std::size_t constants_ = 3;
  std::vector<std::string> theories_;
  std::size_t iMax_ = 1;
  std::size_t dbBound_ = 4;
  std::string relation_ = "R";
  std::string pool_;
  std::string universe_;
  std::size_t sizeCap_ = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Driver driver(out, err);
  return driver.run(args);
}

}  // namespace omqa::cli
