#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "omqa/bound.hpp"
#include "omqa/ded.hpp"
#include "omqa/instance.hpp"
#include "omqa/query.hpp"
#include "omqa/schema.hpp"

namespace omqa {

// Text formats. Identifiers starting with an uppercase letter are variables,
// lowercase letters or digits start constants, and a leading underscore marks
// a labelled null (instances only). `#` starts a comment that runs to the end
// of the line. All errors are ParseError with a 1-based location.

/// `.db`: one fact per statement, `R(a,b).` Duplicates collapse. When a schema
/// is given every fact is checked against it, otherwise the first occurrence
/// of a relation fixes its arity.
Database parseDatabase(std::string_view text, const Schema* schema = nullptr);
/// Like parseDatabase but labelled nulls are accepted.
Instance parseInstance(std::string_view text, const Schema* schema = nullptr);

/// `.ucq`: `exists X,Y: R(X,Y), R(Y,a) | exists W: S(W)`, optionally ended by
/// a dot.
UCQ parseQuery(std::string_view text);
/// Several dot-terminated queries (a query pool).
std::vector<UCQ> parseQueries(std::string_view text);

/// `.ded`: `body -> head1 | head2 .`, `false` for an empty head. Head
/// variables absent from the body are existential per disjunct; a disjunct
/// may also declare them with `exists Z:`.
Program parseProgram(std::string_view text);

/// `.bound`: `affine a b` or `table n0 n1 ... ; affine a b`.
BoundFunction parseBound(std::string_view text);

/// Multi-instance bundle separated by `--- instance k ---` lines.
std::vector<Instance> parseBundle(std::string_view text, bool allowNulls = true);

std::string serialize(const Instance& instance);
std::string serialize(const UCQ& query);
std::string serialize(const Program& program);
std::string serialize(const BoundFunction& bound);
std::string serializeBundle(const std::vector<Instance>& instances);

}  // namespace omqa
