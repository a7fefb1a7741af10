#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omqa/instance.hpp"
#include "omqa/schema.hpp"

namespace omqa {

/// Databases over the relations of `schema` with at most `maxConstants`
/// constants in their active domain, one per isomorphism class over `fixed`
/// (fixed constants map to themselves, the others are renamed c1, c2, ...).
/// Includes the empty database. `maxFacts` caps the fact count; without a cap
/// the candidate fact space per constant count must stay small (about 24
/// facts) or Error is thrown.
std::vector<Database> enumerateDatabases(const Schema& schema, const std::set<Term>& fixed,
                                         std::size_t maxConstants,
                                         std::optional<std::size_t> maxFacts = std::nullopt);

/// Isomorphism-invariant key: the minimum serialization over all renamings of
/// the constants outside `fixed`.
std::string canonicalKey(const Database& database, const std::set<Term>& fixed);

}  // namespace omqa
