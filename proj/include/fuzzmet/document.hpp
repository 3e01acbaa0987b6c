#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fuzzmet/metrics.hpp"

namespace fuzz {

// An on-disk bundle: one ground space, named fuzzy sets over it, optional
// named groupings.  The text form is a strict versioned JSON schema
// ({"fuzzdoc": 1, ...}) with "+inf"/"-inf" endpoint sentinels; see the
// README for the full grammar.
struct Document {
  SpacePtr space;
  std::vector<std::pair<std::string, AnyFuzzySet>> sets;
  std::vector<std::pair<std::string, std::vector<std::string>>> collections;

  const AnyFuzzySet* find(const std::string& name) const;
};

// Throws std::runtime_error with a field-precise location on any schema or
// value problem.  With check_sets every set must pass validate() or the
// load is rejected; the `validate` command disables that so it can report
// the problems instead.
Document parse_document(const std::string& text, bool check_sets = true);

// Canonical form: fixed key order, canonicalized cuts, shortest round-trip
// numbers.  parse(serialize(d)) reproduces d exactly.
std::string serialize_document(const Document& doc);

// A set as a metric operand; band descriptions are rejected (they only
// support cuts and classification).
FuzzyElem as_metric_operand(const AnyFuzzySet& s, const std::string& name);

// The named collection resolved to metric operands (name, element) in
// document order.
std::vector<std::pair<std::string, FuzzyElem>> collection_operands(
    const Document& doc, const std::string& collection);

}  // namespace fuzz
