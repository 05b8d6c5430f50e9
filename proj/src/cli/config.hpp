#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "engine/state.hpp"
#include "oracle/enumerate.hpp"

namespace urnflow::cli {

struct UrnConfig {
  std::string id;
  std::uint64_t total = 0;
  std::map<engine::TypeLabel, exact::BigRational> fractions;
  // Present when the urn was declared with integer counts.
  std::optional<std::map<engine::TypeLabel, std::uint64_t>> counts;
};

struct QueryConfig {
  std::string urn;
  engine::TypeLabel type;
};

// A declarative scheme: the declared type set, the urns with their starting
// compositions, an ordered list of transfers, and the draw queries to answer.
struct SchemeConfig {
  std::vector<engine::TypeLabel> types;
  std::vector<UrnConfig> urns;
  std::vector<engine::TransferStep> steps;
  std::vector<QueryConfig> queries;

  const UrnConfig* find_urn(const std::string& id) const;
  std::size_t urn_index(const std::string& id) const;
  std::size_t type_index(const engine::TypeLabel& t) const;

  engine::SchemeState initial_state() const;

  // Physical counts for every urn, in declaration order. Errors with
  // `unsupported` if any expected count total*fraction is not an integer.
  std::vector<oracle::IntegerUrn> integer_urns() const;

  std::vector<oracle::IndexedStep> indexed_steps() const;
};

// Reads and validates a scheme file. Validation failures name the offending
// field (and the line, for syntax errors).
SchemeConfig parse_scheme(const std::string& path);

// Same, from in-memory text; `origin` labels error messages.
SchemeConfig parse_scheme_text(std::string_view text,
                               const std::string& origin = "<string>");

std::string serialize_scheme(const SchemeConfig& config);

}  // namespace urnflow::cli
