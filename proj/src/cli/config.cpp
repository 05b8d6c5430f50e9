#include "cli/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "common/error.hpp"

namespace urnflow::cli {

using exact::BigInt;
using exact::BigRational;
using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  fail(ErrorCode::parse, field + ": " + what);
}

std::uint64_t require_uint(const json& v, const std::string& field) {
  if (!v.is_number_unsigned()) {
    bad_field(field, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string require_string(const json& v, const std::string& field) {
  if (!v.is_string() || v.get<std::string>().empty()) {
    bad_field(field, "expected a non-empty string");
  }
  return v.get<std::string>();
}

// Line:column of a byte offset, for syntax error messages.
std::pair<std::size_t, std::size_t> line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const std::set<std::string> kReservedTypeNames = {"total", "fractions"};

UrnConfig parse_urn(const std::string& id, const json& body,
                    const std::vector<engine::TypeLabel>& types,
                    const std::string& field) {
  UrnConfig urn;
  urn.id = id;
  auto known = [&](const std::string& t) {
    return std::find(types.begin(), types.end(), t) != types.end();
  };

  if (!body.is_object()) bad_field(field, "expected an object");

  if (body.contains("fractions") || body.contains("total")) {
    // Expected-composition form: {"total": N, "fractions": {"type": "p/q"}}
    if (!body.contains("total")) bad_field(field, "missing \"total\"");
    urn.total = require_uint(body.at("total"), field + ".total");
    BigRational sum(0);
    if (body.contains("fractions")) {
      const json& fracs = body.at("fractions");
      if (!fracs.is_object()) bad_field(field + ".fractions", "expected an object");
      for (const auto& [t, v] : fracs.items()) {
        const std::string ffield = field + ".fractions." + t;
        if (!known(t)) bad_field(ffield, "undeclared type '" + t + "'");
        BigRational f;
        try {
          f = BigRational::parse(require_string(v, ffield));
        } catch (const Error&) {
          bad_field(ffield, "expected an exact fraction like \"3/5\"");
        }
        if (f.sign() < 0 || f > BigRational(1)) {
          bad_field(ffield, "fraction outside [0, 1]");
        }
        if (!f.is_zero()) urn.fractions.emplace(t, std::move(f));
      }
      for (const auto& [t, f] : urn.fractions) sum += f;
    }
    for (const auto& [key, v] : body.items()) {
      if (key != "total" && key != "fractions") {
        bad_field(field + "." + key, "unknown key");
      }
    }
    if (urn.total > 0 && sum != BigRational(1)) {
      bad_field(field + ".fractions", "fractions sum to " + sum.str() + ", expected 1");
    }
    if (urn.total == 0 && !urn.fractions.empty()) {
      bad_field(field, "an empty urn cannot carry fractions");
    }
  } else {
    // Integer form: {"type": count, ...}
    std::map<engine::TypeLabel, std::uint64_t> counts;
    for (const auto& [t, v] : body.items()) {
      const std::string cfield = field + "." + t;
      if (!known(t)) bad_field(cfield, "undeclared type '" + t + "'");
      counts.emplace(t, require_uint(v, cfield));
    }
    urn.counts = counts;
    for (const auto& [t, c] : counts) urn.total += c;
    if (urn.total > 0) {
      for (const auto& [t, c] : counts) {
        if (c > 0) {
          urn.fractions.emplace(t, BigRational(BigInt(static_cast<unsigned long>(c)),
                                               BigInt(static_cast<unsigned long>(urn.total))));
        }
      }
    }
  }
  return urn;
}

}  // namespace

const UrnConfig* SchemeConfig::find_urn(const std::string& id) const {
  for (const auto& urn : urns) {
    if (urn.id == id) return &urn;
  }
  return nullptr;
}

std::size_t SchemeConfig::urn_index(const std::string& id) const {
  for (std::size_t i = 0; i < urns.size(); ++i) {
    if (urns[i].id == id) return i;
  }
  fail(ErrorCode::bad_argument, "unknown urn '" + id + "'");
}

std::size_t SchemeConfig::type_index(const engine::TypeLabel& t) const {
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (types[i] == t) return i;
  }
  fail(ErrorCode::bad_argument, "unknown type '" + t + "'");
}

engine::SchemeState SchemeConfig::initial_state() const {
  engine::SchemeState state;
  for (const auto& urn : urns) {
    engine::UrnComposition comp;
    comp.total = urn.total;
    comp.fractions = urn.fractions;
    state.emplace(urn.id, std::move(comp));
  }
  return state;
}

std::vector<oracle::IntegerUrn> SchemeConfig::integer_urns() const {
  std::vector<oracle::IntegerUrn> out;
  out.reserve(urns.size());
  for (const auto& urn : urns) {
    oracle::IntegerUrn iu;
    if (urn.counts) {
      for (const auto& [t, c] : *urn.counts) {
        if (c > 0) iu.counts.emplace(t, c);
      }
    } else {
      for (const auto& [t, f] : urn.fractions) {
        const BigRational expected = BigRational(static_cast<unsigned long>(urn.total)) * f;
        if (!expected.is_integer()) {
          fail(ErrorCode::unsupported, "urn '" + urn.id + "' type '" + t +
                                           "' has expected count " + expected.str() +
                                           ", which is not a whole ball count");
        }
        const std::uint64_t c = mpz_get_ui(expected.numerator().raw().get_mpz_t());
        if (c > 0) iu.counts.emplace(t, c);
      }
    }
    out.push_back(std::move(iu));
  }
  return out;
}

std::vector<oracle::IndexedStep> SchemeConfig::indexed_steps() const {
  std::vector<oracle::IndexedStep> out;
  out.reserve(steps.size());
  for (const auto& s : steps) {
    out.push_back({urn_index(s.source), urn_index(s.destination), s.count});
  }
  return out;
}

SchemeConfig parse_scheme_text(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_of(text, e.byte > 0 ? e.byte - 1 : 0);
    fail(ErrorCode::parse, origin + ":" + std::to_string(line) + ":" +
                               std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::parse, origin + ": expected a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key != "types" && key != "urns" && key != "steps" && key != "queries") {
      bad_field(key, "unknown top-level key");
    }
  }

  SchemeConfig config;

  if (!doc.contains("types") || !doc.at("types").is_array() || doc.at("types").empty()) {
    bad_field("types", "expected a non-empty array of type names");
  }
  for (std::size_t i = 0; i < doc.at("types").size(); ++i) {
    const std::string field = "types[" + std::to_string(i) + "]";
    std::string t = require_string(doc.at("types")[i], field);
    if (kReservedTypeNames.count(t)) bad_field(field, "'" + t + "' is reserved");
    if (std::find(config.types.begin(), config.types.end(), t) != config.types.end()) {
      bad_field(field, "duplicate type '" + t + "'");
    }
    config.types.push_back(std::move(t));
  }

  if (!doc.contains("urns") || !doc.at("urns").is_object() || doc.at("urns").empty()) {
    bad_field("urns", "expected a non-empty object of urns");
  }
  for (const auto& [id, body] : doc.at("urns").items()) {
    if (id.empty()) bad_field("urns", "urn identifiers must be non-empty");
    if (config.find_urn(id)) bad_field("urns." + id, "duplicate urn");
    config.urns.push_back(parse_urn(id, body, config.types, "urns." + id));
  }

  std::map<std::string, std::uint64_t> totals;
  for (const auto& urn : config.urns) totals[urn.id] = urn.total;

  if (doc.contains("steps")) {
    if (!doc.at("steps").is_array()) bad_field("steps", "expected an array");
    for (std::size_t i = 0; i < doc.at("steps").size(); ++i) {
      const std::string field = "steps[" + std::to_string(i) + "]";
      const json& body = doc.at("steps")[i];
      if (!body.is_object()) bad_field(field, "expected an object");
      for (const auto& [key, v] : body.items()) {
        if (key != "from" && key != "to" && key != "k") bad_field(field + "." + key, "unknown key");
      }
      engine::TransferStep step;
      if (!body.contains("from")) bad_field(field, "missing \"from\"");
      if (!body.contains("to")) bad_field(field, "missing \"to\"");
      if (!body.contains("k")) bad_field(field, "missing \"k\"");
      step.source = require_string(body.at("from"), field + ".from");
      step.destination = require_string(body.at("to"), field + ".to");
      step.count = require_uint(body.at("k"), field + ".k");
      if (!config.find_urn(step.source)) {
        bad_field(field + ".from", "undeclared urn '" + step.source + "'");
      }
      if (!config.find_urn(step.destination)) {
        bad_field(field + ".to", "undeclared urn '" + step.destination + "'");
      }
      if (step.source == step.destination) {
        bad_field(field, "source and destination must differ");
      }
      if (step.count > totals[step.source]) {
        fail(ErrorCode::infeasible,
             field + " (step " + std::to_string(i + 1) + "): k=" +
                 std::to_string(step.count) + " exceeds the " +
                 std::to_string(totals[step.source]) + " balls available in urn '" +
                 step.source + "'");
      }
      totals[step.source] -= step.count;
      totals[step.destination] += step.count;
      config.steps.push_back(std::move(step));
    }
  }

  if (!doc.contains("queries") || !doc.at("queries").is_array() ||
      doc.at("queries").empty()) {
    bad_field("queries", "expected a non-empty array of queries");
  }
  for (std::size_t i = 0; i < doc.at("queries").size(); ++i) {
    const std::string field = "queries[" + std::to_string(i) + "]";
    const json& body = doc.at("queries")[i];
    if (!body.is_object()) bad_field(field, "expected an object");
    for (const auto& [key, v] : body.items()) {
      if (key != "urn" && key != "type") bad_field(field + "." + key, "unknown key");
    }
    QueryConfig q;
    if (!body.contains("urn")) bad_field(field, "missing \"urn\"");
    if (!body.contains("type")) bad_field(field, "missing \"type\"");
    q.urn = require_string(body.at("urn"), field + ".urn");
    q.type = require_string(body.at("type"), field + ".type");
    if (!config.find_urn(q.urn)) bad_field(field + ".urn", "undeclared urn '" + q.urn + "'");
    if (std::find(config.types.begin(), config.types.end(), q.type) == config.types.end()) {
      bad_field(field + ".type", "undeclared type '" + q.type + "'");
    }
    config.queries.push_back(std::move(q));
  }

  return config;
}

SchemeConfig parse_scheme(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::io, "cannot open scheme file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scheme_text(buffer.str(), path);
}

std::string serialize_scheme(const SchemeConfig& config) {
  json doc;
  doc["types"] = config.types;
  json urns = json::object();
  for (const auto& urn : config.urns) {
    if (urn.counts) {
      json body = json::object();
      for (const auto& [t, c] : *urn.counts) body[t] = c;
      urns[urn.id] = std::move(body);
    } else {
      json fracs = json::object();
      for (const auto& [t, f] : urn.fractions) fracs[t] = f.str();
      urns[urn.id] = json{{"total", urn.total}, {"fractions", std::move(fracs)}};
    }
  }
  doc["urns"] = std::move(urns);
  json steps = json::array();
  for (const auto& s : config.steps) {
    steps.push_back({{"from", s.source}, {"to", s.destination}, {"k", s.count}});
  }
  doc["steps"] = std::move(steps);
  json queries = json::array();
  for (const auto& q : config.queries) {
    queries.push_back({{"urn", q.urn}, {"type", q.type}});
  }
  doc["queries"] = std::move(queries);
  return doc.dump(2) + "\n";
}

}  // namespace urnflow::cli
