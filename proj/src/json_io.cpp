#include "redukt/json_io.hpp"

namespace redukt {

json to_json(const RelationSymbol& sym) {
  json j = {{"name", sym.name}, {"arity", sym.arity}, {"symmetric", sym.symmetric}};
  if (sym.irreflexive && !sym.symmetric) j["irreflexive"] = true;
  return j;
}

json to_json(const Schema& schema) {
  json arr = json::array();
  for (const auto& s : schema.symbols()) arr.push_back(to_json(s));
  return arr;
}

json to_json(const Structure& s) {
  json rels = json::object();
  for (std::size_t r = 0; r < s.schema().size(); ++r) {
    json ts = json::array();
    for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
      json t = json::array();
      for (int v : s.tuple(r, i)) t.push_back(s.name(v));
      ts.push_back(std::move(t));
    }
    rels[s.schema()[r].name] = std::move(ts);
  }
  return {{"schema", to_json(s.schema())}, {"universe", s.universe()}, {"relations", rels}};
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::Malformed, what); }

}  // namespace

std::string element_key(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

Schema schema_from_json(const json& doc) {
  if (!doc.is_array()) malformed("schema must be a list of relation symbols");
  std::vector<RelationSymbol> syms;
  for (const auto& e : doc) {
    if (!e.is_object() || !e.contains("name") || !e.contains("arity"))
      malformed("relation symbol needs name and arity");
    if (!e["name"].is_string() || !e["arity"].is_number_integer())
      malformed("relation symbol has bad name or arity");
    RelationSymbol s;
    s.name = e["name"].get<std::string>();
    s.arity = e["arity"].get<int>();
    if (e.contains("symmetric")) {
      if (!e["symmetric"].is_boolean()) malformed("symmetric must be boolean");
      s.symmetric = e["symmetric"].get<bool>();
    }
    if (e.contains("irreflexive")) {
      if (!e["irreflexive"].is_boolean()) malformed("irreflexive must be boolean");
      s.irreflexive = e["irreflexive"].get<bool>();
    }
    syms.push_back(std::move(s));
  }
  return Schema(std::move(syms));
}

Structure structure_from_json(const json& doc) {
  if (!doc.is_object()) malformed("structure document must be an object");
  if (!doc.contains("schema") || !doc.contains("universe"))
    malformed("structure document needs schema and universe");
  Schema schema = schema_from_json(doc["schema"]);
  if (!doc["universe"].is_array()) malformed("universe must be a list");
  std::vector<std::string> universe;
  for (const auto& e : doc["universe"]) universe.push_back(element_key(e));
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> rels;
  if (doc.contains("relations")) {
    const auto& r = doc["relations"];
    if (!r.is_object()) malformed("relations must be a map");
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (!schema.find(it.key())) malformed("relation " + it.key() + " not in schema");
      if (!it.value().is_array()) malformed("relation " + it.key() + " must be a list");
      std::vector<std::vector<std::string>> tuples;
      for (const auto& t : it.value()) {
        if (!t.is_array()) malformed("tuples must be lists");
        std::vector<std::string> tt;
        for (const auto& c : t) tt.push_back(element_key(c));
        tuples.push_back(std::move(tt));
      }
      rels.emplace_back(it.key(), std::move(tuples));
    }
  }
  return Structure::from_names(std::move(schema), std::move(universe), rels);
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Malformed, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace redukt
