#pragma once

#include <string>

#include <json.hpp>

#include "redukt/structures.hpp"

namespace redukt {

using json = nlohmann::json;

json to_json(const RelationSymbol& sym);
json to_json(const Schema& schema);
json to_json(const Structure& s);

Schema schema_from_json(const json& doc);
Structure structure_from_json(const json& doc);

// Parses text into a JSON document, mapping syntax errors to Malformed.
json parse_document(const std::string& text);

// Universe entries and tuple components may be strings or any other JSON
// value; non-strings are identified by their compact serialization.
std::string element_key(const json& v);

}  // namespace redukt
