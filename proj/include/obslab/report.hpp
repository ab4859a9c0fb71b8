#pragma once

#include <string>

#include "json.hpp"
#include "obslab/cochain.hpp"
#include "obslab/standard.hpp"

namespace obslab {

// Reports use order-preserving JSON so text and JSON renderings are both
// byte-deterministic for identical inputs.
using Json = nlohmann::ordered_json;

// 64-bit FNV-1a digest as fixed-width hex.
std::string fnv1a_hex(const std::string& data);

// Stable JSON forms of the core objects.
Json json_of_vec(const Vec& v);
// {degree, rank, entries: [{at: [...], value: [...]}]} — sparse, zero omitted.
Json json_of_cochain(const Cochain& c);
Json json_of_standard_three(const StandardThree& c);

// Report skeleton: {command, inputs: {}, results: {}, verdict, timing: null}.
// The timing field is part of the schema but pinned to null so reports stay
// byte-identical across runs.
Json make_report(const std::string& command);
void add_input_digest(Json& report, const std::string& name, const std::string& content);
void set_verdict(Json& report, const std::string& verdict);

// Renderings; both end with a newline.
std::string render_json(const Json& report);
std::string render_text(const Json& report);

// Inverses of the emitters, over the given flow. errors: ParseError.
Cochain cochain_from_json(const Json& j, FlowPtr flow);
StandardThree standard_three_from_json(const Json& j, FlowPtr flow);

}  // namespace obslab
