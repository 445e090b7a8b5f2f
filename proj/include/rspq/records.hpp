#pragma once

// Machine-readable records: one JSON object per line, parseable back.

#include <json.hpp>

#include "rspq/automata/dfa.hpp"
#include "rspq/classify.hpp"
#include "rspq/engines.hpp"
#include "rspq/limits.hpp"

namespace rspq::records {

using json = nlohmann::json;

json to_json(const automata::Dfa& d);
automata::Dfa dfa_from_json(const json& j);

json to_json(const classify::Decomposition& dec);
classify::Decomposition decomposition_from_json(const json& j);

json to_json(const classify::HardnessWitness& w);
classify::HardnessWitness witness_from_json(const json& j);

json to_json(const classify::Verdict& v);
classify::Verdict verdict_from_json(const json& j);

json to_json(const engines::QueryResult& r);
engines::QueryResult query_from_json(const json& j);

json to_json(const Limits& limits);

} // namespace rspq::records
