#pragma once

#include "capit/classifier.hpp"
#include "capit/properties.hpp"

#include "json.hpp"

namespace capit {

using Json = nlohmann::json;

// Elementary divisors, largest first: (2, 4) -> [4, 2].
Json type_json(const AbelianType& t);
Json class_set_json(ClassSet s);
// Integer when it fits in 64 bits, decimal string otherwise.
Json int_json(const Int& v);
Json record_json(const InvariantRecord& r);
Json report_json(const PredictionReport& rep, const Validation& v);
Json pair_report_json(const PairReport& r);
// Two-space indented, keys sorted; reparsing and dumping again reproduces it byte for byte.
std::string canonical_dump(const Json& j);

std::string report_text(const PredictionReport& rep, const Validation& v);

} // namespace capit
