#pragma once

#include <json.hpp>

#include "lensclass/classify.hpp"
#include "lensclass/formulas.hpp"
#include "lensclass/slp.hpp"

namespace lensclass {

inline constexpr const char* kSchema = "lensclass/1";

// numbers when they fit in 64 bits, decimal strings otherwise
nlohmann::json to_json(const BigInt& v);
nlohmann::json to_json(const IntMatrix& m);
nlohmann::json to_json(const ModifiedLensGraph& g);
nlohmann::json to_json(const FormulaMatrix& f, const LensParams& p);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const InvariantSignature& s);

IntMatrix matrix_from_json(const nlohmann::json& rows);

}  // namespace lensclass
