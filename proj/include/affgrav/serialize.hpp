#pragma once

#include "json.hpp"

#include "affgrav/expansion.hpp"
#include "affgrav/numcurve.hpp"
#include "affgrav/verify.hpp"

namespace affgrav {

using Json = nlohmann::ordered_json;

/// {"order": N, "coeffs": ["c_0", ..., "c_N"]} in DiffPoly text form.
Json to_json(const Series& s);
/// {"order", "f", "g", "u", "v", "h", "gravity_x"}.
Json to_json(const Pipeline& p);
Json to_json(const GravitySample& s);
Json to_json(const FlatnessResult& r);
Json to_json(const StraightnessResult& r);
Json to_json(const CorollaryResult& r);
Json to_json(const VerifyReport& r);

}  // namespace affgrav
