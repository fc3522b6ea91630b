#pragma once

#include <string>

#include "json.hpp"
#include "qtet/asymptotics.hpp"
#include "qtet/geometry.hpp"
#include "qtet/scaled_complex.hpp"

namespace qtet {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Serializes with every float in scientific notation at 17 significant
/// digits; non-finite floats become null.
std::string dump_json(const Json& j, int indent = 2);

/// Formats one double the way dump_json does.
std::string format_float(double x);

Json complex_json(cplx z);
/// {log_abs, arg, re, im}; re/im are null when they overflow.
Json scaled_json(const ScaledComplex& z);
Json geometry_json(const TetGeometry& g);
Json sweep_json(const SweepReport& rep);
std::string sweep_csv(const SweepReport& rep);

}  // namespace qtet
