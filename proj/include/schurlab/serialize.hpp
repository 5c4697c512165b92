#ifndef SCHURLAB_SERIALIZE_HPP
#define SCHURLAB_SERIALIZE_HPP

#include <string>
#include <vector>

#include "schurlab/verify.hpp"

namespace schurlab {

// Matrix <-> {"rows": r, "cols": c, "entries": [re, im, re, im, ...]}
// (row-major).
std::string matrix_to_json(const Matrix& A);
Matrix matrix_from_json(const std::string& text);

// Symbol file: {"entries": [{"element": "...", "re": x, "im": y}, ...],
// "default": {"re": x, "im": y}} with "default" optional. Elements use the
// group's own text format.
MultiplierSymbol symbol_from_json(const std::string& text, std::shared_ptr<const Group> group);
std::string symbol_to_json(const MultiplierSymbol& phi);

std::string estimate_to_json(const NormEstimate& est);
std::string report_to_json(const CheckReport& rep);
// name,pass,tolerance,seed followed by one key,value row per quantity.
std::string report_to_csv(const CheckReport& rep);

std::string curve_to_json(const std::vector<CurvePoint>& curve);
std::string curve_to_csv(const std::vector<CurvePoint>& curve);

}  // namespace schurlab

#endif
