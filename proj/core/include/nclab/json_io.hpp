#pragma once

#include <json.hpp>

#include "nclab/dilation.hpp"
#include "nclab/harmonic.hpp"
#include "nclab/lamperti.hpp"
#include "nclab/opalg.hpp"

namespace nclab::io {

// Matrix literals: {"dim": d, "weights": [...], "re": [[...]], "im": [[...]]},
// row-major; "weights" and "im" may be omitted. Entries may be numbers or
// decimal/fraction strings (the strings are what the rational backend reads).
nlohmann::json element_to_json(const opalg::AlgebraElement& x);
opalg::AlgebraElement element_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

RMatrix rmatrix_from_json(const nlohmann::json& j);
Rational rational_from_json(const nlohmann::json& j);

// {"w": matrix, "b": matrix, "J": {"kind": ..., "u": matrix | "pi": [..]}}
nlohmann::json lamperti_to_json(const lamperti::LampertiOperator& t);
lamperti::LampertiOperator lamperti_from_json(const nlohmann::json& j);

// {"points": n, "dist": [[..]], "weights": [..]} or a generator spec
// {"kind": "z-interval" | "z2-box" | "two-cluster", ...params}
harmonic::SpacePtr space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const harmonic::FiniteMetricSpace& space);

}  // namespace nclab::io
