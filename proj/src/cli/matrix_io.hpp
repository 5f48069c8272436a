#pragma once

#include <cstddef>
#include <string>

#include "commexp/complex_matrix.hpp"
#include "json.hpp"

namespace commexp::cli {

/// Hard cap on the accepted matrix dimension; the dense O(n^3) algorithms
/// above this size are outside the tool's intended scale.
inline constexpr std::size_t kMaxMatrixDim = 512;

/// Matrix file schema: exactly {"n": <int>, "entries": [[re, im], ...]}
/// with entries row-major of length n*n and every component finite.
/// Violations throw std::invalid_argument.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const ComplexMatrix& m);

ComplexMatrix load_matrix(const std::string& path);

void save_matrix(const std::string& path, const ComplexMatrix& m);

}  // namespace commexp::cli
