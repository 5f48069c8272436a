#include "matrix_io.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

namespace commexp::cli {

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("matrix file: top level must be an object");
  }
  if (j.size() != 2 || !j.contains("n") || !j.contains("entries")) {
    throw std::invalid_argument(
        "matrix file: expected exactly the keys \"n\" and \"entries\"");
  }
  const nlohmann::json& jn = j.at("n");
  if (!jn.is_number_integer() || jn.get<std::int64_t>() < 1) {
    throw std::invalid_argument("matrix file: \"n\" must be an integer >= 1");
  }
  const std::size_t n = jn.get<std::size_t>();
  if (n > kMaxMatrixDim) {
    throw std::invalid_argument("matrix file: dimension exceeds the cap of " +
                                std::to_string(kMaxMatrixDim));
  }
  const nlohmann::json& je = j.at("entries");
  if (!je.is_array() || je.size() != n * n) {
    throw std::invalid_argument("matrix file: \"entries\" must be an array of " +
                                std::to_string(n * n) + " [re, im] pairs");
  }
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (const nlohmann::json& pair : je) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      throw std::invalid_argument(
          "matrix file: each entry must be a [re, im] pair of numbers");
    }
    entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  // from_entries rejects non-finite values (e.g. overflowing literals).
  return ComplexMatrix::from_entries(n, std::move(entries));
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json j;
  j["n"] = m.dim();
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Complex v = m.data()[i];
    entries.push_back({v.real(), v.imag()});
  }
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open matrix file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("matrix file " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
  m.ensure_finite();
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot write matrix file: " + path);
  }
  out << matrix_to_json(m).dump(2) << '\n';
}

}  // namespace commexp::cli
