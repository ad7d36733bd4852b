#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "linent/bounds.hpp"
#include "linent/density.hpp"

namespace linent {

// On-disk state schema:
//   {"dims": [dA, dB, ...], "matrix": [[[re, im], ...], ...]}
// matrix is d rows of d entries, each entry a [re, im] pair, d = prod(dims).
// Shape problems raise StructuralError before any physical validation runs.
nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::ordered_json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j,
                              const Tolerances& tol = Tolerances{});

DensityMatrix load_state(const std::string& path,
                         const Tolerances& tol = Tolerances{});
void save_state(const DensityMatrix& rho, const std::string& path);

nlohmann::ordered_json report_to_json(const BoundReport& report);
nlohmann::ordered_json report_to_json(const SisaReport& report);

}  // namespace linent
