#include "linent/state_io.hpp"

#include <fstream>

#include "linent/errors.hpp"

namespace linent {

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const cxd v = m(i, j);
            row.push_back({v.real(), v.imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) {
        throw StructuralError("matrix must be a non-empty array of rows");
    }
    const std::size_t d = j.size();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != d) {
            throw StructuralError("matrix row " + std::to_string(i) +
                                  " does not have " + std::to_string(d) +
                                  " entries");
        }
        for (std::size_t k = 0; k < d; ++k) {
            const auto& cell = row[k];
            if (!cell.is_array() || cell.size() != 2 ||
                !cell[0].is_number() || !cell[1].is_number()) {
                throw StructuralError("matrix entry (" + std::to_string(i) +
                                      "," + std::to_string(k) +
                                      ") is not an [re, im] pair");
            }
            m(i, k) = cxd(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

nlohmann::ordered_json state_to_json(const DensityMatrix& rho) {
    nlohmann::ordered_json j;
    j["dims"] = rho.dims();
    j["matrix"] = matrix_to_json(rho.matrix());
    return j;
}

DensityMatrix state_from_json(const nlohmann::json& j, const Tolerances& tol) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("matrix")) {
        throw StructuralError("state JSON needs \"dims\" and \"matrix\" keys");
    }
    const auto& jd = j["dims"];
    if (!jd.is_array() || jd.empty()) {
        throw StructuralError("\"dims\" must be a non-empty array");
    }
    std::vector<int> dims;
    std::size_t total = 1;
    for (const auto& e : jd) {
        if (!e.is_number_integer() || e.get<long long>() < 1) {
            throw StructuralError("\"dims\" entries must be integers >= 1");
        }
        dims.push_back(static_cast<int>(e.get<long long>()));
        total *= static_cast<std::size_t>(dims.back());
    }
    ComplexMatrix m = matrix_from_json(j["matrix"]);
    if (m.rows() != total) {
        throw StructuralError("matrix is " + std::to_string(m.rows()) +
                              "x" + std::to_string(m.cols()) +
                              " but dims multiply to " + std::to_string(total));
    }
    return DensityMatrix(m, dims, tol);
}

DensityMatrix load_state(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) {
        throw StructuralError("cannot open state file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError("malformed JSON in " + path + ": " + e.what());
    }
    return state_from_json(j, tol);
}

void save_state(const DensityMatrix& rho, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw StructuralError("cannot open output file: " + path);
    }
    out << state_to_json(rho).dump(2) << "\n";
}

namespace {

nlohmann::ordered_json record_to_json(const BoundRecord& r) {
    nlohmann::ordered_json j;
    j["kind"] = r.kind;
    j["applicable"] = r.applicable;
    if (r.applicable) {
        j["value"] = r.value;
        j["slack"] = r.slack;
        j["satisfied"] = r.satisfied;
        if (!r.branch.empty()) {
            j["branch"] = r.branch;
        }
    }
    return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const BoundReport& report) {
    nlohmann::ordered_json j;
    j["dims"] = report.dims;
    j["x"] = report.point.x;
    j["y"] = report.point.y;
    j["z"] = report.point.z;
    nlohmann::ordered_json bounds;
    for (const auto& r : report.bounds) {
        bounds[r.name] = record_to_json(r);
    }
    j["bounds"] = std::move(bounds);
    j["witness"] = report.witness;
    j["all_satisfied"] = report.all_satisfied;
    j["min_slack"] = report.min_slack;
    return j;
}

nlohmann::ordered_json report_to_json(const SisaReport& report) {
    nlohmann::ordered_json j;
    j["dims"] = report.dims;
    j["s_a"] = report.s_a;
    j["s_b"] = report.s_b;
    j["s_c"] = report.s_c;
    j["s_ac"] = report.s_ac;
    j["s_bc"] = report.s_bc;
    j["z_abc"] = report.z_abc;
    j["bound"] = report.bound;
    j["slack"] = report.slack;
    j["satisfied"] = report.satisfied;
    j["witness"] = report.witness;
    return j;
}

}  // namespace linent
