#include "schurlab/serialize.hpp"

#include <sstream>

#include <json.hpp>

namespace schurlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json matrix_json(const Matrix& A) {
    ordered_json j;
    j["rows"] = A.rows();
    j["cols"] = A.cols();
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(2 * A.size()));
    for (Eigen::Index r = 0; r < A.rows(); ++r)
        for (Eigen::Index c = 0; c < A.cols(); ++c) {
            entries.push_back(A(r, c).real());
            entries.push_back(A(r, c).imag());
        }
    j["entries"] = entries;
    return j;
}

Matrix matrix_from(const json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows < 0 || cols < 0) throw SchattenError("matrix dimensions must be nonnegative");
    const auto& entries = j.at("entries");
    if (static_cast<Eigen::Index>(entries.size()) != 2 * rows * cols)
        throw SchattenError("entry count does not match rows*cols");
    Matrix A(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            double re = entries[k].get<double>();
            double im = entries[k + 1].get<double>();
            A(r, c) = Complex(re, im);
            k += 2;
        }
    return A;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string matrix_to_json(const Matrix& A) { return dump(matrix_json(A)); }

Matrix matrix_from_json(const std::string& text) { return matrix_from(json::parse(text)); }

MultiplierSymbol symbol_from_json(const std::string& text, std::shared_ptr<const Group> group) {
    json j = json::parse(text);
    std::unordered_map<Element, Complex, ElementHash> table;
    for (const auto& entry : j.at("entries")) {
        Element g = group->parse(entry.at("element").get<std::string>());
        Complex v(entry.value("re", 0.0), entry.value("im", 0.0));
        table[g] = v;
    }
    std::optional<Complex> def;
    if (j.contains("default"))
        def = Complex(j["default"].value("re", 0.0), j["default"].value("im", 0.0));
    return MultiplierSymbol(std::move(group), std::move(table), def);
}

std::string symbol_to_json(const MultiplierSymbol& phi) {
    ordered_json j;
    j["group"] = phi.group().name();
    auto entries = ordered_json::array();
    // Sort by formatted element for stable output across hash orders.
    std::vector<std::pair<std::string, Complex>> rows;
    for (const auto& [g, v] : phi.table()) rows.emplace_back(phi.group().format(g), v);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [name, v] : rows)
        entries.push_back({{"element", name}, {"re", v.real()}, {"im", v.imag()}});
    j["entries"] = entries;
    if (phi.default_value()) {
        j["default"] = {{"re", phi.default_value()->real()}, {"im", phi.default_value()->imag()}};
    }
    return dump(j);
}

std::string estimate_to_json(const NormEstimate& est) {
    ordered_json j;
    j["value"] = est.value;
    j["amplification"] = est.amplification;
    j["restarts_used"] = est.restarts_used;
    j["iterations"] = est.iterations;
    j["converged"] = est.converged;
    j["seed"] = est.seed;
    j["certificate"] = matrix_json(est.certificate);
    return dump(j);
}

std::string report_to_json(const CheckReport& rep) {
    ordered_json j;
    j["name"] = rep.name;
    j["pass"] = rep.pass;
    j["tolerance"] = rep.tolerance;
    j["seed"] = rep.seed;
    j["inputs_digest"] = rep.inputs_digest;
    ordered_json q = ordered_json::object();
    for (const auto& [k, v] : rep.quantities) q[k] = v;
    j["quantities"] = q;
    return dump(j);
}

std::string report_to_csv(const CheckReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "name,pass,tolerance,seed\n";
    out << rep.name << ',' << (rep.pass ? "true" : "false") << ',' << rep.tolerance << ','
        << rep.seed << '\n';
    out << "quantity,value\n";
    for (const auto& [k, v] : rep.quantities) out << k << ',' << v << '\n';
    return out.str();
}

std::string curve_to_json(const std::vector<CurvePoint>& curve) {
    ordered_json arr = ordered_json::array();
    for (const auto& pt : curve)
        arr.push_back({{"radius", pt.radius},
                       {"set_size", pt.set_size},
                       {"value", pt.value},
                       {"ratio", pt.ratio}});
    ordered_json j;
    j["points"] = arr;
    return dump(j);
}

std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
    std::ostringstream out;
    out.precision(17);
    out << "radius,set_size,value,ratio\n";
    for (const auto& pt : curve)
        out << pt.radius << ',' << pt.set_size << ',' << pt.value << ',' << pt.ratio << '\n';
    return out.str();
}

}  // namespace schurlab
