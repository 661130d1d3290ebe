#include "jetgeo/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace jetgeo {

namespace {

PolyVectorField field_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("components"))
        throw std::runtime_error("field document must contain 'dim' and 'components'");
    const std::size_t dim = doc.at("dim").get<std::size_t>();
    if (dim == 0) throw std::runtime_error("'dim' must be positive");
    const auto& comps = doc.at("components");
    if (!comps.is_array() || comps.size() != dim)
        throw std::runtime_error("'components' must be an array of length dim");

    std::vector<Polynomial> components;
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<Monomial> terms;
        for (const auto& term : comps[i]) {
            Monomial m;
            m.coeff = term.at("coeff").get<double>();
            m.exponents = term.at("exponents").get<std::vector<int>>();
            if (m.exponents.size() != dim)
                throw std::runtime_error("component " + std::to_string(i + 1) +
                                         ": exponent list length must equal dim");
            terms.push_back(std::move(m));
        }
        components.emplace_back(dim, std::move(terms));
    }
    return PolyVectorField(dim, std::move(components));
}

}  // namespace

PolyVectorField parse_field_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("field file parse error: ") + e.what());
    }
    try {
        return field_from_json(doc);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("field file schema error: ") + e.what());
    }
}

PolyVectorField load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_field_json(ss.str());
}

void save_field(const PolyVectorField& field, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["dim"] = field.dim;
    auto& comps = doc["components"] = nlohmann::ordered_json::array();
    for (const auto& c : field.components) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& t : c.terms())
            arr.push_back({{"coeff", t.coeff}, {"exponents", t.exponents}});
        comps.push_back(std::move(arr));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write field file: " + path);
    out << doc.dump(2) << "\n";
}

double to_sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::strtod(buf, nullptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write CSV file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    char buf[32];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.6g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_point_cloud_csv(const std::string& path,
                           const std::vector<std::array<double, 3>>& points) {
    std::vector<std::vector<double>> rows;
    rows.reserve(points.size());
    for (const auto& p : points) rows.push_back({p[0], p[1], p[2]});
    write_csv(path, {"x", "y", "z"}, rows);
}

void write_mesh(const std::string& path, const std::vector<std::array<double, 3>>& points,
                std::size_t res_theta, std::size_t res_phi) {
    if (points.size() != res_theta * res_phi)
        throw std::invalid_argument("point count does not match the grid resolution");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write mesh file: " + path);
    char buf[96];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof(buf), "v %.6g %.6g %.6g\n", p[0], p[1], p[2]);
        out << buf;
    }
    // quads between adjacent theta rings; phi index wraps around
    for (std::size_t it = 0; it + 1 < res_theta; ++it) {
        for (std::size_t ip = 0; ip < res_phi; ++ip) {
            const std::size_t ipn = (ip + 1) % res_phi;
            const std::size_t a = it * res_phi + ip + 1;  // 1-based
            const std::size_t b = it * res_phi + ipn + 1;
            const std::size_t c = (it + 1) * res_phi + ipn + 1;
            const std::size_t d = (it + 1) * res_phi + ip + 1;
            out << "f " << a << " " << b << " " << c << " " << d << "\n";
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace jetgeo
