// jetknee: jet geometric objects of polynomial ODE systems, plus the knee
// gait pipeline and its constant-energy level surfaces.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jetgeo/field_io.hpp"
#include "jetgeo/gait.hpp"
#include "jetgeo/grood_suntay.hpp"
#include "jetgeo/jet_objects.hpp"
#include "jetgeo/polynomial.hpp"
#include "jetgeo/quadric.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitToleranceViolation = 1;
constexpr int kExitUsage = 2;

std::string fmt4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = "x" + std::to_string(i + 1);
    return names;
}

ordered_json poly_json(const jetgeo::Polynomial& p) {
    auto arr = ordered_json::array();
    for (const auto& t : p.terms())
        arr.push_back({{"coeff", jetgeo::to_sig6(t.coeff)}, {"exponents", t.exponents}});
    return arr;
}

ordered_json matrix_json(const jetgeo::PolyMatrix& m) {
    auto rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        auto row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(poly_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_poly_matrix(std::ostream& os, const jetgeo::PolyMatrix& m,
                       std::span<const std::string> names) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        os << "  [ ";
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) os << " | ";
            os << m.at(i, j).to_string(names);
        }
        os << " ]\n";
    }
}

// --------------------------------------------------------------------------

int cmd_analyze(const std::string& field_path, const std::string& out_dir, double tol_maxwell) {
    jetgeo::PolyVectorField field;
    try {
        field = jetgeo::load_field(field_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    fs::create_directories(out_dir);

    const auto names = default_names(field.dim);
    const auto J = jetgeo::symbolic_jacobian(field);
    const auto N = jetgeo::nonlinear_connection(J);
    const auto T = jetgeo::torsion(N);
    const auto F = jetgeo::em_field(N);

    // Maxwell residuals over all index triples at seeded random points.
    std::mt19937 rng(20260823);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    double max_maxwell = 0.0;
    if (field.dim >= 3) {
        for (int pt = 0; pt < 100; ++pt) {
            std::vector<double> x(field.dim);
            for (auto& v : x) v = dist(rng);
            for (std::size_t i = 0; i < field.dim; ++i)
                for (std::size_t j = i + 1; j < field.dim; ++j)
                    for (std::size_t k = j + 1; k < field.dim; ++k)
                        max_maxwell = std::max(
                            max_maxwell, std::abs(jetgeo::maxwell_residual(F, i, j, k, x)));
        }
    }

    std::ofstream txt(fs::path(out_dir) / "analysis.txt");
    txt << "Jet geometric objects of the dynamical system x1 = X(x), n = " << field.dim << "\n\n";
    txt << "Field components:\n";
    for (std::size_t i = 0; i < field.dim; ++i)
        txt << "  X" << i + 1 << " = " << field.components[i].to_string(names) << "\n";
    txt << "\nNonlinear connection N = -1/2 (J - J^T):\n";
    print_poly_matrix(txt, N.matrix(), names);
    txt << "\nCartan connection coefficients: all zero\nCurvature tensor: all zero\n";
    txt << "\nTorsion slices dN/dx_k:\n";
    for (std::size_t k = 0; k < field.dim; ++k) {
        txt << " k = " << k + 1 << ":\n";
        print_poly_matrix(txt, T.slices[k].matrix(), names);
    }
    txt << "\nEM field F = -N:\n";
    print_poly_matrix(txt, F.matrix(), names);
    txt << "\nYang-Mills energy EYM = sum_{i<j} F_ij^2";
    if (field.dim >= 1) {
        const std::vector<double> origin(field.dim, 0.0);
        txt << "; EYM(0) = " << fmt4(jetgeo::yang_mills_energy(F, origin));
    }
    txt << "\nMax |Maxwell cyclic residual| over 100 random points: " << max_maxwell << "\n";
    txt.close();

    ordered_json doc;
    doc["dim"] = field.dim;
    doc["nonlinear_connection"] = matrix_json(N.matrix());
    auto slices = ordered_json::array();
    for (const auto& s : T.slices) slices.push_back(matrix_json(s.matrix()));
    doc["torsion_slices"] = std::move(slices);
    doc["cartan_connection"] = "zero";
    doc["curvature"] = "zero";
    doc["em_field"] = matrix_json(F.matrix());
    doc["maxwell_max_abs_residual"] = jetgeo::to_sig6(max_maxwell);
    std::ofstream js(fs::path(out_dir) / "analysis.json");
    js << doc.dump(2) << "\n";

    if (max_maxwell > tol_maxwell) {
        std::cerr << "Maxwell residual " << max_maxwell << " exceeds tolerance " << tol_maxwell
                  << "\n";
        return kExitToleranceViolation;
    }
    std::cout << "analysis written to " << out_dir << "\n";
    return kExitOk;
}

// --------------------------------------------------------------------------

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::array<jetgeo::Vec3, 5>& table) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 5; ++i)
        rows.push_back({jetgeo::knee_data::kTimes[i], table[i][0], table[i][1], table[i][2]});
    jetgeo::write_csv(path, header, rows);
}

int cmd_knee_report(const std::string& out_dir, bool izz_variant,
                    const jetgeo::KneeTolerances& tol) {
    fs::create_directories(out_dir);
    const jetgeo::KneeReport rep = jetgeo::run_knee_pipeline(izz_variant, tol);

    using namespace jetgeo::knee_data;
    // Embedded input datasets as CSV.
    {
        std::vector<std::vector<double>> rows;
        const auto tx = theta_x(), ty = theta_y(), tz = theta_z();
        for (int i = 0; i < 5; ++i)
            rows.push_back({kTimes[i], tx.values[i], ty.values[i], tz.values[i]});
        jetgeo::write_csv((fs::path(out_dir) / "theta_femoral.csv").string(),
                          {"t_s", "theta_x_rad", "theta_y_rad", "theta_z_rad"}, rows);
        rows.clear();
        const auto mx = torque_x(), my = torque_y(), mz = torque_z();
        for (int i = 0; i < 5; ++i)
            rows.push_back({kTimes[i], mx.values[i], my.values[i], mz.values[i]});
        jetgeo::write_csv((fs::path(out_dir) / "torque_femoral.csv").string(),
                          {"t_s", "M_x_Nm", "M_y_Nm", "M_z_Nm"}, rows);
    }
    write_table_csv((fs::path(out_dir) / "grood_suntay_angles.csv").string(),
                    {"t_s", "alpha_rad", "beta_rad", "gamma_rad"}, rep.angles);
    write_table_csv((fs::path(out_dir) / "omega_femoral.csv").string(),
                    {"t_s", "omega_x", "omega_y", "omega_z"}, rep.femoral_omega);
    write_table_csv((fs::path(out_dir) / "omega_tibial.csv").string(),
                    {"t_s", "omega_xp", "omega_yp", "omega_zp"}, rep.tibial_omega);
    write_table_csv((fs::path(out_dir) / "torque_tibial.csv").string(),
                    {"t_s", "M_xp", "M_yp", "M_zp"}, rep.tibial_torque);

    const std::vector<std::string> wnames{"wx'", "wy'", "wz'"};

    std::ofstream txt(fs::path(out_dir) / "knee_report.txt");
    txt << "Knee gait pipeline report (Izz = " << rep.inertia.izz << ")\n\n";
    auto table = [&](const char* title, const std::array<jetgeo::Vec3, 5>& tab) {
        txt << title << "\n";
        for (int i = 0; i < 5; ++i)
            txt << "  t" << i << " = " << fmt4(kTimes[i]) << ": " << fmt4(tab[i][0]) << "  "
                << fmt4(tab[i][1]) << "  " << fmt4(tab[i][2]) << "\n";
        txt << "\n";
    };
    table("Grood-Suntay angles (alpha, beta, gamma) [rad]:", rep.angles);
    table("Femoral angular velocity (wx, wy, wz) [rad/s]:", rep.femoral_omega);
    table("Tibial angular velocity (wx', wy', wz') [rad/s]:", rep.tibial_omega);
    table("Tibial torque (Mx', My', Mz') [N*m]:", rep.tibial_torque);
    txt << "Torque regression M = C*w + d:\n";
    for (int i = 0; i < 3; ++i)
        txt << "  M" << "xyz"[i] << "' = " << fmt4(rep.regression.coeff[i][0]) << "*wx' + "
            << fmt4(rep.regression.coeff[i][1]) << "*wy' + " << fmt4(rep.regression.coeff[i][2])
            << "*wz' + " << fmt4(rep.regression.intercept[i]) << "\n";
    txt << "\nFirst-order knee system w' = X(w):\n";
    for (int i = 0; i < 3; ++i)
        txt << "  X" << i + 1 << " = " << rep.ode.components[i].to_string(wnames) << "\n";
    if (izz_variant)
        txt << "\nNote: Izz = 0.005334 variant in effect; the published system corresponds to "
               "Izz = 0.0053, so third-equation coefficients deviate accordingly.\n";
    txt << "\nDeviations from the published tables:\n";
    for (const auto& d : rep.deviations)
        txt << "  " << (d.pass() ? "PASS" : "FAIL") << "  " << d.name << ": max dev "
            << d.max_abs_deviation << " (tol " << d.tolerance << ")\n";
    txt.close();

    ordered_json doc;
    doc["izz"] = rep.inertia.izz;
    auto tab_json = [](const std::array<jetgeo::Vec3, 5>& tab) {
        auto rows = ordered_json::array();
        for (int i = 0; i < 5; ++i)
            rows.push_back({jetgeo::to_sig6(tab[i][0]), jetgeo::to_sig6(tab[i][1]),
                            jetgeo::to_sig6(tab[i][2])});
        return rows;
    };
    doc["grood_suntay_angles"] = tab_json(rep.angles);
    doc["femoral_omega"] = tab_json(rep.femoral_omega);
    doc["tibial_omega"] = tab_json(rep.tibial_omega);
    doc["tibial_torque"] = tab_json(rep.tibial_torque);
    auto reg = ordered_json::array();
    for (int i = 0; i < 3; ++i)
        reg.push_back({jetgeo::to_sig6(rep.regression.coeff[i][0]),
                       jetgeo::to_sig6(rep.regression.coeff[i][1]),
                       jetgeo::to_sig6(rep.regression.coeff[i][2]),
                       jetgeo::to_sig6(rep.regression.intercept[i])});
    doc["torque_regression"] = std::move(reg);
    doc["knee_ode"] = ordered_json::array();
    for (int i = 0; i < 3; ++i) doc["knee_ode"].push_back(poly_json(rep.ode.components[i]));
    doc["deviations"] = ordered_json::array();
    for (const auto& d : rep.deviations)
        doc["deviations"].push_back({{"table", d.name},
                                     {"tolerance", jetgeo::to_sig6(d.tolerance)},
                                     {"max_abs_deviation", jetgeo::to_sig6(d.max_abs_deviation)},
                                     {"pass", d.pass()}});
    doc["all_pass"] = rep.all_pass();
    std::ofstream js(fs::path(out_dir) / "knee_report.json");
    js << doc.dump(2) << "\n";

    std::cout << "knee report written to " << out_dir << (rep.all_pass() ? " (all pass)" : "")
              << "\n";
    if (!rep.all_pass()) {
        for (const auto& d : rep.deviations)
            if (!d.pass())
                std::cerr << "tolerance violation: " << d.name << " deviates "
                          << d.max_abs_deviation << " > " << d.tolerance << "\n";
        return kExitToleranceViolation;
    }
    return kExitOk;
}

// --------------------------------------------------------------------------

int cmd_surface(const std::string& out_dir, double k, std::size_t res_theta, std::size_t res_phi) {
    fs::create_directories(out_dir);

    // Level surfaces are studied on the print-precision energy (the published
    // EM entries), matching the published center and semi-axes; the
    // full-precision classification is reported alongside.
    const auto field = jetgeo::knee_data::knee_field();
    const auto N = jetgeo::nonlinear_connection(jetgeo::symbolic_jacobian(field));
    const auto Fexact = jetgeo::em_field(N);
    const jetgeo::SkewField Fprint = jetgeo::knee_data::knee_em_field_printed();

    const auto quad = jetgeo::em_energy_quadric(Fprint);
    const auto quad_exact = jetgeo::em_energy_quadric(Fexact);
    const auto ls = jetgeo::classify_level_set(quad, k);
    const auto ls_exact = jetgeo::classify_level_set(quad_exact, k);

    ordered_json doc;
    doc["k"] = jetgeo::to_sig6(k);
    auto describe = [](const jetgeo::LevelSet& s) {
        ordered_json d;
        if (std::holds_alternative<jetgeo::EmptyLevelSet>(s)) {
            d["type"] = "empty";
        } else if (const auto* p = std::get_if<jetgeo::PointLevelSet>(&s)) {
            d["type"] = "point";
            d["center"] = {jetgeo::to_sig6(p->center[0]), jetgeo::to_sig6(p->center[1]),
                           jetgeo::to_sig6(p->center[2])};
        } else {
            const auto& e = std::get<jetgeo::EllipsoidLevelSet>(s);
            d["type"] = "ellipsoid";
            d["center"] = {jetgeo::to_sig6(e.center[0]), jetgeo::to_sig6(e.center[1]),
                           jetgeo::to_sig6(e.center[2])};
            d["semi_axes"] = {jetgeo::to_sig6(e.semi_axes[0]), jetgeo::to_sig6(e.semi_axes[1]),
                              jetgeo::to_sig6(e.semi_axes[2])};
            auto axes = ordered_json::array();
            for (const auto& ax : e.axes)
                axes.push_back({jetgeo::to_sig6(ax[0]), jetgeo::to_sig6(ax[1]),
                                jetgeo::to_sig6(ax[2])});
            d["axes"] = std::move(axes);
        }
        return d;
    };
    doc["level_set"] = describe(ls);
    doc["level_set_full_precision"] = describe(ls_exact);
    std::ofstream js(fs::path(out_dir) / "surface.json");
    js << doc.dump(2) << "\n";

    std::ofstream txt(fs::path(out_dir) / "surface.txt");
    txt << "Constant-level Yang-Mills energy surface, k = " << fmt4(k) << "\n";
    if (const auto* e = std::get_if<jetgeo::EllipsoidLevelSet>(&ls)) {
        txt << "Ellipsoid centered at (" << fmt4(e->center[0]) << ", " << fmt4(e->center[1])
            << ", " << fmt4(e->center[2]) << ")\n";
        txt << "Semi-axes: " << fmt4(e->semi_axes[0]) << ", " << fmt4(e->semi_axes[1]) << ", "
            << fmt4(e->semi_axes[2]) << "\n";
        const auto cloud = jetgeo::sample_surface(ls, res_theta, res_phi);
        jetgeo::write_point_cloud_csv((fs::path(out_dir) / "surface_points.csv").string(), cloud);
        jetgeo::write_mesh((fs::path(out_dir) / "surface_mesh.obj").string(), cloud, res_theta,
                           res_phi);
        txt << "Point cloud: " << cloud.size() << " samples\n";
    } else if (const auto* p = std::get_if<jetgeo::PointLevelSet>(&ls)) {
        txt << "Single point (" << fmt4(p->center[0]) << ", " << fmt4(p->center[1]) << ", "
            << fmt4(p->center[2]) << ")\n";
    } else {
        txt << "Empty level set\n";
    }

    std::cout << "surface output written to " << out_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jet geometry of first-order ODE systems and the knee gait case study"};
    app.require_subcommand(1);

    std::string field_path = "data/knee_field.json";
    std::string out_dir = "out";
    double tol_maxwell = 1e-8;
    bool izz_variant = false;
    double k = 1.0;
    std::string res = "32x32";
    jetgeo::KneeTolerances tol;

    auto* analyze = app.add_subcommand("analyze", "Jet geometric objects of a field file");
    analyze->add_option("--field", field_path, "Vector-field JSON file");
    analyze->add_option("--out", out_dir, "Output directory");
    analyze->add_option("--tol-maxwell", tol_maxwell, "Maxwell residual tolerance");

    auto* knee = app.add_subcommand("knee-report", "Reproduce the knee gait pipeline");
    knee->add_option("--out", out_dir, "Output directory");
    knee->add_flag("--izz-variant", izz_variant, "Use Izz = 0.005334 instead of 0.0053");
    knee->add_option("--tol-angles", tol.angles, "Angle table tolerance [rad]");
    knee->add_option("--tol-femoral-omega", tol.femoral_omega, "Femoral omega tolerance");
    knee->add_option("--tol-tibial-omega", tol.tibial_omega, "Tibial omega tolerance");
    knee->add_option("--tol-tibial-torque", tol.tibial_torque, "Tibial torque tolerance");
    knee->add_option("--tol-regression", tol.regression_relative, "Regression relative tolerance");
    knee->add_option("--tol-ode", tol.ode_relative, "Knee system coefficient relative tolerance");

    auto* surface = app.add_subcommand("surface", "Constant-level energy surface export");
    surface->add_option("--out", out_dir, "Output directory");
    surface->add_option("--k", k, "Level value (>= 0)")->check(CLI::NonNegativeNumber);
    surface->add_option("--res", res, "Sampling resolution, e.g. 32x32");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(field_path, out_dir, tol_maxwell);
        if (knee->parsed()) return cmd_knee_report(out_dir, izz_variant, tol);
        if (surface->parsed()) {
            std::size_t rt = 0, rp = 0;
            char x = 0;
            std::istringstream rs(res);
            if (!(rs >> rt >> x >> rp) || x != 'x' || rt == 0 || rp == 0) {
                std::cerr << "error: --res must look like 32x32\n";
                return kExitUsage;
            }
            return cmd_surface(out_dir, k, rt, rp);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
