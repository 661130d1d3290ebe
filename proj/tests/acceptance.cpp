// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "jetgeo/field_io.hpp"
#include "jetgeo/gait.hpp"
#include "jetgeo/grood_suntay.hpp"
#include "jetgeo/jet_objects.hpp"
#include "jetgeo/quadric.hpp"
#include "test_helpers.hpp"

using namespace jetgeo;

namespace {

int failures = 0;

void report(int number, const char* title, bool ok, const std::string& detail) {
    std::printf("criterion %2d %-28s %s%s%s\n", number, title, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : "  ", detail.c_str());
    if (!ok) ++failures;
}

bool rel_ok(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::abs(want);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- criterion 1: EM field from the bundled ODE file -----------------------

void criterion_connection() {
    const PolyVectorField field = load_field(std::string(JETGEO_DATA_DIR) + "/knee_field.json");
    const SkewField F = em_field(nonlinear_connection(symbolic_jacobian(field)));
    const double tol = 5e-4;
    double worst = 0.0;
    const auto check = [&](double got, double want) {
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
    };
    check(F.entry(0, 1).linear_coefficient(2), 0.9211);
    check(F.entry(0, 1).constant_term(), 109.1644);
    check(F.entry(0, 2).linear_coefficient(1), 0.4605);
    check(F.entry(0, 2).constant_term(), 4353.1879);
    check(F.entry(1, 2).linear_coefficient(0), -0.4605);
    check(F.entry(1, 2).constant_term(), 173.5540);
    report(1, "EM field coefficients", worst <= tol, "max rel dev " + fmt(worst));
}

// --- criterion 2: torsion matrices -----------------------------------------

void criterion_torsion() {
    const SkewField N = nonlinear_connection(symbolic_jacobian(knee_data::knee_field()));
    const TorsionTensor T = torsion(N);
    // published nonzero entries of dN/dx, dN/dy, dN/dz (0-based positions)
    struct Entry {
        int slice, i, j;
        double value;
    };
    const std::vector<Entry> nonzero{{0, 1, 2, 0.4605}, {0, 2, 1, -0.4605},
                                     {1, 0, 2, -0.4605}, {1, 2, 0, 0.4605},
                                     {2, 0, 1, -0.9211}, {2, 1, 0, 0.9211}};
    bool ok = true;
    double worst = 0.0;
    for (int s = 0; s < 3; ++s)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const Polynomial& p = T.slices[s].entry(i, j);
                if (p.degree() > 0) ok = false;  // torsion of a quadratic field is constant
                double want = 0.0;
                for (const Entry& e : nonzero)
                    if (e.slice == s && e.i == i && e.j == j) want = e.value;
                const double got = p.constant_term();
                if (want == 0.0) {
                    if (std::abs(got) > 1e-15) ok = false;
                } else {
                    worst = std::max(worst, std::abs(got - want) / std::abs(want));
                }
            }
    ok = ok && worst <= 5e-4;
    report(2, "torsion matrices", ok, "max rel dev " + fmt(worst));
}

// --- criterion 3: structurally zero objects ---------------------------------

void criterion_zero_objects() {
    bool ok = true;
    for (std::size_t dim : {2, 3, 5, 7}) {
        const ZeroStructure cc = cartan_connection(dim);
        const ZeroStructure r = curvature(dim);
        ok = ok && cc.is_zero && r.is_zero && cc.dim == dim && r.dim == dim;
    }
    report(3, "Cartan connection/curvature", ok, "zero structures");
}

// --- criterion 4: Maxwell identity ------------------------------------------

void criterion_maxwell() {
    std::mt19937 rng(20260823);
    double worst = 0.0;
    const auto probe = [&](const PolyVectorField& field) {
        const SkewField F = em_field(nonlinear_connection(symbolic_jacobian(field)));
        for (int pt = 0; pt < 100; ++pt) {
            const auto x = jetgeo::testing::random_point(rng, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) {
                        if (i == j || j == k || i == k) continue;
                        worst = std::max(worst, std::abs(maxwell_residual(F, i, j, k, x)));
                    }
        }
    };
    probe(knee_data::knee_field());
    for (int f = 0; f < 20; ++f) probe(jetgeo::testing::random_field(rng, 3, 3));
    report(4, "Maxwell identity", worst <= 1e-8, "max residual " + fmt(worst));
}

// --- criterion 5: femoral angular-velocity table ----------------------------

void criterion_gait_derivatives() {
    const auto wx = node_derivatives(knee_data::theta_x());
    const auto wy = node_derivatives(knee_data::theta_y());
    const auto wz = node_derivatives(knee_data::theta_z());
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        worst = std::max(worst, std::abs(wx[i] - knee_data::kRefFemoralOmega[i][0]));
        worst = std::max(worst, std::abs(wy[i] - knee_data::kRefFemoralOmega[i][1]));
        worst = std::max(worst, std::abs(wz[i] - knee_data::kRefFemoralOmega[i][2]));
    }
    report(5, "femoral omega table", worst <= 1e-3, "max abs dev " + fmt(worst));
}

// --- criterion 6: angles and frame-rotated tables ---------------------------

void criterion_frame_tables() {
    const KneeReport rep = run_knee_pipeline();
    double angle_dev = 0.0, omega_dev = 0.0, torque_dev = 0.0;
    for (const TableDeviation& d : rep.deviations) {
        if (d.name == "grood_suntay_angles") angle_dev = d.max_abs_deviation;
        if (d.name == "tibial_omega") omega_dev = d.max_abs_deviation;
        if (d.name == "tibial_torque") torque_dev = d.max_abs_deviation;
    }
    const bool ok = angle_dev <= 1e-3 && omega_dev <= 2e-3 && torque_dev <= 2e-2;
    report(6, "tibial frame tables", ok,
           "angles " + fmt(angle_dev) + ", omega " + fmt(omega_dev) + ", torque " +
               fmt(torque_dev));
}

// --- criterion 7: torque regression -----------------------------------------

void criterion_regression() {
    const RegressionModel m =
        fit_torque_model(knee_data::kRefTibialOmega, knee_data::kRefTibialTorque);
    const RegressionModel& ref = knee_data::kRefRegression;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst,
                             std::abs(m.coeff[i][j] - ref.coeff[i][j]) / std::abs(ref.coeff[i][j]));
        worst = std::max(worst,
                         std::abs(m.intercept[i] - ref.intercept[i]) / std::abs(ref.intercept[i]));
    }
    report(7, "torque regression", worst <= 1e-2, "max rel dev " + fmt(worst));
}

// --- criterion 8: Euler assembly --------------------------------------------

void criterion_ode_assembly() {
    const PolyVectorField ode = assemble_knee_ode(knee_data::kInertia, knee_data::kRefRegression);
    const std::array<std::array<std::vector<int>, 5>, 3> expo{{
        {{{0, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}},
        {{{1, 0, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}},
        {{{1, 1, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}},
    }};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 5; ++k) {
            const double want = knee_data::kRefOdeCoefficients[i][k];
            if (want == 0.0) continue;
            const double got = ode.components[i].coefficient(expo[i][k]);
            worst = std::max(worst, std::abs(got - want) / std::abs(want));
        }
    report(8, "Euler ODE assembly", worst <= 5e-4, "max rel dev " + fmt(worst));
}

// --- criterion 9: level surfaces --------------------------------------------

void criterion_level_surfaces() {
    const Quadric q = em_energy_quadric(knee_data::knee_em_field_printed());
    bool ok = true;
    std::string detail;

    const LevelSet zero = classify_level_set(q, 0.0);
    if (const auto* pt = std::get_if<PointLevelSet>(&zero)) {
        const std::array<double, 3> ref{376.8816, -9453.1767, -118.5152};
        double dev = 0.0;
        for (int i = 0; i < 3; ++i) dev = std::max(dev, std::abs(pt->center[i] - ref[i]));
        ok = ok && dev <= 0.05;
        detail = "center dev " + fmt(dev);
    } else {
        ok = false;
        detail = "k=0 did not classify as a point";
    }

    for (double k : {1.0, 2.5}) {
        const LevelSet ls = classify_level_set(q, k);
        const auto* e = std::get_if<EllipsoidLevelSet>(&ls);
        if (e == nullptr) {
            ok = false;
            continue;
        }
        const double a = e->semi_axes[0], b = e->semi_axes[1], c = e->semi_axes[2];
        ok = ok && std::abs(a - b) <= 1e-9 * a;
        ok = ok && rel_ok(1.0 / (a * a), 0.46055 * 0.46055 / k, 1e-3);
        ok = ok && rel_ok(1.0 / (c * c), 0.9211 * 0.9211 / k, 1e-3);
        ok = ok && c < a;  // oblate
    }
    report(9, "Yang-Mills level surfaces", ok, detail);
}

// --- criterion 10: randomized property suites -------------------------------

void criterion_properties() {
    std::mt19937 rng(424242);
    int bad = 0;
    std::string note;

    // skew-symmetry of the connection, and EYM trace equivalence / positivity
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t dim = 2 + rep % 3;
        const auto field = jetgeo::testing::random_field(rng, dim, 3);
        const SkewField N = nonlinear_connection(symbolic_jacobian(field));
        const auto x = jetgeo::testing::random_point(rng, dim);
        const auto vals = N.eval(x);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (std::abs(vals[i][j] + vals[j][i]) > 1e-12 * (1.0 + std::abs(vals[i][j])))
                    ++bad;
        // yang_mills_energy verifies the pairwise-sum and trace routes internally
        if (yang_mills_energy(em_field(N), x) < 0.0) ++bad;
    }

    // JLS vanishes exactly on jet states whose velocity equals the field
    for (int rep = 0; rep < 100; ++rep) {
        const auto field = jetgeo::testing::random_field(rng, 3, 3);
        JetState s;
        s.x = jetgeo::testing::random_point(rng, 3);
        s.x1 = field.eval(s.x);
        if (jls_lagrangian(field, s) != 0.0) ++bad;
    }

    // Euler-Lagrange residual shrinks as O(dt^2) along integrated knee paths
    {
        const PolyVectorField knee = knee_data::knee_field();
        const std::vector<double> eq{-3.11319356, -16.29325114, -0.72356167};
        std::uniform_real_distribution<double> d(-1e-3, 1e-3);
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<double> x0 = eq;
            for (double& v : x0) v += d(rng);
            const double dt = 2e-6;
            const Trajectory coarse = integrate(knee, x0, dt, 40);
            const Trajectory fine = integrate(knee, x0, dt / 2.0, 80);
            for (std::size_t i = 0; i < 3; ++i) {
                double rc = 0.0, rf = 0.0;
                for (double v : euler_lagrange_residual(knee, coarse, i))
                    rc = std::max(rc, std::abs(v));
                for (double v : euler_lagrange_residual(knee, fine, i))
                    rf = std::max(rf, std::abs(v));
                const double ratio = rc / rf;
                if (!(ratio > 3.2 && ratio < 4.6)) ++bad;
            }
        }
    }

    // degree-4 interpolation exactness at off-node points
    {
        std::uniform_real_distribution<double> c(-2.0, 2.0), tq(0.0, knee_data::kCyclePeriod);
        for (int rep = 0; rep < 100; ++rep) {
            const std::array<double, 5> a{c(rng), c(rng), c(rng), c(rng), c(rng)};
            GaitSeries s;
            s.times = knee_data::kTimes;
            for (int i = 0; i < 5; ++i) {
                const double t = s.times[i];
                s.values[i] = a[0] + t * (a[1] + t * (a[2] + t * (a[3] + t * a[4])));
            }
            const Polynomial p = lagrange_interpolant(s);
            const double t = tq(rng);
            const double want = a[0] + t * (a[1] + t * (a[2] + t * (a[3] + t * a[4])));
            if (std::abs(p.eval(std::span<const double>(&t, 1)) - want) > 1e-8) ++bad;
        }
    }

    // least-squares residual orthogonality on random designs
    {
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        for (int rep = 0; rep < 100; ++rep) {
            std::array<Vec3, 5> omega{}, torque{};
            for (int r = 0; r < 5; ++r) {
                omega[r] = {d(rng), d(rng), d(rng)};
                torque[r] = {d(rng), d(rng), d(rng)};
            }
            const RegressionModel m = fit_torque_model(omega, torque);
            for (int ch = 0; ch < 3; ++ch) {
                std::array<double, 5> resid{};
                for (int r = 0; r < 5; ++r) {
                    const double fit = m.coeff[ch][0] * omega[r][0] + m.coeff[ch][1] * omega[r][1] +
                                       m.coeff[ch][2] * omega[r][2] + m.intercept[ch];
                    resid[r] = torque[r][ch] - fit;
                }
                for (int col = 0; col < 4; ++col) {
                    double dot = 0.0;
                    for (int r = 0; r < 5; ++r) dot += resid[r] * (col < 3 ? omega[r][col] : 1.0);
                    if (std::abs(dot) > 1e-8) ++bad;
                }
            }
        }
    }

    // rotation orthogonality/determinant and angle-solver round trips
    {
        std::uniform_real_distribution<double> full(-3.1, 3.1);
        // beta stays below pi/2; beyond it the rotation-vector map admits
        // several preimages and the round trip is ill-posed
        std::uniform_real_distribution<double> ab(-1.0, 1.0), bb(0.1, 1.5);
        for (int rep = 0; rep < 100; ++rep) {
            const JointAngles a{full(rng), full(rng), full(rng)};
            const Mat3 R = composite_rotation(a);
            const Mat3 RtR = mat3_mul(mat3_transpose(R), R);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (std::abs(RtR[i][j] - (i == j ? 1.0 : 0.0)) > 1e-12) ++bad;
            const double det =
                R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1]) -
                R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0]) +
                R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0]);
            if (std::abs(det - 1.0) > 1e-12) ++bad;

            const JointAngles truth{ab(rng), bb(rng), ab(rng)};
            AngleSolveOptions opts;
            opts.guess = {truth.alpha + 0.05, truth.beta - 0.05, truth.gamma + 0.05};
            const JointAngles back = solve_angles(femoral_rotation_vector(truth), opts);
            if (std::abs(back.alpha - truth.alpha) > 1e-9 ||
                std::abs(back.beta - truth.beta) > 1e-9 ||
                std::abs(back.gamma - truth.gamma) > 1e-9)
                ++bad;
        }
    }

    report(10, "randomized property suites", bad == 0, fmt(bad) + " failing cases");
}

}  // namespace

int main() {
    criterion_connection();
    criterion_torsion();
    criterion_zero_objects();
    criterion_maxwell();
    criterion_gait_derivatives();
    criterion_frame_tables();
    criterion_regression();
    criterion_ode_assembly();
    criterion_level_surfaces();
    criterion_properties();
    if (failures != 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
