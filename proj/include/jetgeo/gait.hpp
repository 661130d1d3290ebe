#pragma once

#include <array>
#include <string>
#include <vector>

#include "jetgeo/grood_suntay.hpp"
#include "jetgeo/jet_objects.hpp"
#include "jetgeo/polynomial.hpp"

namespace jetgeo {

/// One gait channel sampled at the five cycle moments 0, T/4, T/2, 3T/4, T.
struct GaitSeries {
    std::string label;
    std::string unit;
    std::array<double, 5> times{};
    std::array<double, 5> values{};
};

/// Principal moments of inertia of the leg (kg m^2).
struct EulerParams {
    double ixx = 0.0;
    double iyy = 0.0;
    double izz = 0.0;
};

/// Affine torque model M = C * omega + intercept, per tibial channel.
struct RegressionModel {
    std::array<std::array<double, 3>, 3> coeff{};
    std::array<double, 3> intercept{};
};

/// Degree-4 interpolant through the five samples (polynomial in t).
Polynomial lagrange_interpolant(const GaitSeries& series);

/// Derivative of the interpolant evaluated at the five nodes.
std::array<double, 5> node_derivatives(const GaitSeries& series);

/// Ordinary least squares with intercept, one response per torque channel.
/// Solved by Householder QR on the 5x4 design.
RegressionModel fit_torque_model(const std::array<Vec3, 5>& omega_rows,
                                 const std::array<Vec3, 5>& torque_rows);

/// Euler's rigid-body equations solved for the rates, with the affine torque
/// model substituted: a 3-D polynomial field in (wx', wy', wz').
PolyVectorField assemble_knee_ode(const EulerParams& p, const RegressionModel& m);

/// Classical fixed-step RK4. Throws if the state leaves the finite range.
Trajectory integrate(const PolyVectorField& field, std::span<const double> x0, double dt,
                     std::size_t steps);

// ---------------------------------------------------------------------------
// Embedded gait data for subject (A): cycle period, five-node tables, inertias.

namespace knee_data {

inline constexpr double kCyclePeriod = 1.1652;  // s
inline constexpr std::array<double, 5> kTimes{0.0, 0.2913, 0.5826, 0.8739, 1.1652};

inline constexpr EulerParams kInertia{0.0672, 0.0672, 0.0053};
inline constexpr EulerParams kInertiaVariant{0.0672, 0.0672, 0.005334};

GaitSeries theta_x();
GaitSeries theta_y();
GaitSeries theta_z();
GaitSeries torque_x();
GaitSeries torque_y();
GaitSeries torque_z();

// Published intermediate tables, used as reference targets when reporting
// deviations (rows are the five nodes).
extern const std::array<Vec3, 5> kRefAngles;         // (alpha, beta, gamma)
extern const std::array<Vec3, 5> kRefFemoralOmega;   // (wx, wy, wz)
extern const std::array<Vec3, 5> kRefTibialOmega;    // (wx', wy', wz')
extern const std::array<Vec3, 5> kRefTibialTorque;   // (Mx', My', Mz')
extern const RegressionModel kRefRegression;
// Printed first-order knee system coefficients: per component, the bilinear
// coefficient then the coefficients of wx', wy', wz' and the constant.
extern const std::array<std::array<double, 5>, 3> kRefOdeCoefficients;

/// The knee field exactly as printed (4-decimal coefficients).
PolyVectorField knee_field();

/// The published EM field of the knee system at print precision
/// (0.9211 wz' + 109.1644, 0.4605 wy' + 4353.1879, -0.4605 wx' + 173.5540).
/// The published level surfaces are computed from these entries.
SkewField knee_em_field_printed();

}  // namespace knee_data

// ---------------------------------------------------------------------------
// End-to-end pipeline.

struct TableDeviation {
    std::string name;
    double tolerance = 0.0;
    double max_abs_deviation = 0.0;
    bool pass() const { return max_abs_deviation <= tolerance; }
};

struct KneeReport {
    std::array<Vec3, 5> angles;
    std::array<Vec3, 5> femoral_omega;
    std::array<Vec3, 5> tibial_omega;
    std::array<Vec3, 5> tibial_torque;
    RegressionModel regression;
    PolyVectorField ode;
    EulerParams inertia;
    std::vector<TableDeviation> deviations;  // per-table max deviation vs the published values
    double max_ode_relative_deviation = 0.0;
    bool izz_variant = false;

    bool all_pass() const;
};

struct KneeTolerances {
    double angles = 1e-3;
    double femoral_omega = 1e-3;
    double tibial_omega = 2e-3;
    double tibial_torque = 2e-2;
    double regression_relative = 1e-2;
    double ode_relative = 5e-4;
};

/// Runs theta tables -> angle solve -> interpolation/differentiation -> frame
/// rotation -> regression -> Euler assembly, recording per-table deviations
/// from the published values.
KneeReport run_knee_pipeline(bool izz_variant = false, const KneeTolerances& tol = {});

}  // namespace jetgeo
