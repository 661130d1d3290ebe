#pragma once

#include <array>

namespace jetgeo {

/// Grood-Suntay joint angles in radians: alpha flexion-extension (femoral
/// fixed axis), beta varus-valgus (floating axis), gamma internal-external
/// (tibial fixed axis).
struct JointAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 mat3_mul(const Mat3& a, const Mat3& b);
Mat3 mat3_transpose(const Mat3& m);
Mat3 mat3_identity();

struct ElementaryRotations {
    Mat3 femoral_x;    // angle alpha about the femoral fixed axis
    Mat3 floating;     // written in terms of the varus-valgus angle beta
    Mat3 tibial_z;     // angle gamma about the tibial fixed axis
};

ElementaryRotations elementary_rotations(const JointAngles& a);

/// Product femoral_x * floating * tibial_z.
Mat3 composite_rotation(const JointAngles& a);

/// The nine entries of the composite rotation written out directly
/// (sin(beta)cos(gamma), ...). Used as an independent route against the
/// three-factor product.
Mat3 composite_rotation_closed_form(const JointAngles& a);

/// Rotation vector expressed in the femoral frame:
/// (-a - g cos b, -b cos a - g sin a sin b, b sin a - g cos a sin b).
Vec3 femoral_rotation_vector(const JointAngles& a);

/// Closed-form tibial angular velocity from angles and their rates.
Vec3 angular_velocity_tibial_closed_form(const JointAngles& a, const Vec3& rates);

/// Row-vector transform into the tibial frame: (X, Y, Z) * R.
Vec3 to_tibial_frame(const Vec3& v, const Mat3& R);

struct AngleSolveOptions {
    JointAngles guess{-0.3, 0.5, 0.3};
    int max_iterations = 100;
    double tolerance = 1e-12;  // max-norm of the residual
};

/// Damped Newton inversion of femoral_rotation_vector. Returns the branch
/// reached from the guess; the solved beta must land in (0, pi).
/// Throws on non-convergence.
JointAngles solve_angles(const Vec3& theta, const AngleSolveOptions& opts = {});

}  // namespace jetgeo
