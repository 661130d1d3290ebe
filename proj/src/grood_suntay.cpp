#include "jetgeo/grood_suntay.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jetgeo {

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            c[i][j] = s;
        }
    return c;
}

Mat3 mat3_transpose(const Mat3& m) {
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
    return t;
}

Mat3 mat3_identity() {
    return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

ElementaryRotations elementary_rotations(const JointAngles& a) {
    const double ca = std::cos(a.alpha), sa = std::sin(a.alpha);
    const double cb = std::cos(a.beta), sb = std::sin(a.beta);
    const double cg = std::cos(a.gamma), sg = std::sin(a.gamma);
    ElementaryRotations r;
    r.femoral_x = {{{1, 0, 0}, {0, ca, sa}, {0, -sa, ca}}};
    r.floating = {{{sb, 0, cb}, {0, 1, 0}, {-cb, 0, sb}}};
    r.tibial_z = {{{cg, sg, 0}, {-sg, cg, 0}, {0, 0, 1}}};
    return r;
}

Mat3 composite_rotation(const JointAngles& a) {
    const auto r = elementary_rotations(a);
    return mat3_mul(mat3_mul(r.femoral_x, r.floating), r.tibial_z);
}

Mat3 composite_rotation_closed_form(const JointAngles& a) {
    const double ca = std::cos(a.alpha), sa = std::sin(a.alpha);
    const double cb = std::cos(a.beta), sb = std::sin(a.beta);
    const double cg = std::cos(a.gamma), sg = std::sin(a.gamma);
    return {{{sb * cg, sb * sg, cb},
             {-ca * sg - sa * cb * cg, ca * cg - sa * cb * sg, sa * sb},
             {sa * sg - ca * cb * cg, -sa * cg - ca * cb * sg, ca * sb}}};
}

Vec3 femoral_rotation_vector(const JointAngles& a) {
    const double ca = std::cos(a.alpha), sa = std::sin(a.alpha);
    const double cb = std::cos(a.beta), sb = std::sin(a.beta);
    return {-a.alpha - a.gamma * cb,
            -a.beta * ca - a.gamma * sa * sb,
            a.beta * sa - a.gamma * ca * sb};
}

Vec3 angular_velocity_tibial_closed_form(const JointAngles& a, const Vec3& rates) {
    const double be = a.beta, ga = a.gamma;
    const double da = rates[0], db = rates[1], dg = rates[2];
    const double cb = std::cos(be), sb = std::sin(be);
    const double cg = std::cos(ga), sg = std::sin(ga);
    return {-da * sb * cg - da * be * cb * cg + da * ga * sb * sg + db * sg + db * ga * cg,
            -da * sb * sg - da * be * cb * sg - da * ga * sb * cg - db * cg + db * ga * sg,
            -da * cb + da * be * sb - dg};
}

Vec3 to_tibial_frame(const Vec3& v, const Mat3& R) {
    Vec3 out{};
    for (int j = 0; j < 3; ++j)
        out[j] = v[0] * R[0][j] + v[1] * R[1][j] + v[2] * R[2][j];
    return out;
}

namespace {

// Analytic Jacobian of femoral_rotation_vector with respect to (alpha, beta, gamma).
Mat3 theta_jacobian(const JointAngles& a) {
    const double ca = std::cos(a.alpha), sa = std::sin(a.alpha);
    const double cb = std::cos(a.beta), sb = std::sin(a.beta);
    return {{{-1.0, a.gamma * sb, -cb},
             {a.beta * sa - a.gamma * ca * sb, -ca - a.gamma * sa * cb, -sa * sb},
             {a.beta * ca + a.gamma * sa * sb, sa - a.gamma * ca * cb, -ca * sb}}};
}

bool solve3(const Mat3& A, const Vec3& rhs, Vec3& out) {
    // Gaussian elimination with partial pivoting on a 3x3 system.
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = A[i][j];
        m[i][3] = rhs[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-14) return false;
        for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
        }
    }
    for (int i = 0; i < 3; ++i) out[i] = m[i][3] / m[i][i];
    return true;
}

double residual_norm(const JointAngles& a, const Vec3& theta, Vec3& res) {
    const Vec3 th = femoral_rotation_vector(a);
    double n = 0.0;
    for (int i = 0; i < 3; ++i) {
        res[i] = th[i] - theta[i];
        n = std::max(n, std::abs(res[i]));
    }
    return n;
}

}  // namespace

JointAngles solve_angles(const Vec3& theta, const AngleSolveOptions& opts) {
    JointAngles a = opts.guess;
    Vec3 res{};
    double norm = residual_norm(a, theta, res);
    for (int it = 0; it < opts.max_iterations && norm >= opts.tolerance; ++it) {
        Vec3 step{};
        if (!solve3(theta_jacobian(a), res, step))
            throw std::runtime_error("angle solver hit a singular Jacobian");
        // Full Newton step, halved while the residual does not decrease.
        double lambda = 1.0;
        for (;;) {
            JointAngles trial{a.alpha - lambda * step[0], a.beta - lambda * step[1],
                              a.gamma - lambda * step[2]};
            Vec3 tres{};
            const double tnorm = residual_norm(trial, theta, tres);
            if (tnorm < norm || lambda < 1e-8) {
                a = trial;
                res = tres;
                norm = tnorm;
                break;
            }
            lambda *= 0.5;
        }
    }
    if (norm >= 1e-10)
        throw std::runtime_error("angle solver did not converge from the supplied guess");
    if (!(a.beta > 0.0 && a.beta < std::numbers::pi))
        throw std::runtime_error("angle solver left the beta in (0, pi) branch");
    return a;
}

}  // namespace jetgeo
