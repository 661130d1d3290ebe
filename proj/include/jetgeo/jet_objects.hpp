#pragma once

#include <span>
#include <vector>

#include "jetgeo/polynomial.hpp"

namespace jetgeo {

/// Skew-symmetric matrix of polynomials. The invariant entry(i,j) == -entry(j,i)
/// is enforced symbolically at construction.
class SkewField {
public:
    explicit SkewField(PolyMatrix entries);

    std::size_t dim() const { return entries_.rows; }
    const Polynomial& entry(std::size_t i, std::size_t j) const { return entries_.at(i, j); }
    const PolyMatrix& matrix() const { return entries_; }

    std::vector<std::vector<double>> eval(std::span<const double> x) const { return entries_.eval(x); }

private:
    PolyMatrix entries_;
};

/// Torsion: n skew slices, the k-th being the partial of the connection with
/// respect to variable k.
struct TorsionTensor {
    std::vector<SkewField> slices;
};

/// Point of the 1-jet space: time, base coordinates, fiber velocities.
struct JetState {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> x1;
};

/// Marker for the structurally zero objects (Cartan connection coefficients,
/// curvature, temporal connection components). There is nothing to evaluate.
struct ZeroStructure {
    std::size_t dim = 0;
    static constexpr bool is_zero = true;
};

/// Uniformly sampled path in the base space.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::vector<double>> samples;

    std::size_t size() const { return samples.size(); }
};

/// N = -1/2 (J - J^T), computed symbolically so skewness holds exactly.
SkewField nonlinear_connection(const PolyMatrix& jacobian);

ZeroStructure cartan_connection(std::size_t dim);
ZeroStructure curvature(std::size_t dim);

/// Slice k is the entrywise partial of N with respect to variable k.
TorsionTensor torsion(const SkewField& N);

/// F = -N, entrywise.
SkewField em_field(const SkewField& N);

/// Sum over i<j of F_ij^2 at x. Also evaluates 1/2 tr(F F^T) and requires the
/// two routes to agree to a few ulps.
double yang_mills_energy(const SkewField& F, std::span<const double> x);

/// Cyclic sum dF_ij/dx_k + dF_jk/dx_i + dF_ki/dx_j at x (0-based indices).
double maxwell_residual(const SkewField& F, std::size_t i, std::size_t j, std::size_t k,
                        std::span<const double> x);

/// Squared residual sum_i (x1_i - X_i(x))^2.
double jls_lagrangian(const PolyVectorField& field, const JetState& s);

/// Euler-Lagrange residual for coordinate i along a uniformly sampled path.
/// Velocities and the outer time derivative use central differences, so values
/// are produced at interior nodes 2 .. size-3 only.
std::vector<double> euler_lagrange_residual(const PolyVectorField& field, const Trajectory& path,
                                            std::size_t i);

}  // namespace jetgeo
