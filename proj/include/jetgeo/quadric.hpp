#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

#include "jetgeo/jet_objects.hpp"

namespace jetgeo {

/// Q(x) = x^T A x + b^T x + c with A symmetric.
struct Quadric {
    std::size_t dim = 0;
    std::vector<double> A;  // row-major dim x dim
    std::vector<double> b;
    double c = 0.0;

    double a_at(std::size_t i, std::size_t j) const { return A[i * dim + j]; }
    double eval(std::span<const double> x) const;
};

struct EmptyLevelSet {};

struct PointLevelSet {
    std::vector<double> center;
};

struct EllipsoidLevelSet {
    std::vector<double> center;
    std::vector<double> semi_axes;       // sorted descending
    std::vector<std::vector<double>> axes;  // axes[k] is the unit direction of semi_axes[k]
};

using LevelSet = std::variant<EmptyLevelSet, PointLevelSet, EllipsoidLevelSet>;

/// Expands sum_{i<j} F_ij(x)^2 into (A, b, c). Every entry of F must be affine.
Quadric em_energy_quadric(const SkewField& F);

/// Completes the square on a positive-definite quadric and classifies the
/// level set Q(x) = k. The point/ellipsoid boundary band is
/// 1e-9 * max(1, |k|) on the centered residual.
LevelSet classify_level_set(const Quadric& q, double k);

/// Parametric (theta, phi) grid on an ellipsoid surface.
std::vector<std::array<double, 3>> sample_surface(const LevelSet& ls, std::size_t res_theta,
                                                  std::size_t res_phi);

/// Jacobi eigen-decomposition of a symmetric matrix (row-major n x n).
/// Returns eigenvalues ascending, with eigenvectors[k] the matching unit vector.
struct SymmetricEigen {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};
SymmetricEigen symmetric_eigen(const std::vector<double>& A, std::size_t n);

}  // namespace jetgeo
