#include "jetgeo/jet_objects.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jetgeo {

SkewField::SkewField(PolyMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows != entries_.cols)
        throw std::invalid_argument("skew field must be square");
    for (std::size_t i = 0; i < entries_.rows; ++i) {
        if (!entries_.at(i, i).is_zero())
            throw std::invalid_argument("skew field has a nonzero diagonal entry");
        for (std::size_t j = i + 1; j < entries_.cols; ++j)
            if (!(entries_.at(i, j) == -entries_.at(j, i)))
                throw std::invalid_argument("skew field entries violate antisymmetry");
    }
}

SkewField nonlinear_connection(const PolyMatrix& jacobian) {
    if (jacobian.rows != jacobian.cols)
        throw std::invalid_argument("Jacobian must be square");
    const std::size_t n = jacobian.rows;
    const std::size_t nvars = n == 0 ? 0 : jacobian.at(0, 0).num_vars();
    PolyMatrix N(n, n, nvars);
    // Fill the upper triangle and mirror, so the skew invariant is exact.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            N.at(i, j) = (jacobian.at(i, j) - jacobian.at(j, i)) * -0.5;
            N.at(j, i) = -N.at(i, j);
        }
    }
    return SkewField(std::move(N));
}

ZeroStructure cartan_connection(std::size_t dim) { return ZeroStructure{dim}; }
ZeroStructure curvature(std::size_t dim) { return ZeroStructure{dim}; }

TorsionTensor torsion(const SkewField& N) {
    TorsionTensor T;
    const std::size_t n = N.dim();
    for (std::size_t k = 0; k < n; ++k) {
        PolyMatrix slice(n, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                slice.at(i, j) = N.entry(i, j).derivative(k);
                slice.at(j, i) = -slice.at(i, j);
            }
        T.slices.emplace_back(std::move(slice));
    }
    return T;
}

SkewField em_field(const SkewField& N) {
    const std::size_t n = N.dim();
    PolyMatrix F(n, n, n == 0 ? 0 : N.entry(0, 0).num_vars());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) F.at(i, j) = -N.entry(i, j);
    return SkewField(std::move(F));
}

double yang_mills_energy(const SkewField& F, std::span<const double> x) {
    const std::size_t n = F.dim();
    if (x.size() != n) throw std::invalid_argument("evaluation point has wrong dimension");
    const auto Fx = F.eval(x);

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sum += Fx[i][j] * Fx[i][j];

    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) trace += Fx[i][j] * Fx[i][j];
    trace *= 0.5;

    const double scale = std::max({1.0, sum, trace});
    if (std::abs(sum - trace) > 8.0 * std::numeric_limits<double>::epsilon() * scale)
        throw std::runtime_error("Yang-Mills energy routes disagree");
    return sum;
}

double maxwell_residual(const SkewField& F, std::size_t i, std::size_t j, std::size_t k,
                        std::span<const double> x) {
    const std::size_t n = F.dim();
    if (i == j || j == k || i == k) throw std::invalid_argument("indices must be distinct");
    if (i >= n || j >= n || k >= n) throw std::invalid_argument("index out of range");
    return F.entry(i, j).derivative(k).eval(x) + F.entry(j, k).derivative(i).eval(x) +
           F.entry(k, i).derivative(j).eval(x);
}

double jls_lagrangian(const PolyVectorField& field, const JetState& s) {
    if (s.x.size() != field.dim || s.x1.size() != field.dim)
        throw std::invalid_argument("jet state dimension mismatch");
    const auto X = field.eval(s.x);
    double sum = 0.0;
    for (std::size_t i = 0; i < field.dim; ++i) {
        const double r = s.x1[i] - X[i];
        sum += r * r;
    }
    return sum;
}

std::vector<double> euler_lagrange_residual(const PolyVectorField& field, const Trajectory& path,
                                            std::size_t i) {
    const std::size_t m = path.size();
    if (m < 3) throw std::invalid_argument("need at least 3 samples");
    if (path.dt <= 0.0) throw std::invalid_argument("grid step must be positive");
    if (i >= field.dim) throw std::invalid_argument("coordinate index out of range");
    for (const auto& s : path.samples)
        if (s.size() != field.dim) throw std::invalid_argument("sample dimension mismatch");

    const auto J = symbolic_jacobian(field);

    // Central-difference velocities at nodes 1..m-2.
    std::vector<std::vector<double>> v(m);
    for (std::size_t k = 1; k + 1 < m; ++k) {
        v[k].resize(field.dim);
        for (std::size_t c = 0; c < field.dim; ++c)
            v[k][c] = (path.samples[k + 1][c] - path.samples[k - 1][c]) / (2.0 * path.dt);
    }

    // g_k = dJLS/dxdot_i = 2 (v_i - X_i) at node k.
    std::vector<double> g(m, 0.0);
    for (std::size_t k = 1; k + 1 < m; ++k)
        g[k] = 2.0 * (v[k][i] - field.components[i].eval(path.samples[k]));

    std::vector<double> out;
    for (std::size_t k = 2; k + 2 < m; ++k) {
        // dJLS/dx_i = -2 sum_j (v_j - X_j) dX_j/dx_i
        double px = 0.0;
        const auto X = field.eval(path.samples[k]);
        for (std::size_t j = 0; j < field.dim; ++j)
            px += (v[k][j] - X[j]) * J.at(j, i).eval(path.samples[k]);
        px *= -2.0;
        const double dgdt = (g[k + 1] - g[k - 1]) / (2.0 * path.dt);
        out.push_back(px - dgdt);
    }
    return out;
}

}  // namespace jetgeo
