#include "jetgeo/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace jetgeo {

double Quadric::eval(std::span<const double> x) const {
    if (x.size() != dim) throw std::invalid_argument("evaluation point has wrong dimension");
    double q = c;
    for (std::size_t i = 0; i < dim; ++i) {
        q += b[i] * x[i];
        for (std::size_t j = 0; j < dim; ++j) q += x[i] * a_at(i, j) * x[j];
    }
    return q;
}

Quadric em_energy_quadric(const SkewField& F) {
    const std::size_t n = F.dim();
    Quadric q;
    q.dim = n;
    q.A.assign(n * n, 0.0);
    q.b.assign(n, 0.0);
    q.c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Polynomial& p = F.entry(i, j);
            if (!p.is_affine())
                throw std::invalid_argument("EM field entry is not affine in the state");
            const double c0 = p.constant_term();
            std::vector<double> lin(n);
            for (std::size_t v = 0; v < n; ++v) lin[v] = p.linear_coefficient(v);
            // (l.x + c0)^2 contributes l l^T, 2 c0 l, c0^2.
            for (std::size_t u = 0; u < n; ++u) {
                q.b[u] += 2.0 * c0 * lin[u];
                for (std::size_t v = 0; v < n; ++v) q.A[u * n + v] += lin[u] * lin[v];
            }
            q.c += c0 * c0;
        }
    }
    return q;
}

SymmetricEigen symmetric_eigen(const std::vector<double>& A, std::size_t n) {
    if (A.size() != n * n) throw std::invalid_argument("matrix size mismatch");
    std::vector<double> a = A;
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    auto at = [&](std::vector<double>& m, std::size_t i, std::size_t j) -> double& {
        return m[i * n + j];
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(a, p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(a, k, p), akq = at(a, k, q);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(a, p, k), aqk = at(a, q, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = at(v, k, p), vkq = at(v, k, q);
                    at(v, k, p) = c * vkp - s * vkq;
                    at(v, k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    SymmetricEigen e;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });
    for (std::size_t k : order) {
        e.values.push_back(a[k * n + k]);
        std::vector<double> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = v[r * n + k];
        e.vectors.push_back(std::move(col));
    }
    return e;
}

LevelSet classify_level_set(const Quadric& q, double k) {
    const std::size_t n = q.dim;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(q.a_at(i, j) - q.a_at(j, i)) > 1e-12)
                throw std::invalid_argument("quadric matrix is not symmetric");

    const SymmetricEigen eig = symmetric_eigen(q.A, n);
    if (eig.values.front() <= 0.0)
        throw std::invalid_argument("quadric matrix is not positive definite");

    // center = -1/2 A^{-1} b via the eigenbasis
    std::vector<double> center(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += eig.vectors[m][i] * q.b[i];
        const double coeff = -0.5 * proj / eig.values[m];
        for (std::size_t i = 0; i < n; ++i) center[i] += coeff * eig.vectors[m][i];
    }

    // residual k~ = k - c + 1/4 b^T A^{-1} b
    double bab = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += eig.vectors[m][i] * q.b[i];
        bab += proj * proj / eig.values[m];
    }
    const double residual = k - q.c + 0.25 * bab;

    const double band = 1e-9 * std::max(1.0, std::abs(k));
    if (std::abs(residual) <= band) return PointLevelSet{center};
    if (residual < 0.0) return EmptyLevelSet{};

    EllipsoidLevelSet e;
    e.center = center;
    for (std::size_t m = 0; m < n; ++m) {
        e.semi_axes.push_back(std::sqrt(residual / eig.values[m]));
        e.axes.push_back(eig.vectors[m]);
    }
    // eigenvalues come ascending, so semi-axes are already descending
    return e;
}

std::vector<std::array<double, 3>> sample_surface(const LevelSet& ls, std::size_t res_theta,
                                                  std::size_t res_phi) {
    const auto* e = std::get_if<EllipsoidLevelSet>(&ls);
    if (e == nullptr) throw std::invalid_argument("surface sampling needs an ellipsoid level set");
    if (e->center.size() != 3) throw std::invalid_argument("surface sampling is 3-D only");
    if (res_theta == 0 || res_phi == 0) throw std::invalid_argument("resolution must be positive");

    std::vector<std::array<double, 3>> cloud;
    cloud.reserve(res_theta * res_phi);
    for (std::size_t it = 0; it < res_theta; ++it) {
        const double theta = std::numbers::pi * (it + 0.5) / res_theta;  // polar, poles excluded
        for (std::size_t ip = 0; ip < res_phi; ++ip) {
            const double phi = 2.0 * std::numbers::pi * ip / res_phi;
            const std::array<double, 3> sph{std::sin(theta) * std::cos(phi),
                                            std::sin(theta) * std::sin(phi), std::cos(theta)};
            std::array<double, 3> p{e->center[0], e->center[1], e->center[2]};
            for (int m = 0; m < 3; ++m)
                for (int i = 0; i < 3; ++i) p[i] += e->axes[m][i] * e->semi_axes[m] * sph[m];
            cloud.push_back(p);
        }
    }
    return cloud;
}

}  // namespace jetgeo
