#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace jetgeo {

/// One term of a sparse multivariate polynomial: coeff * prod_j x_j^exponents[j].
struct Monomial {
    double coeff = 0.0;
    std::vector<int> exponents;
};

/// Sparse polynomial over a fixed number of variables. Terms are kept in
/// canonical form: graded-lex order, duplicates merged, zero terms dropped.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
    Polynomial(std::size_t nvars, std::vector<Monomial> terms);

    static Polynomial constant(std::size_t nvars, double value);
    /// The single variable x_j as a polynomial.
    static Polynomial variable(std::size_t nvars, std::size_t j);

    std::size_t num_vars() const { return nvars_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    double eval(std::span<const double> x) const;

    /// Exact partial derivative with respect to variable j.
    Polynomial derivative(std::size_t j) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(double s) const;

    bool operator==(const Polynomial& rhs) const;

    /// Degree <= 1 in every variable combined (a0 + sum a_j x_j).
    bool is_affine() const;
    /// Coefficient of the monomial with the given exponent vector (0 if absent).
    double coefficient(const std::vector<int>& exponents) const;
    /// Constant term.
    double constant_term() const;
    /// Coefficient of x_j in an affine polynomial (linear part in general).
    double linear_coefficient(std::size_t j) const;

    /// Human-readable rendering, coefficients printed to `decimals` places.
    std::string to_string(std::span<const std::string> var_names, int decimals = 4) const;
    std::string to_string(int decimals = 4) const;

private:
    void canonicalize();

    std::size_t nvars_ = 0;
    std::vector<Monomial> terms_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p * s; }

/// The d-tensor field X: n polynomial components over n variables.
struct PolyVectorField {
    std::size_t dim = 0;
    std::vector<Polynomial> components;

    PolyVectorField() = default;
    PolyVectorField(std::size_t n, std::vector<Polynomial> comps);

    std::vector<double> eval(std::span<const double> x) const;
};

/// Dense matrix of polynomials sharing one variable count.
struct PolyMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Polynomial> entries;  // row-major

    PolyMatrix() = default;
    PolyMatrix(std::size_t r, std::size_t c, std::size_t nvars);

    Polynomial& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    std::vector<std::vector<double>> eval(std::span<const double> x) const;
};

/// Jacobian by exact term-by-term differentiation.
PolyMatrix symbolic_jacobian(const PolyVectorField& field);

/// Central-difference Jacobian of a black-box vector function. The step for
/// column j is h * max(1, |x_j|).
std::vector<std::vector<double>> numeric_jacobian(
    const std::function<std::vector<double>(std::span<const double>)>& f,
    std::span<const double> x, double h = 1e-5);

}  // namespace jetgeo
