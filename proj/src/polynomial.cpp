#include "jetgeo/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace jetgeo {

namespace {

int total_degree(const std::vector<int>& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

// Graded-lex: lower total degree first, then lexicographic on exponents.
bool exp_less(const std::vector<int>& a, const std::vector<int>& b) {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

}  // namespace

Polynomial::Polynomial(std::size_t nvars, std::vector<Monomial> terms)
    : nvars_(nvars), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (t.exponents.size() != nvars_)
            throw std::invalid_argument("monomial exponent count does not match variable count");
        if (!std::isfinite(t.coeff))
            throw std::invalid_argument("non-finite monomial coefficient");
        for (int e : t.exponents)
            if (e < 0) throw std::invalid_argument("negative exponent");
    }
    canonicalize();
}

Polynomial Polynomial::constant(std::size_t nvars, double value) {
    return Polynomial(nvars, {{value, std::vector<int>(nvars, 0)}});
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t j) {
    if (j >= nvars) throw std::invalid_argument("variable index out of range");
    std::vector<int> e(nvars, 0);
    e[j] = 1;
    return Polynomial(nvars, {{1.0, std::move(e)}});
}

void Polynomial::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Monomial& a, const Monomial& b) { return exp_less(a.exponents, b.exponents); });
    std::vector<Monomial> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exponents == t.exponents)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Monomial& t) { return t.coeff == 0.0; });
    terms_ = std::move(merged);
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, total_degree(t.exponents));
    return d;
}

double Polynomial::eval(std::span<const double> x) const {
    if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
    double sum = 0.0;
    for (const auto& t : terms_) {
        double v = t.coeff;
        for (std::size_t j = 0; j < nvars_; ++j)
            for (int e = 0; e < t.exponents[j]; ++e) v *= x[j];
        sum += v;
    }
    return sum;
}

Polynomial Polynomial::derivative(std::size_t j) const {
    if (j >= nvars_) throw std::invalid_argument("variable index out of range");
    std::vector<Monomial> out;
    for (const auto& t : terms_) {
        if (t.exponents[j] == 0) continue;
        Monomial d = t;
        d.coeff *= d.exponents[j];
        d.exponents[j] -= 1;
        out.push_back(std::move(d));
    }
    return Polynomial(nvars_, std::move(out));
}

Polynomial Polynomial::operator-() const { return *this * -1.0; }

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    if (nvars_ != rhs.nvars_) throw std::invalid_argument("variable count mismatch");
    std::vector<Monomial> all = terms_;
    all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
    return Polynomial(nvars_, std::move(all));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator*(double s) const {
    std::vector<Monomial> out = terms_;
    for (auto& t : out) t.coeff *= s;
    return Polynomial(nvars_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    if (nvars_ != rhs.nvars_ || terms_.size() != rhs.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coeff != rhs.terms_[i].coeff || terms_[i].exponents != rhs.terms_[i].exponents)
            return false;
    return true;
}

bool Polynomial::is_affine() const { return degree() <= 1; }

double Polynomial::coefficient(const std::vector<int>& exponents) const {
    for (const auto& t : terms_)
        if (t.exponents == exponents) return t.coeff;
    return 0.0;
}

double Polynomial::constant_term() const {
    return coefficient(std::vector<int>(nvars_, 0));
}

double Polynomial::linear_coefficient(std::size_t j) const {
    std::vector<int> e(nvars_, 0);
    e[j] = 1;
    return coefficient(e);
}

std::string Polynomial::to_string(std::span<const std::string> var_names, int decimals) const {
    if (var_names.size() != nvars_) throw std::invalid_argument("variable name count mismatch");
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(decimals);
    // highest-degree terms first, matching the usual written order
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const double c = it->coeff;
        if (it == terms_.rbegin())
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        os << std::abs(c);
        for (std::size_t j = 0; j < nvars_; ++j) {
            for (int e = 0; e < it->exponents[j]; ++e) os << "*" << var_names[j];
        }
    }
    return os.str();
}

std::string Polynomial::to_string(int decimals) const {
    std::vector<std::string> names(nvars_);
    for (std::size_t j = 0; j < nvars_; ++j) names[j] = "x" + std::to_string(j + 1);
    return to_string(names, decimals);
}

PolyVectorField::PolyVectorField(std::size_t n, std::vector<Polynomial> comps)
    : dim(n), components(std::move(comps)) {
    if (components.size() != dim)
        throw std::invalid_argument("component count does not match dimension");
    for (const auto& c : components)
        if (c.num_vars() != dim)
            throw std::invalid_argument("component variable count does not match dimension");
}

std::vector<double> PolyVectorField::eval(std::span<const double> x) const {
    if (x.size() != dim) throw std::invalid_argument("evaluation point has wrong dimension");
    std::vector<double> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = components[i].eval(x);
    return out;
}

PolyMatrix::PolyMatrix(std::size_t r, std::size_t c, std::size_t nvars)
    : rows(r), cols(c), entries(r * c, Polynomial(nvars)) {}

std::vector<std::vector<double>> PolyMatrix::eval(std::span<const double> x) const {
    std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out[i][j] = at(i, j).eval(x);
    return out;
}

PolyMatrix symbolic_jacobian(const PolyVectorField& field) {
    PolyMatrix J(field.dim, field.dim, field.dim);
    for (std::size_t i = 0; i < field.dim; ++i)
        for (std::size_t j = 0; j < field.dim; ++j) J.at(i, j) = field.components[i].derivative(j);
    return J;
}

std::vector<std::vector<double>> numeric_jacobian(
    const std::function<std::vector<double>(std::span<const double>)>& f,
    std::span<const double> x, double h) {
    if (h <= 0.0) throw std::invalid_argument("step must be positive");
    const std::size_t n = x.size();
    std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
    std::vector<std::vector<double>> J;
    for (std::size_t j = 0; j < n; ++j) {
        const double hj = h * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + hj;
        xm[j] = x[j] - hj;
        const auto fp = f(xp);
        const auto fm = f(xm);
        xp[j] = x[j];
        xm[j] = x[j];
        if (J.empty()) J.assign(fp.size(), std::vector<double>(n));
        if (fp.size() != J.size() || fm.size() != J.size())
            throw std::runtime_error("function output dimension changed between evaluations");
        for (std::size_t i = 0; i < fp.size(); ++i) {
            const double d = (fp[i] - fm[i]) / (2.0 * hj);
            if (!std::isfinite(d)) throw std::runtime_error("non-finite function value in numeric Jacobian");
            J[i][j] = d;
        }
    }
    return J;
}

}  // namespace jetgeo
