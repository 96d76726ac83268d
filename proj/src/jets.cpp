#include "isoq/jets.hpp"

#include <algorithm>
#include <cmath>

#include "isoq/error.hpp"
#include "isoq/kernels.hpp"

namespace isoq {

namespace {

void check_base(const Jet& a, const Jet& b) {
    if (a.base() != b.base()) throw Error(ErrorKind::BaseMismatch, "jets expanded at different points");
}

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

}  // namespace

Jet::Jet(cplx base, std::vector<cplx> coeffs) : base_(base), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.assign(1, cplx(0));
}

Jet Jet::constant(cplx base, int order, cplx value) {
    std::vector<cplx> c(static_cast<std::size_t>(order + 1), cplx(0));
    c[0] = value;
    return Jet(base, std::move(c));
}

Jet Jet::variable(cplx base, int order) {
    Jet j = constant(base, order, base);
    if (order >= 1) j[1] = 1.0;
    return j;
}

Jet Jet::monomial(cplx base, int order, int k) {
    Jet j = constant(base, order, 0.0);
    if (k <= order) j[k] = 1.0;
    return j;
}

cplx Jet::derivative(int k) const {
    if (k > order()) throw Error(ErrorKind::OrderExhausted, "derivative beyond jet order");
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return coeffs_[static_cast<std::size_t>(k)] * f;
}

cplx Jet::eval(cplx z) const {
    const cplx t = z - base_;
    cplx s = 0.0;
    for (int k = order(); k >= 0; --k) s = s * t + coeffs_[static_cast<std::size_t>(k)];
    return s;
}

double Jet::max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Jet Jet::truncated(int order) const {
    if (order >= this->order()) return *this;
    return Jet(base_, std::vector<cplx>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Jet& Jet::operator+=(const Jet& b) {
    check_base(*this, b);
    if (b.order() < order()) coeffs_.resize(b.coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += b.coeffs_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& b) {
    check_base(*this, b);
    if (b.order() < order()) coeffs_.resize(b.coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= b.coeffs_[k];
    return *this;
}

Jet& Jet::operator*=(const Jet& b) { return *this = *this * b; }
Jet& Jet::operator/=(const Jet& b) { return *this = *this / b; }

Jet& Jet::operator+=(cplx s) {
    coeffs_[0] += s;
    return *this;
}
Jet& Jet::operator-=(cplx s) {
    coeffs_[0] -= s;
    return *this;
}
Jet& Jet::operator*=(cplx s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}
Jet& Jet::operator/=(cplx s) {
    for (auto& c : coeffs_) c /= s;
    return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
    check_base(a, b);
    const int n = std::min(a.order(), b.order()) + 1;
    std::vector<cplx> out(static_cast<std::size_t>(n));
    kernels::cauchy()(a.coeffs().data(), b.coeffs().data(), out.data(), n);
    return Jet(a.base(), std::move(out));
}

Jet operator/(const Jet& a, const Jet& b) { return jet_divide(a, b).quotient; }

Jet operator+(Jet a, cplx s) { return a += s; }
Jet operator+(cplx s, Jet a) { return a += s; }
Jet operator-(Jet a, cplx s) { return a -= s; }
Jet operator-(cplx s, const Jet& a) { return (-a) += s; }
Jet operator*(Jet a, cplx s) { return a *= s; }
Jet operator*(cplx s, Jet a) { return a *= s; }
Jet operator/(Jet a, cplx s) { return a /= s; }
Jet operator/(cplx s, const Jet& a) { return Jet::constant(a.base(), a.order(), s) / a; }

namespace {

// Plain series division, b[0] != 0.
Jet series_divide(const Jet& a, const Jet& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> q(static_cast<std::size_t>(n + 1));
    const cplx inv0 = 1.0 / b[0];
    for (int k = 0; k <= n; ++k) {
        cplx s = a[k];
        for (int j = 1; j <= k; ++j) s -= b[j] * q[static_cast<std::size_t>(k - j)];
        q[static_cast<std::size_t>(k)] = s * inv0;
    }
    return Jet(a.base(), std::move(q));
}

}  // namespace

DivResult jet_divide(const Jet& a, const Jet& b) {
    check_base(a, b);
    if (b.max_abs() == 0.0) throw Error(ErrorKind::DivisionByIdenticallyZero, "denominator is the zero jet");
    const int vb = valuation(b);
    if (vb == 0) return {series_divide(a, b), 0};
    if (vb > b.order()) throw Error(ErrorKind::DivisionByIdenticallyZero, "denominator vanishes to jet order");
    for (int k = 0; k < vb && k <= a.order(); ++k)
        if (!negligible_coeff(a, k, kZeroTol))
            throw Error(ErrorKind::ZeroDenominator, "quotient has a pole at the base point");
    return {series_divide(shift_down(a, vb), shift_down(b, vb)), vb};
}

Jet jet_arith(const Jet& a, const Jet& b, JetOp op) {
    switch (op) {
        case JetOp::add: return a + b;
        case JetOp::sub: return a - b;
        case JetOp::mul: return a * b;
        case JetOp::div: return a / b;
    }
    return a;
}

Jet exp(const Jet& a) {
    const int n = a.order();
    Jet e = Jet::constant(a.base(), n, std::exp(a[0]));
    for (int k = 1; k <= n; ++k) {
        cplx s = 0.0;
        for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * e[k - j];
        e[k] = s / static_cast<double>(k);
    }
    return e;
}

Jet log(const Jet& a) {
    if (std::abs(a[0]) == 0.0) throw Error(ErrorKind::BranchPointAtBase, "log of a jet vanishing at its base");
    const int n = a.order();
    Jet l = Jet::constant(a.base(), n, std::log(a[0]));
    // l' = a'/a
    for (int k = 1; k <= n; ++k) {
        cplx s = static_cast<double>(k) * a[k];
        for (int j = 1; j < k; ++j) s -= static_cast<double>(j) * l[j] * a[k - j];
        l[k] = s / (static_cast<double>(k) * a[0]);
    }
    return l;
}

Jet sqrt(const Jet& a) { return pow_rational(a, 1, 2); }

namespace {

Jet pow_unit(const Jet& a, cplx p, cplx leading) {
    const int n = a.order();
    Jet r = Jet::constant(a.base(), n, leading);
    for (int k = 1; k <= n; ++k) {
        cplx s = 0.0;
        for (int j = 1; j <= k; ++j) s += (p * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * r[k - j];
        r[k] = s / (static_cast<double>(k) * a[0]);
    }
    return r;
}

Jet shift_up(const Jet& a, int k, int order) {
    Jet r = Jet::constant(a.base(), order, 0.0);
    for (int i = 0; i + k <= order && i <= a.order(); ++i) r[i + k] = a[i];
    return r;
}

}  // namespace

Jet pow(const Jet& a, cplx p) {
    if (a[0] != 0.0 && !negligible_coeff(a, 0, kZeroTol)) return pow_unit(a, p, std::pow(a[0], p));
    if (p.imag() == 0.0 && is_integer(p.real()) && p.real() >= 0) return pow_int(a, static_cast<int>(std::round(p.real())));
    const Stripped s = strip(a);
    if (p.imag() == 0.0) {
        const double e = s.valuation * p.real();
        if (is_integer(e)) {
            const int ie = static_cast<int>(std::round(e));
            if (ie < 0) throw Error(ErrorKind::ZeroDenominator, "negative power of a jet vanishing at its base");
            Jet u = pow_unit(s.unit, p, std::pow(s.unit[0], p));
            return shift_up(u, ie, std::min(a.order(), u.order() + ie));
        }
    }
    throw Error(ErrorKind::BranchPointAtBase, "non-integer power of a jet vanishing at its base");
}

Jet pow_int(const Jet& a, int n) {
    if (n < 0) return 1.0 / pow_int(a, -n);
    Jet r = Jet::constant(a.base(), a.order(), 1.0);
    Jet b = a;
    while (n > 0) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Jet pow_rational(const Jet& a, int p, int q) {
    if (q == 0) throw Error(ErrorKind::Validation, "zero denominator in rational exponent");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (p % q == 0) return pow_int(a, p / q);
    return pow(a, cplx(static_cast<double>(p) / q, 0.0));
}

Jet compose(const Jet& outer, const Jet& inner) {
    if (std::abs(inner[0] - outer.base()) > 1e-12 * std::max(1.0, std::abs(outer.base())))
        throw Error(ErrorKind::BaseMismatch, "inner jet does not start at the outer base point");
    Jet t = inner;
    t[0] = 0.0;
    const int n = std::min(outer.order(), inner.order());
    Jet r = Jet::constant(inner.base(), n, outer[outer.order() >= n ? n : outer.order()]);
    for (int k = std::min(outer.order(), n) - 1; k >= 0; --k) r = (r * t).truncated(n) + outer[k];
    return r.truncated(n);
}

Jet derive(const Jet& a, int k) {
    if (k < 0 || k > a.order()) throw Error(ErrorKind::OrderExhausted, "cannot differentiate past the jet order");
    if (k == 0) return a;
    std::vector<cplx> c(static_cast<std::size_t>(a.order() - k + 1));
    for (int j = 0; j <= a.order() - k; ++j) {
        double f = 1.0;
        for (int i = j + 1; i <= j + k; ++i) f *= i;
        c[static_cast<std::size_t>(j)] = a[j + k] * f;
    }
    return Jet(a.base(), std::move(c));
}

bool negligible_coeff(const Jet& a, int k, double tol) {
    double scale = 0.0;
    for (int j = 0; j <= std::min(k + kValuationWindow, a.order()); ++j) scale = std::max(scale, std::abs(a[j]));
    return std::abs(a[k]) <= tol * scale;
}

int valuation(const Jet& a, double tol) {
    for (int k = 0; k <= a.order(); ++k)
        if (!negligible_coeff(a, k, tol)) return k;
    return a.order() + 1;
}

Stripped strip(const Jet& a, double tol) {
    const int v = valuation(a, tol);
    if (v > a.order()) throw Error(ErrorKind::ZeroJet, "jet vanishes to its order");
    return {v, shift_down(a, v)};
}

Jet shift_down(const Jet& a, int k) {
    if (k == 0) return a;
    std::vector<cplx> c(a.coeffs().begin() + k, a.coeffs().end());
    return Jet(a.base(), std::move(c));
}

bool is_negligible(const Jet& a, double tol, double scale) { return a.max_abs() <= tol * scale; }

}  // namespace isoq
