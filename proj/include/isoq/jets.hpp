#pragma once

#include <complex>
#include <vector>

namespace isoq {

using cplx = std::complex<double>;

inline constexpr int kDefaultOrder = 10;
// Coefficients below this fraction of the largest one count as zero when stripping.
inline constexpr double kZeroTol = 1e-13;
// a_k is compared against a_0..a_{k+window}, so jets near a pole are not mistaken for zeros
inline constexpr int kValuationWindow = 3;

// Truncated power series sum_k c_k (z - base)^k, k = 0..order.
class Jet {
public:
    Jet() : coeffs_(1, cplx(0)) {}
    Jet(cplx base, std::vector<cplx> coeffs);

    static Jet constant(cplx base, int order, cplx value);
    static Jet variable(cplx base, int order);
    static Jet monomial(cplx base, int order, int k);

    cplx base() const { return base_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    cplx& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
    cplx value() const { return coeffs_[0]; }
    // k-th derivative at the base point.
    cplx derivative(int k) const;
    // Evaluates the truncated polynomial at z.
    cplx eval(cplx z) const;
    double max_abs() const;
    Jet truncated(int order) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& b);
    Jet& operator-=(const Jet& b);
    Jet& operator*=(const Jet& b);
    Jet& operator/=(const Jet& b);
    Jet& operator+=(cplx s);
    Jet& operator-=(cplx s);
    Jet& operator*=(cplx s);
    Jet& operator/=(cplx s);

private:
    cplx base_{0.0, 0.0};
    std::vector<cplx> coeffs_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, cplx s);
Jet operator+(cplx s, Jet a);
Jet operator-(Jet a, cplx s);
Jet operator-(cplx s, const Jet& a);
Jet operator*(Jet a, cplx s);
Jet operator*(cplx s, Jet a);
Jet operator/(Jet a, cplx s);
Jet operator/(cplx s, const Jet& a);

enum class JetOp { add, sub, mul, div };

struct DivResult {
    Jet quotient;
    int stripped = 0;  // common valuation removed before dividing
};

Jet jet_arith(const Jet& a, const Jet& b, JetOp op);
DivResult jet_divide(const Jet& a, const Jet& b);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, cplx exponent);
Jet pow_int(const Jet& a, int n);
Jet pow_rational(const Jet& a, int p, int q);

Jet compose(const Jet& outer, const Jet& inner);
Jet derive(const Jet& a, int k = 1);

struct Stripped {
    int valuation = 0;
    Jet unit;
};

bool negligible_coeff(const Jet& a, int k, double tol = kZeroTol);
int valuation(const Jet& a, double tol = kZeroTol);
Stripped strip(const Jet& a, double tol = kZeroTol);
// Multiplies by (z - base)^-k, dropping the first k coefficients.
Jet shift_down(const Jet& a, int k);
// True when every coefficient is below tol relative to scale.
bool is_negligible(const Jet& a, double tol, double scale = 1.0);

}  // namespace isoq
