#pragma once

// Dense univariate polynomials over Z and over F_p.

#include "shaclass/arith.hpp"
#include "shaclass/curve.hpp"

#include <initializer_list>
#include <vector>

namespace shaclass {

/// Coefficients stored from the constant term upward; no trailing zeros.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Integer> coefficients);
    explicit Polynomial(std::vector<Integer> coefficients);

    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Integer>& coefficients() const { return c_; }
    Integer coefficient(int i) const;
    Integer leading() const { return is_zero() ? Integer(0) : c_.back(); }

    Integer evaluate(const Integer& x) const;
    Polynomial derivative() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Integer& k);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Integer& k) { return a *= k; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    void normalize();
    std::vector<Integer> c_;
};

namespace modp {

/// Reduction of f modulo p with least nonnegative coefficients.
Polynomial reduce(const Polynomial& f, const Integer& p);
Polynomial multiply(const Polynomial& a, const Polynomial& b, const Integer& p);
/// Remainder of a by a nonzero b.
Polynomial remainder(const Polynomial& a, const Polynomial& b, const Integer& p);
/// Monic gcd.
Polynomial gcd(Polynomial a, Polynomial b, const Integer& p);
/// x^e mod f.
Polynomial power_of_x(const Integer& e, const Polynomial& f, const Integer& p);

}  // namespace modp

/// Number of distinct roots of f in F_p. The zero polynomial is an error.
int count_roots_mod(const Polynomial& f, const Integer& p);

/// Division polynomial f_n in x for the model: psi_n for odd n, psi_n / psi_2 for even n.
Polynomial division_polynomial(const Invariants& inv, unsigned n);

/// Integer roots of a monic squarefree polynomial, ascending.
std::vector<Integer> integer_roots(const Polynomial& monic);

}  // namespace shaclass
