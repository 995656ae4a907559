#include "shaclass/polynomial.hpp"

#include "shaclass/error.hpp"

#include <algorithm>
#include <map>

namespace shaclass {

Polynomial::Polynomial(std::initializer_list<Integer> coefficients) : c_(coefficients) { normalize(); }

Polynomial::Polynomial(std::vector<Integer> coefficients) : c_(std::move(coefficients)) { normalize(); }

void Polynomial::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer Polynomial::coefficient(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Integer(0);
}

Integer Polynomial::evaluate(const Integer& x) const {
    Integer acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator*=(const Integer& k) {
    for (auto& x : c_) x *= k;
    normalize();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
}

namespace modp {

Polynomial reduce(const Polynomial& f, const Integer& p) {
    std::vector<Integer> c;
    c.reserve(f.coefficients().size());
    for (const auto& x : f.coefficients()) c.push_back(mod(x, p));
    return Polynomial(std::move(c));
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, const Integer& p) { return reduce(a * b, p); }

Polynomial remainder(const Polynomial& a, const Polynomial& b, const Integer& p) {
    Polynomial bb = reduce(b, p);
    if (bb.is_zero()) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
    std::vector<Integer> r = reduce(a, p).coefficients();
    const auto& d = bb.coefficients();
    const Integer lead_inv = inverse_mod(d.back(), p);
    const std::size_t db = d.size() - 1;
    while (r.size() > db) {
        Integer q = mod(r.back() * lead_inv, p);
        const std::size_t shift = r.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) r[shift + i] = mod(r[shift + i] - q * d[i], p);
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return Polynomial(std::move(r));
}

Polynomial gcd(Polynomial a, Polynomial b, const Integer& p) {
    a = reduce(a, p);
    b = reduce(b, p);
    while (!b.is_zero()) {
        Polynomial r = remainder(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return reduce(a * inverse_mod(a.leading(), p), p);
}

Polynomial power_of_x(const Integer& e, const Polynomial& f, const Integer& p) {
    Polynomial result{1};
    Polynomial base = remainder(Polynomial{0, 1}, f, p);
    result = remainder(result, f, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = remainder(multiply(result, result, p), f, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = remainder(multiply(result, base, p), f, p);
    }
    return result;
}

}  // namespace modp

int count_roots_mod(const Polynomial& f, const Integer& p) {
    Polynomial g = modp::reduce(f, p);
    if (g.is_zero()) throw Error(ErrorKind::InvalidInput, "root count of the zero polynomial");
    if (g.degree() == 0) return 0;
    if (p < 200) {
        int count = 0;
        for (unsigned long x = 0; x < p.get_ui(); ++x)
            if (mod(g.evaluate(Integer(x)), p) == 0) ++count;
        return count;
    }
    Polynomial xp = modp::power_of_x(p, g, p);
    Polynomial h = modp::gcd(xp - Polynomial{0, 1}, g, p);
    return h.degree();
}

Polynomial division_polynomial(const Invariants& inv, unsigned n) {
    const Integer &b2 = inv.b2, &b4 = inv.b4, &b6 = inv.b6, &b8 = inv.b8;
    const Polynomial F{b6, 2 * b4, b2, 4};
    const Polynomial F2 = F * F;
    std::map<unsigned, Polynomial> f;
    f[0] = Polynomial{};
    f[1] = Polynomial{1};
    f[2] = Polynomial{1};
    f[3] = Polynomial{b8, 3 * b6, 3 * b4, b2, 3};
    f[4] = Polynomial{b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2};
    // Recurrence in terms of f_m with psi_m = f_m (m odd), psi_m = psi_2 f_m (m even).
    auto get = [&](auto&& self, unsigned m) -> const Polynomial& {
        if (auto it = f.find(m); it != f.end()) return it->second;
        const unsigned k = m / 2;
        Polynomial value;
        if (m % 2 == 0) {
            value = self(self, k) * (self(self, k + 2) * self(self, k - 1) * self(self, k - 1) -
                                     self(self, k - 2) * self(self, k + 1) * self(self, k + 1));
        } else {
            const Polynomial& a = self(self, k + 2);
            const Polynomial& b = self(self, k);
            const Polynomial& c = self(self, k - 1);
            const Polynomial& d = self(self, k + 1);
            if (k % 2 == 0)
                value = F2 * a * b * b * b - c * d * d * d;
            else
                value = a * b * b * b - F2 * c * d * d * d;
        }
        return f.emplace(m, std::move(value)).first->second;
    };
    return get(get, n);
}

namespace {

Integer cauchy_bound(const Polynomial& monic) {
    Integer bound = 0;
    for (const auto& c : monic.coefficients()) bound = std::max(bound, Integer(abs(c)));
    return bound + 1;
}

}  // namespace

std::vector<Integer> integer_roots(const Polynomial& monic) {
    if (monic.degree() < 1 || monic.leading() != 1)
        throw Error(ErrorKind::InvalidInput, "integer_roots expects a monic polynomial of positive degree");
    std::vector<Integer> roots;
    // Zero roots first so the remaining polynomial has a nonzero constant term.
    Polynomial f = monic;
    {
        std::vector<Integer> c = f.coefficients();
        std::size_t z = 0;
        while (z < c.size() && c[z] == 0) ++z;
        if (z > 0) {
            roots.push_back(0);
            f = Polynomial(std::vector<Integer>(c.begin() + z, c.end()));
        }
    }
    if (f.degree() >= 1) {
        const Polynomial df = f.derivative();
        unsigned long q = 3;
        for (;; q += 2) {
            if (!is_small_prime(q)) continue;
            Polynomial g = modp::gcd(f, df, Integer(q));
            if (g.degree() == 0) break;
            if (q > 100000) throw Error(ErrorKind::InvalidInput, "polynomial is not squarefree");
        }
        const Integer Q(q);
        const Integer bound = 2 * cauchy_bound(f);
        for (unsigned long x0 = 0; x0 < q; ++x0) {
            if (mod(f.evaluate(Integer(x0)), Q) != 0) continue;
            Integer x = x0, modulus = Q;
            while (modulus <= bound) {
                modulus *= modulus;
                Integer d = mod(df.evaluate(x), modulus);
                x = mod(x - f.evaluate(x) * inverse_mod(d, modulus), modulus);
            }
            if (2 * x > modulus) x -= modulus;
            if (f.evaluate(x) == 0) roots.push_back(x);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace shaclass
