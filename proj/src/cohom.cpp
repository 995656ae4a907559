#include "shaclass/cohom.hpp"

#include "shaclass/error.hpp"

#include <unordered_map>

namespace shaclass {
namespace {

std::uint32_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t p) { return static_cast<std::uint32_t>(a * b % p); }

std::uint32_t powmod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1 % p, b = a % p;
    for (; e; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t inverse(std::uint32_t a, std::uint32_t p) { return powmod(a, p - 2, p); }

std::uint64_t key(const Mat2& g, std::uint32_t p) {
    std::uint64_t k = 0;
    for (auto x : g.m) k = k * p + x;
    return k;
}

/// Matrix of the twisted action of g.
Mat2 act(const Mat2& g, Twist twist, std::uint32_t p) {
    if (twist.det_power == 0) return g;
    const std::uint32_t d = g.det(p);
    long e = twist.det_power % static_cast<long>(p - 1);
    if (e < 0) e += p - 1;
    const std::uint32_t s = powmod(d, static_cast<std::uint64_t>(e), p);
    Mat2 out;
    for (int i = 0; i < 4; ++i) out.m[i] = mulmod(s, g.m[i], p);
    return out;
}

int rank_of_stacked_minus_identity(const std::vector<Mat2>& matrices, std::uint32_t p) {
    EchelonBasis basis(2, p);
    for (const Mat2& g : matrices) {
        basis.insert({(g.m[0] + p - 1) % p, g.m[1]});
        basis.insert({g.m[2], (g.m[3] + p - 1) % p});
        if (basis.rank() == 2) break;
    }
    return static_cast<int>(basis.rank());
}

void check_prime(std::uint32_t p) {
    if (p < 2 || p > 65521) throw Error(ErrorKind::InvalidInput, "modulus out of range");
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
}

}  // namespace

std::uint32_t Mat2::det(std::uint32_t p) const {
    std::uint64_t a = static_cast<std::uint64_t>(m[0]) * m[3] % p;
    std::uint64_t b = static_cast<std::uint64_t>(m[1]) * m[2] % p;
    return static_cast<std::uint32_t>((a + p - b) % p);
}

Mat2 multiply(const Mat2& a, const Mat2& b, std::uint32_t p) {
    const auto& x = a.m;
    const auto& y = b.m;
    auto dot = [&](std::uint64_t u, std::uint64_t v, std::uint64_t w, std::uint64_t z) {
        return static_cast<std::uint32_t>((u * v + w * z) % p);
    };
    return {{dot(x[0], y[0], x[1], y[2]), dot(x[0], y[1], x[1], y[3]), dot(x[2], y[0], x[3], y[2]),
             dot(x[2], y[1], x[3], y[3])}};
}

Mat2 reduce(const std::array<long, 4>& entries, std::uint32_t p) {
    Mat2 out;
    for (int i = 0; i < 4; ++i) {
        long r = entries[i] % static_cast<long>(p);
        out.m[i] = static_cast<std::uint32_t>(r < 0 ? r + p : r);
    }
    return out;
}

bool MatrixGroup::contains(const Mat2& g) const {
    for (const Mat2& e : elements)
        if (e == g) return true;
    return false;
}

MatrixGroup close_group(const std::vector<Mat2>& generators, std::uint32_t p, std::size_t cap) {
    check_prime(p);
    MatrixGroup group;
    group.p = p;
    for (const Mat2& g : generators) {
        Mat2 r = g;
        for (auto& x : r.m) x %= p;
        if (r.det(p) == 0) throw Error(ErrorKind::InvalidInput, "generator is not invertible mod p");
        group.generators.push_back(r);
    }
    std::unordered_map<std::uint64_t, std::size_t> index;
    group.elements.push_back(Mat2::identity());
    group.parent.push_back(0);
    group.via.push_back(0);
    index.emplace(key(Mat2::identity(), p), 0);
    for (std::size_t head = 0; head < group.elements.size(); ++head) {
        for (std::size_t i = 0; i < group.generators.size(); ++i) {
            Mat2 next = multiply(group.generators[i], group.elements[head], p);
            if (index.emplace(key(next, p), group.elements.size()).second) {
                if (group.elements.size() >= cap)
                    throw Error(ErrorKind::GroupTooLarge,
                                "group exceeds the cap of " + std::to_string(cap) + " elements");
                group.elements.push_back(next);
                group.parent.push_back(head);
                group.via.push_back(i);
            }
        }
    }
    return group;
}

std::string Twist::descriptor() const {
    if (det_power == 0) return "standard module E[p] = F_p + F_p";
    return "standard module twisted by det^" + std::to_string(det_power);
}

bool EchelonBasis::insert(std::vector<std::uint32_t> row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const std::size_t c = pivots_[k];
        if (row[c] == 0) continue;
        const std::uint64_t f = row[c];
        const auto& b = rows_[k];
        for (std::size_t j = c; j < columns_; ++j)
            row[j] = static_cast<std::uint32_t>((row[j] + (p_ - f) * b[j]) % p_);
    }
    std::size_t c = 0;
    while (c < columns_ && row[c] == 0) ++c;
    if (c == columns_) return false;
    const std::uint64_t inv = inverse(row[c], p_);
    for (std::size_t j = c; j < columns_; ++j) row[j] = static_cast<std::uint32_t>(row[j] * inv % p_);
    // keep the pivot order ascending so later reductions stay triangular
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < c) ++pos;
    // clear column c from existing rows below in order
    for (auto& r : rows_) {
        if (r[c] == 0) continue;
        const std::uint64_t f = r[c];
        for (std::size_t j = c; j < columns_; ++j) r[j] = static_cast<std::uint32_t>((r[j] + (p_ - f) * row[j]) % p_);
    }
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), c);
    return true;
}

int h0(const MatrixGroup& group, Twist twist) {
    std::vector<Mat2> acting;
    for (const Mat2& g : group.generators) acting.push_back(act(g, twist, group.p));
    return 2 - rank_of_stacked_minus_identity(acting, group.p);
}

int coboundary_dimension(const MatrixGroup& group, Twist twist) {
    std::vector<Mat2> acting;
    for (const Mat2& g : group.elements) acting.push_back(act(g, twist, group.p));
    return rank_of_stacked_minus_identity(acting, group.p);
}

int h1(const MatrixGroup& group, Twist twist) {
    const std::uint32_t p = group.p;
    const std::size_t k = group.generators.size();
    if (k == 0) return 0;
    const std::size_t n = 2 * k;
    // f(e) = A_e x, with x the stacked values of f on the generators; A_e is 2 x n.
    using Block = std::array<std::vector<std::uint32_t>, 2>;
    std::vector<Block> A(group.order(), Block{std::vector<std::uint32_t>(n, 0), std::vector<std::uint32_t>(n, 0)});
    std::vector<Mat2> rho(k);
    for (std::size_t i = 0; i < k; ++i) rho[i] = act(group.generators[i], twist, p);

    // E_i + rho(g_i) A_e
    auto step = [&](std::size_t i, const Block& from) {
        Block out{std::vector<std::uint32_t>(n), std::vector<std::uint32_t>(n)};
        const auto& r = rho[i].m;
        for (std::size_t j = 0; j < n; ++j) {
            out[0][j] = static_cast<std::uint32_t>((std::uint64_t(r[0]) * from[0][j] + std::uint64_t(r[1]) * from[1][j]) % p);
            out[1][j] = static_cast<std::uint32_t>((std::uint64_t(r[2]) * from[0][j] + std::uint64_t(r[3]) * from[1][j]) % p);
        }
        out[0][2 * i] = (out[0][2 * i] + 1) % p;
        out[1][2 * i + 1] = (out[1][2 * i + 1] + 1) % p;
        return out;
    };
    for (std::size_t e = 1; e < group.order(); ++e) A[e] = step(group.via[e], A[group.parent[e]]);

    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t e = 0; e < group.order(); ++e) index.emplace(key(group.elements[e], p), e);

    EchelonBasis relations(n, p);
    for (std::size_t e = 0; e < group.order() && relations.rank() < n; ++e) {
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t ge = index.at(key(multiply(group.generators[i], group.elements[e], p), p));
            const Block expected = step(i, A[e]);
            for (int row = 0; row < 2; ++row) {
                std::vector<std::uint32_t> diff(n);
                for (std::size_t j = 0; j < n; ++j) diff[j] = (A[ge][row][j] + p - expected[row][j]) % p;
                relations.insert(std::move(diff));
            }
        }
    }
    const int z1 = static_cast<int>(n - relations.rank());
    return z1 - coboundary_dimension(group, twist);
}

int h1_cyclic(const Mat2& generator, std::uint64_t order, std::uint32_t p) {
    check_prime(p);
    if (order == 0) throw Error(ErrorKind::InvalidInput, "order must be positive");
    Mat2 g;
    for (int i = 0; i < 4; ++i) g.m[i] = generator.m[i] % p;
    Mat2 power = Mat2::identity();
    Mat2 norm{{0, 0, 0, 0}};
    for (std::uint64_t i = 0; i < order; ++i) {
        for (int j = 0; j < 4; ++j) norm.m[j] = (norm.m[j] + power.m[j]) % p;
        power = multiply(power, g, p);
    }
    if (!power.is_identity())
        throw Error(ErrorKind::InvalidInput, "generator does not have order dividing " + std::to_string(order));
    EchelonBasis n_rows(2, p);
    n_rows.insert({norm.m[0], norm.m[1]});
    n_rows.insert({norm.m[2], norm.m[3]});
    const int ker_n = 2 - static_cast<int>(n_rows.rank());
    return ker_n - rank_of_stacked_minus_identity({g}, p);
}

std::optional<std::uint32_t> central_scalar_shortcut(const MatrixGroup& group, Twist twist) {
    const std::uint32_t p = group.p;
    for (std::uint32_t lambda = 2; lambda < p; ++lambda) {
        Mat2 s = Mat2::scalar(lambda);
        if (!group.contains(s)) continue;
        if (!act(s, twist, p).is_identity()) return lambda;
    }
    return std::nullopt;
}

CohomologyResult compute_cohomology(const MatrixGroup& group, Twist twist, bool allow_shortcut) {
    CohomologyResult result;
    result.module_descriptor = twist.descriptor();
    if (allow_shortcut) {
        if (auto lambda = central_scalar_shortcut(group, twist)) {
            result.shortcut_scalar = lambda;
            return result;
        }
    }
    result.h0_dim = h0(group, twist);
    result.h1_dim = h1(group, twist);
    return result;
}

}  // namespace shaclass
