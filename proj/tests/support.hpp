#pragma once

// Independent oracles and corpus readers shared by the tests.

#include "shaclass/arith.hpp"
#include "shaclass/cohom.hpp"
#include "shaclass/curve.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shaclass::testing {

inline std::string data_path(const std::string& name) { return std::string(SHACLASS_TEST_DATA_DIR) + "/" + name; }

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(text);
    while (std::getline(in, field, sep)) out.push_back(field);
    return out;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// Non-comment lines split on ';' and trimmed.
inline std::vector<std::vector<std::string>> read_corpus(const std::string& name) {
    std::ifstream in(data_path(name));
    if (!in) throw std::runtime_error("missing corpus " + name);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> row;
        for (auto& f : split(line, ';')) row.push_back(trim(f));
        rows.push_back(row);
    }
    return rows;
}

/// "I7" -> "I", "I3*" -> "I*", "IV*" -> "IV*".
inline std::string kodaira_family(std::string symbol) {
    symbol.erase(std::remove_if(symbol.begin(), symbol.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }),
                 symbol.end());
    return symbol;
}

inline std::array<Integer, 5> parse_ainvs(const std::string& text) {
    std::istringstream in(text);
    std::array<Integer, 5> a;
    std::string tok;
    for (auto& x : a) {
        in >> tok;
        x = Integer(tok);
    }
    return a;
}

/// p + 1 - #E(F_p) by enumerating every (x, y) in F_p^2 on the long Weierstrass equation.
inline long brute_force_trace(const std::array<Integer, 5>& a, unsigned long p) {
    std::array<long, 5> r;
    for (int i = 0; i < 5; ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
    long P = static_cast<long>(p);
    long points = 1;
    for (long x = 0; x < P; ++x) {
        long rhs = (((x * x % P) * x) % P + r[1] * (x * x % P) + r[3] * x + r[4]) % P;
        for (long y = 0; y < P; ++y) {
            long lhs = (y * y + r[0] * x % P * y + r[2] * y) % P;
            if (lhs == rhs) ++points;
        }
    }
    return P + 1 - points;
}

inline bool brute_force_good(const std::array<Integer, 5>& a, unsigned long p) {
    return mpz_fdiv_ui(compute_invariants(a).discriminant.get_mpz_t(), p) != 0;
}

/// Rank over F_p by plain Gaussian elimination on a dense copy.
inline int dense_rank(std::vector<std::vector<long>> rows, long p) {
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] % p == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        long inv = 1;
        for (long k = 1; k < p; ++k)
            if ((rows[rank][c] % p) * k % p == 1) inv = k;
        for (auto& x : rows[rank]) x = x * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || rows[r][c] % p == 0) continue;
            long f = rows[r][c] % p;
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

inline std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

/// Action matrix of g on the twisted module.
inline std::array<long, 4> twisted(const Mat2& g, std::uint32_t p, int det_power) {
    std::uint32_t d = g.det(p);
    long k = det_power >= 0 ? pow_mod(d, det_power, p) : pow_mod(pow_mod(d, p - 2, p), -det_power, p);
    return {g.m[0] * k % p, g.m[1] * k % p, g.m[2] * k % p, g.m[3] * k % p};
}

struct FullCohomology {
    int h0 = 0;
    int h1 = 0;
};

/// Cocycle conditions f(gh) = f(g) + g f(h) over every pair, with 2|G| unknowns.
inline FullCohomology full_cohomology(const std::vector<Mat2>& elements, std::uint32_t p, int det_power = 0) {
    std::size_t n = elements.size();
    auto index = [&](const Mat2& m) {
        for (std::size_t i = 0; i < n; ++i)
            if (elements[i] == m) return i;
        throw std::runtime_error("not closed");
    };
    std::vector<std::vector<long>> rows;
    for (std::size_t g = 0; g < n; ++g) {
        auto a = twisted(elements[g], p, det_power);
        for (std::size_t h = 0; h < n; ++h) {
            std::size_t gh = index(multiply(elements[g], elements[h], p));
            for (int comp = 0; comp < 2; ++comp) {
                std::vector<long> row(2 * n, 0);
                row[2 * gh + comp] += 1;
                row[2 * g + comp] += p - 1;
                row[2 * h] += p - a[2 * comp];
                row[2 * h + 1] += p - a[2 * comp + 1];
                for (auto& x : row) x %= p;
                rows.push_back(std::move(row));
            }
        }
    }
    int z1 = static_cast<int>(2 * n) - dense_rank(rows, p);
    std::vector<std::vector<long>> cob(2 * n, std::vector<long>(2, 0));
    std::vector<std::vector<long>> fixed;
    for (std::size_t g = 0; g < n; ++g) {
        auto a = twisted(elements[g], p, det_power);
        long m[4] = {(a[0] + p - 1) % p, a[1], a[2], (a[3] + p - 1) % p};
        cob[2 * g] = {m[0], m[1]};
        cob[2 * g + 1] = {m[2], m[3]};
        fixed.push_back({m[0], m[1]});
        fixed.push_back({m[2], m[3]});
    }
    int b1 = dense_rank(cob, p);
    FullCohomology out;
    out.h0 = 2 - dense_rank(fixed, p);
    out.h1 = z1 - b1;
    return out;
}

inline Mat2 random_invertible(std::mt19937_64& rng, std::uint32_t p) {
    std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
    for (;;) {
        Mat2 g{{d(rng), d(rng), d(rng), d(rng)}};
        if (g.det(p) != 0) return g;
    }
}

/// Multiplicative order of g by repeated multiplication.
inline std::uint64_t element_order(const Mat2& g, std::uint32_t p) {
    Mat2 x = g;
    std::uint64_t k = 1;
    while (!x.is_identity()) {
        x = multiply(x, g, p);
        ++k;
    }
    return k;
}

/// Generators of SL_2(F_p) and GL_2(F_p).
inline std::vector<Mat2> sl2_generators(std::uint32_t) { return {Mat2{{1, 1, 0, 1}}, Mat2{{1, 0, 1, 1}}}; }

inline std::vector<Mat2> gl2_generators(std::uint32_t p) {
    std::uint32_t gen = 2;
    for (std::uint32_t c = 2; c < p; ++c) {
        bool primitive = true;
        for (std::uint32_t e = 1; e < p - 1; ++e)
            if (pow_mod(c, e, p) == 1) primitive = false;
        if (primitive) {
            gen = c;
            break;
        }
    }
    auto g = sl2_generators(p);
    g.push_back(Mat2{{gen, 0, 0, 1}});
    return g;
}

}  // namespace shaclass::testing
