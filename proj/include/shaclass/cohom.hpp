#pragma once

// Cohomology of finite subgroups of GL_2(F_p) acting on F_p^2.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shaclass {

/// 2x2 matrix over F_p, row major: [[m[0], m[1]], [m[2], m[3]]].
struct Mat2 {
    std::array<std::uint32_t, 4> m{1, 0, 0, 1};

    static Mat2 identity() { return {}; }
    static Mat2 scalar(std::uint32_t lambda) { return {{lambda, 0, 0, lambda}}; }

    std::uint32_t det(std::uint32_t p) const;
    std::uint32_t trace(std::uint32_t p) const { return (m[0] + m[3]) % p; }
    bool is_identity() const { return m == std::array<std::uint32_t, 4>{1, 0, 0, 1}; }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 multiply(const Mat2& a, const Mat2& b, std::uint32_t p);
Mat2 reduce(const std::array<long, 4>& entries, std::uint32_t p);

inline constexpr std::size_t kDefaultGroupCap = 5000;

/// Finite subgroup with a breadth-first spanning tree: elements[0] is the identity
/// and elements[i] = generators[via[i]] * elements[parent[i]] for i > 0.
struct MatrixGroup {
    std::uint32_t p = 0;
    std::vector<Mat2> generators;
    std::vector<Mat2> elements;
    std::vector<std::size_t> parent;
    std::vector<std::size_t> via;

    std::size_t order() const { return elements.size(); }
    bool contains(const Mat2& g) const;
};

/// Throws GroupTooLarge past the cap and InvalidInput for singular generators.
MatrixGroup close_group(const std::vector<Mat2>& generators, std::uint32_t p, std::size_t cap = kDefaultGroupCap);

/// The module F_p^2 with g acting as det(g)^det_power * g.
struct Twist {
    int det_power = 0;
    std::string descriptor() const;
};

/// Dimension of the invariants: kernel of the stacked (g - 1) over the generators.
int h0(const MatrixGroup& group, Twist twist = {});

/// dim Z^1 / B^1 from the cocycle system reduced to the values on generators.
int h1(const MatrixGroup& group, Twist twist = {});

/// Rank of m -> ((g - 1) m)_g over all elements.
int coboundary_dimension(const MatrixGroup& group, Twist twist = {});

/// dim ker(N) - rank(g - 1) with N = 1 + g + ... + g^(order-1). Throws InvalidInput
/// when g^order is not the identity.
int h1_cyclic(const Mat2& generator, std::uint64_t order, std::uint32_t p);

/// Smallest lambda != 1 with lambda * Id in the group acting nontrivially on the
/// twisted module, when one exists.
std::optional<std::uint32_t> central_scalar_shortcut(const MatrixGroup& group, Twist twist = {});

struct CohomologyResult {
    int h0_dim = 0;
    int h1_dim = 0;
    std::string module_descriptor;
    std::optional<std::uint32_t> shortcut_scalar;
};

/// With allow_shortcut, a central scalar acting nontrivially gives h0 = h1 = 0 directly.
CohomologyResult compute_cohomology(const MatrixGroup& group, Twist twist = {}, bool allow_shortcut = true);

/// Row echelon basis over F_p, filled one row at a time.
class EchelonBasis {
public:
    EchelonBasis(std::size_t columns, std::uint32_t p) : columns_(columns), p_(p) {}

    /// Returns true when the row was independent of the rows so far.
    bool insert(std::vector<std::uint32_t> row);
    std::size_t rank() const { return rows_.size(); }
    std::size_t columns() const { return columns_; }

private:
    std::size_t columns_;
    std::uint32_t p_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace shaclass
