#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace loophom {

using Int = boost::multiprecision::cpp_int;

/// Raised for every contract violation in the library. `kind` is a short
/// machine-readable tag ("image not contained in kernel", "d-squared nonzero", ...).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(detail.empty() ? kind : kind + ": " + detail),
          kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);
    /// Matrix whose columns are the given vectors (all of length `rows`).
    static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Int> column(std::size_t c) const;
    IntMatrix transpose() const;
    bool is_zero() const;

    /// Horizontal concatenation; both operands must have the same row count.
    IntMatrix hconcat(const IntMatrix& rhs) const;
    /// Columns [first, first + count).
    IntMatrix column_block(std::size_t first, std::size_t count) const;
    /// Rows [first, first + count).
    IntMatrix row_block(std::size_t first, std::size_t count) const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend std::vector<Int> operator*(const IntMatrix& a, const std::vector<Int>& v);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Finitely generated abelian group: Z^free_rank + Z/t_1 + ... + Z/t_k with t_i | t_{i+1}, t_i >= 2.
struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    /// Canonical form of an arbitrary list of cyclic orders (0 = Z, 1 = trivial).
    static AbelianGroup from_cyclic_orders(std::size_t free_rank, const std::vector<Int>& orders);

    bool is_trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
    bool is_free() const noexcept { return torsion.empty(); }
    /// Number of canonical generators.
    std::size_t generator_count() const noexcept { return free_rank + torsion.size(); }

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

    /// Invariant-factor rendering: "Z^2 + Z/2 + Z/6", "0" for the trivial group.
    std::string to_string() const;
    /// Primary decomposition rendering: "Z + Z/2 + Z/3" for Z + Z/6.
    std::string to_primary_string() const;
};

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

/// M = U * D * V with U, V unimodular, D diagonal and nonnegative with d_i | d_{i+1}.
/// `left` and `right` are the inverses of U and V, so left * M * right = D.
struct SmithDecomposition {
    IntMatrix U, D, V;
    IntMatrix left, right;
    std::size_t rank = 0;

    std::vector<Int> invariant_factors() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Columns form a basis of {v : M v = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

/// Z^rows / column-span(M).
AbelianGroup cokernel(const IntMatrix& m);

/// Basis (as columns) of the lattice spanned by the columns of `m`.
IntMatrix lattice_basis(const IntMatrix& m);

/// Basis of the saturation (Q-span intersected with Z^n) of the column span of `m`.
IntMatrix saturation_basis(const IntMatrix& m);

/// Integer solution X of basis * X = targets, where `basis` has independent columns.
/// Returns false if some target column is outside the lattice.
bool solve_in_lattice(const IntMatrix& basis, const IntMatrix& targets, IntMatrix& solution);

/// Quotient K/I of two lattices given by spanning columns in a common ambient Z^n.
class Subquotient {
public:
    Subquotient() = default;
    Subquotient(const IntMatrix& kernel, const IntMatrix& image);

    const AbelianGroup& group() const noexcept { return group_; }
    /// Ambient vectors representing the canonical generators: torsion ones first
    /// (matching group().torsion), then the free ones.
    const std::vector<std::vector<Int>>& lifts() const noexcept { return lifts_; }
    std::size_t ambient_dim() const noexcept { return ambient_; }

    /// True if v lies in the kernel lattice K.
    bool contains(const std::vector<Int>& v) const;
    /// Canonical coordinates of the class of v in K/I; torsion coordinates reduced into [0, t).
    /// Throws if v is not in K.
    std::vector<Int> coordinates(const std::vector<Int>& v) const;
    /// True if v lies in I (its class is zero).
    bool is_zero_class(const std::vector<Int>& v) const;

private:
    std::size_t ambient_ = 0;
    IntMatrix kernel_basis_;      // independent columns spanning K
    IntMatrix coord_change_;      // maps K-coordinates to SNF coordinates of the quotient
    std::vector<Int> factors_;    // per SNF coordinate: 0 = free, 1 = killed, >1 torsion
    AbelianGroup group_;
    std::vector<std::vector<Int>> lifts_;
    std::vector<std::size_t> canonical_index_;  // SNF coordinate index of each canonical generator
};

/// Convenience wrapper matching the (group, lift) pair of the library contract.
Subquotient subquotient(const IntMatrix& kernel, const IntMatrix& image);

std::string to_string(const Int& v);

}  // namespace loophom
