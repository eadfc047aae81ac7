#pragma once

#include <gmpxx.h>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace kron {

using Int = mpz_class;
using Rat = mpq_class;

/// Reduce a rational into [0, 1).
Rat rat_mod1(const Rat& q);

/// Dense integer matrix, row-major.
class ZMat {
public:
    ZMat() = default;
    ZMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ZMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Int> col(std::size_t j) const;
    void append_col(const std::vector<Int>& c);

    bool operator==(const ZMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/// Column echelon form of an integer matrix: a * u = h with u unimodular,
/// pivot columns strictly descending a staircase, non-pivot columns zero.
struct Echelon {
    ZMat h;
    ZMat u;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
};

Echelon column_echelon(ZMat a);

/// Is b an integer combination of the columns of the echelonized matrix?
bool lattice_contains(const Echelon& e, const std::vector<Int>& b);

/// Coefficients x (over the original columns) with A x = b, if any.
std::optional<std::vector<Int>> lattice_solve(const Echelon& e, const std::vector<Int>& b);

/// Least n >= 1 with n*b in the column lattice, or nullopt when b is not even
/// in the rational span (no such n exists). Decided via the echelon form.
std::optional<Int> order_multiplier(const Echelon& e, const std::vector<Rat>& b);

/// Basis (as columns) of the lattice { x : A x = 0 }.
ZMat kernel_lattice(const ZMat& a);

/// Nonzero diagonal entries of the Smith normal form, in divisibility order.
std::vector<Int> smith_invariants(ZMat a);

}  // namespace kron
