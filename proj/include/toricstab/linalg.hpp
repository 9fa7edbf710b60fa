#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toricstab/rational.hpp"

namespace toricstab {

// Dense matrix over Q, row-major. Small sizes throughout (ambient
// dimensions are fan ranks and sheaf ranks), so no sparsity games.
class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static QMat from_rows(const std::vector<QVec>& rows, std::size_t cols);
    static QMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QVec row(std::size_t i) const;
    void append_row(const QVec& r);

    bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

// In-place reduced row echelon form; returns pivot column per pivot row.
// Zero rows are dropped, pivots normalised to 1.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank(QMat m);

// Basis of {x : m x = 0}, rows of the result, RREF-canonical.
QMat kernel(const QMat& m);

// Solves A x = rhs for x over any Q-module scalar (Rational, polynomial...).
// Gaussian elimination over Q drives the pivoting; the scalar only needs
// addition, subtraction and multiplication by Rational. Underdetermined
// systems return the particular solution with free variables set to zero.
template <class S>
std::optional<std::vector<S>> solve(QMat a, std::vector<S> rhs);

// Subspace of Q^n in canonical form: basis rows in RREF with unit pivots.
// Representation equality is subspace equality.
class Subspace {
public:
    Subspace() : ambient_(0) {}
    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);
    static Subspace span(std::size_t ambient, const std::vector<QVec>& vectors);
    static Subspace line(const QVec& v);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const QMat& basis() const { return basis_; }
    QVec basis_row(std::size_t i) const { return basis_.row(i); }

    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    bool contains(const QVec& v) const;
    bool contains(const Subspace& other) const;

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    // Canonical order: dimension first, then lexicographic on the basis.
    bool operator<(const Subspace& o) const;

private:
    std::size_t ambient_;
    QMat basis_;
};

Subspace subspace_meet(const Subspace& a, const Subspace& b);
Subspace subspace_join(const Subspace& a, const Subspace& b);
std::size_t meet_dim(const Subspace& a, const Subspace& b);

// Integer lattice utilities ---------------------------------------------

// Smith normal form D = P * A * Q with P, Q unimodular; D diagonal with
// d_1 | d_2 | ... >= 0.
struct SmithForm {
    std::vector<Integer> divisors; // length min(rows, cols)
    std::vector<ZVec> p;           // rows x rows
    std::vector<ZVec> q;           // cols x cols
};
SmithForm smith_normal_form(const std::vector<ZVec>& a);

// Index of Z<generators> inside the saturation of its span; the gcd of all
// maximal minors of the generator matrix. Generators must be Q-independent.
Integer lattice_multiplicity(const std::vector<ZVec>& generators);

bool is_primitive(const ZVec& v);
ZVec primitive_part(const ZVec& v);

// Surjectivity of the lattice map x -> A x over Z.
bool is_surjective_lattice_map(const std::vector<ZVec>& a, std::size_t cols);

// Integer solution of A x = b, if one exists.
std::optional<ZVec> solve_integer(const std::vector<ZVec>& a, const ZVec& b);

// Feasibility of {x >= 0 : A x = b}, exact phase-I simplex with Bland's rule.
bool lp_feasible(const QMat& a, const QVec& b);

QVec to_qvec(const ZVec& v);

// ----------------------------------------------------------------------

template <class S>
std::optional<std::vector<S>> solve(QMat a, std::vector<S> rhs) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a.at(p, c) == 0) ++p;
        if (p == m) continue;
        if (p != r) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(r, j));
            std::swap(rhs[p], rhs[r]);
        }
        Rational inv = Rational(1) / a.at(r, c);
        for (std::size_t j = c; j < n; ++j) a.at(r, j) *= inv;
        rhs[r] = rhs[r] * inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            Rational f = a.at(i, c);
            for (std::size_t j = c; j < n; ++j) a.at(i, j) -= f * a.at(r, j);
            rhs[i] = rhs[i] - rhs[r] * f;
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (!(rhs[i] == S())) return std::nullopt;
    std::vector<S> x(n, S());
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
    return x;
}

} // namespace toricstab
