#pragma once

#include <optional>
#include <vector>

#include "coringlab/fp.hpp"

namespace coringlab::gf {

using Vec = std::vector<u32>;

/// Dense matrix over F_p, row-major. Linear maps act on column vectors,
/// so a map V -> W with dim V = n, dim W = m is an m x n matrix and
/// composition is matrix multiplication.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols, u32 p)
        : rows_(rows), cols_(cols), p_(p), a_(static_cast<size_t>(rows) * cols, 0) {}

    static Matrix identity(int n, u32 p);
    static Matrix from_rows(const std::vector<Vec>& rows, int cols, u32 p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    u32 mod() const { return p_; }

    u32& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    u32 at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const u32* row_ptr(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }
    u32* row_ptr(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }

    Vec col(int j) const;
    Vec row(int i) const;
    void set_col(int j, const Vec& v);

    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.p_ == y.p_ && x.a_ == y.a_;
    }

  private:
    int rows_ = 0, cols_ = 0;
    u32 p_ = 2;
    std::vector<u32> a_;
};

Matrix add(const Matrix& x, const Matrix& y);
Matrix sub(const Matrix& x, const Matrix& y);
Matrix scale(u32 c, const Matrix& x);

/// OpenMP-parallel product; exact arithmetic makes it bit-identical to the
/// serial reference for any thread count.
Matrix mul(const Matrix& x, const Matrix& y);

/// Kronecker product; index (i,j) of a tensor basis is i*dim_second + j.
Matrix kron(const Matrix& x, const Matrix& y);

Vec apply(const Matrix& m, const Vec& v);

Vec add(const Vec& x, const Vec& y, u32 p);
Vec sub(const Vec& x, const Vec& y, u32 p);
Vec scale(u32 c, const Vec& v, u32 p);
bool is_zero(const Vec& v);
u32 dot(const Vec& x, const Vec& y, u32 p);

/// v ⊗ w with the same index convention as kron.
Vec kron(const Vec& v, const Vec& w, u32 p);

struct Echelon {
    Matrix m;                 // reduced row echelon form
    std::vector<int> pivots;  // pivot column per nonzero row
    int rank = 0;
};

Echelon rref(Matrix m);

int rank(const Matrix& m);

bool is_isomorphism(const Matrix& m);

/// Solve m x = b; empty optional when inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// Columnwise solve m X = b.
std::optional<Matrix> solve_matrix(const Matrix& m, const Matrix& b);

/// Two-sided inverse of a square full-rank matrix.
std::optional<Matrix> inverse(const Matrix& m);

/// A linear subspace of F_p^ambient held by its unique reduced-echelon basis
/// (rows of `basis`). Equality of subspaces is equality of these matrices.
class Subspace {
  public:
    Subspace() = default;
    static Subspace zero(int ambient, u32 p);
    static Subspace full(int ambient, u32 p);
    static Subspace from_vectors(const std::vector<Vec>& gens, int ambient, u32 p);

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    u32 mod() const { return p_; }
    const Matrix& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;

    /// Coordinates of v in the echelon basis; empty when v is outside.
    std::optional<Vec> coordinates(const Vec& v) const;

    Subspace sum(const Subspace& other) const;

    /// ambient x dim matrix mapping coordinates to ambient vectors.
    Matrix inclusion() const;

    friend bool operator==(const Subspace& x, const Subspace& y) {
        return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
    }

  private:
    int ambient_ = 0;
    u32 p_ = 2;
    Matrix basis_;  // dim x ambient, RREF, no zero rows
};

Subspace kernel_basis(const Matrix& m);
Subspace row_space(const Matrix& m);
Subspace column_space(const Matrix& m);

struct Quotient {
    int dim = 0;
    Matrix projection;  // dim x ambient
    Matrix section;     // ambient x dim; projection * section = identity
};

/// Canonical quotient of F_p^ambient by rel: coordinates on the non-pivot
/// columns of rel's echelon basis.
Quotient quotient_space(int ambient, const Subspace& rel);

/// Serial implementations kept verbatim for testing the parallel kernels and
/// for the benchmark target.
namespace reference {
Matrix mul(const Matrix& x, const Matrix& y);
Echelon rref(Matrix m);
}  // namespace reference

}  // namespace coringlab::gf
