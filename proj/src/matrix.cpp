#include "coringlab/matrix.hpp"

#include <cassert>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coringlab::gf {

namespace {
// Below this many scalar multiplications the parallel loops run on one thread.
constexpr long kParallelGrain = 1 << 15;

void check_same_shape(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.mod() != y.mod())
        throw std::invalid_argument("matrix shape/modulus mismatch");
}
}  // namespace

Matrix Matrix::identity(int n, u32 p) {
    Matrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols, u32 p) {
    Matrix m(static_cast<int>(rows.size()), cols, p);
    for (int i = 0; i < m.rows(); ++i) {
        assert(static_cast<int>(rows[i].size()) == cols);
        for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j] % p;
    }
    return m;
}

Vec Matrix::col(int j) const {
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

Vec Matrix::row(int i) const {
    Vec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void Matrix::set_col(int j, const Vec& v) {
    assert(static_cast<int>(v.size()) == rows_);
    for (int i = 0; i < rows_; ++i) at(i, j) = v[i] % p_;
}

bool Matrix::is_zero() const {
    for (u32 x : a_)
        if (x) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1u % p_ : 0u)) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, p_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Matrix add(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r(x.rows(), x.cols(), x.mod());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) = add_mod(x.at(i, j), y.at(i, j), x.mod());
    return r;
}

Matrix sub(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r(x.rows(), x.cols(), x.mod());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) = sub_mod(x.at(i, j), y.at(i, j), x.mod());
    return r;
}

Matrix scale(u32 c, const Matrix& x) {
    Matrix r(x.rows(), x.cols(), x.mod());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) = mul_mod(c, x.at(i, j), x.mod());
    return r;
}

Matrix mul(const Matrix& x, const Matrix& y) {
    if (x.cols() != y.rows() || x.mod() != y.mod())
        throw std::invalid_argument("matrix product shape mismatch");
    const u32 p = x.mod();
    Matrix r(x.rows(), y.cols(), p);
    const long work = static_cast<long>(x.rows()) * y.cols() * x.cols();
    // accumulate rows in u64 and reduce once; (p-1)^2 * cols stays below 2^64
    // for p < 2^15 and any realistic width
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (work > kParallelGrain)
#endif
    for (int i = 0; i < x.rows(); ++i) {
        std::vector<u64> acc(static_cast<size_t>(y.cols()), 0);
        for (int k = 0; k < x.cols(); ++k) {
            const u64 xv = x.at(i, k);
            if (!xv) continue;
            const u32* yrow = y.row_ptr(k);
            for (int j = 0; j < y.cols(); ++j) acc[j] += xv * yrow[j];
        }
        u32* rrow = r.row_ptr(i);
        for (int j = 0; j < y.cols(); ++j) rrow[j] = static_cast<u32>(acc[j] % p);
    }
    (void)work;
    return r;
}

Matrix kron(const Matrix& x, const Matrix& y) {
    if (x.mod() != y.mod()) throw std::invalid_argument("kron modulus mismatch");
    Matrix r(x.rows() * y.rows(), x.cols() * y.cols(), x.mod());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            const u32 v = x.at(i, j);
            if (!v) continue;
            for (int k = 0; k < y.rows(); ++k)
                for (int l = 0; l < y.cols(); ++l)
                    r.at(i * y.rows() + k, j * y.cols() + l) = mul_mod(v, y.at(k, l), x.mod());
        }
    return r;
}

Vec apply(const Matrix& m, const Vec& v) {
    if (static_cast<int>(v.size()) != m.cols())
        throw std::invalid_argument("apply dimension mismatch");
    Vec r(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        u64 acc = 0;
        const u32* row = m.row_ptr(i);
        for (int j = 0; j < m.cols(); ++j) acc += u64(row[j]) * v[j];
        r[i] = static_cast<u32>(acc % m.mod());
    }
    return r;
}

Vec add(const Vec& x, const Vec& y, u32 p) {
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = add_mod(x[i], y[i], p);
    return r;
}

Vec sub(const Vec& x, const Vec& y, u32 p) {
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = sub_mod(x[i], y[i], p);
    return r;
}

Vec scale(u32 c, const Vec& v, u32 p) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = mul_mod(c, v[i], p);
    return r;
}

bool is_zero(const Vec& v) {
    for (u32 x : v)
        if (x) return false;
    return true;
}

u32 dot(const Vec& x, const Vec& y, u32 p) {
    u64 acc = 0;
    for (size_t i = 0; i < x.size(); ++i) acc += u64(x[i]) * y[i];
    return static_cast<u32>(acc % p);
}

Vec kron(const Vec& v, const Vec& w, u32 p) {
    Vec r(v.size() * w.size());
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < w.size(); ++j) r[i * w.size() + j] = mul_mod(v[i], w[j], p);
    return r;
}

Echelon rref(Matrix m) {
    const u32 p = m.mod();
    const int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        const u32 inv = inv_mod(m.at(r, c), p);
        if (inv != 1)
            for (int j = c; j < cols; ++j) m.at(r, j) = mul_mod(m.at(r, j), inv, p);
        const long work = static_cast<long>(rows) * (cols - c);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (work > kParallelGrain)
#endif
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const u64 f = m.at(i, c);
            if (!f) continue;
            const u32* src = m.row_ptr(r);
            u32* dst = m.row_ptr(i);
            for (int j = c; j < cols; ++j)
                dst[j] = static_cast<u32>((dst[j] + f * (p - src[j])) % p);
        }
        (void)work;
        pivots.push_back(c);
        ++r;
    }
    return Echelon{std::move(m), std::move(pivots), r};
}

int rank(const Matrix& m) { return rref(m).rank; }

bool is_isomorphism(const Matrix& m) {
    if (m.rows() != m.cols()) return false;
    return rank(m) == m.rows();
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    auto x = solve_matrix(m, Matrix::from_rows({b}, static_cast<int>(b.size()), m.mod()).transpose());
    if (!x) return std::nullopt;
    return x->col(0);
}

std::optional<Matrix> solve_matrix(const Matrix& m, const Matrix& b) {
    if (b.rows() != m.rows() || b.mod() != m.mod())
        throw std::invalid_argument("solve shape mismatch");
    // row-reduce [m | b]
    Matrix aug(m.rows(), m.cols() + b.cols(), m.mod());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        for (int j = 0; j < b.cols(); ++j) aug.at(i, m.cols() + j) = b.at(i, j);
    }
    Echelon e = rref(std::move(aug));
    Matrix x(m.cols(), b.cols(), m.mod());
    for (int t = 0; t < e.rank; ++t) {
        if (e.pivots[t] >= m.cols()) return std::nullopt;  // inconsistent
        for (int j = 0; j < b.cols(); ++j) x.at(e.pivots[t], j) = e.m.at(t, m.cols() + j);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto inv = solve_matrix(m, Matrix::identity(m.rows(), m.mod()));
    if (!inv) return std::nullopt;
    if (!mul(m, *inv).is_identity() || !mul(*inv, m).is_identity()) return std::nullopt;
    return inv;
}

Subspace Subspace::zero(int ambient, u32 p) {
    Subspace s;
    s.ambient_ = ambient;
    s.p_ = p;
    s.basis_ = Matrix(0, ambient, p);
    return s;
}

Subspace Subspace::full(int ambient, u32 p) {
    Subspace s;
    s.ambient_ = ambient;
    s.p_ = p;
    s.basis_ = Matrix::identity(ambient, p);
    return s;
}

Subspace Subspace::from_vectors(const std::vector<Vec>& gens, int ambient, u32 p) {
    Echelon e = rref(Matrix::from_rows(gens, ambient, p));
    Subspace s;
    s.ambient_ = ambient;
    s.p_ = p;
    s.basis_ = Matrix(e.rank, ambient, p);
    for (int i = 0; i < e.rank; ++i)
        for (int j = 0; j < ambient; ++j) s.basis_.at(i, j) = e.m.at(i, j);
    return s;
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
    for (int i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    // Echelon rows make this a single reduction sweep.
    if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("coordinates size");
    Vec rem = v;
    Vec coord(dim(), 0);
    for (int i = 0; i < dim(); ++i) {
        int pc = -1;
        for (int j = 0; j < ambient_; ++j)
            if (basis_.at(i, j)) {
                pc = j;
                break;
            }
        const u32 c = rem[pc];
        if (c) {
            coord[i] = c;
            for (int j = 0; j < ambient_; ++j)
                rem[j] = sub_mod(rem[j], mul_mod(c, basis_.at(i, j), p_), p_);
        }
    }
    if (!is_zero(rem)) return std::nullopt;
    return coord;
}

Subspace Subspace::sum(const Subspace& other) const {
    std::vector<Vec> gens;
    for (int i = 0; i < dim(); ++i) gens.push_back(basis_.row(i));
    for (int i = 0; i < other.dim(); ++i) gens.push_back(other.basis_.row(i));
    return from_vectors(gens, ambient_, p_);
}

Matrix Subspace::inclusion() const { return basis_.transpose(); }

Subspace kernel_basis(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (int c : e.pivots) is_pivot[c] = 1;
    std::vector<Vec> gens;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols(), 0);
        v[f] = 1 % m.mod();
        for (int t = 0; t < e.rank; ++t) v[e.pivots[t]] = neg_mod(e.m.at(t, f), m.mod());
        gens.push_back(std::move(v));
    }
    return Subspace::from_vectors(gens, m.cols(), m.mod());
}

Subspace row_space(const Matrix& m) {
    std::vector<Vec> rows;
    for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return Subspace::from_vectors(rows, m.cols(), m.mod());
}

Subspace column_space(const Matrix& m) { return row_space(m.transpose()); }

Quotient quotient_space(int ambient, const Subspace& rel) {
    if (rel.ambient() != ambient) throw std::invalid_argument("quotient ambient mismatch");
    const u32 p = rel.mod();
    std::vector<char> is_pivot(ambient, 0);
    std::vector<int> pivot_row(ambient, -1);
    for (int i = 0; i < rel.dim(); ++i) {
        for (int j = 0; j < ambient; ++j)
            if (rel.basis().at(i, j)) {
                is_pivot[j] = 1;
                pivot_row[j] = i;
                break;
            }
    }
    std::vector<int> free_cols;
    for (int j = 0; j < ambient; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Quotient q;
    q.dim = static_cast<int>(free_cols.size());
    q.projection = Matrix(q.dim, ambient, p);
    q.section = Matrix(ambient, q.dim, p);
    for (int k = 0; k < q.dim; ++k) {
        q.projection.at(k, free_cols[k]) = 1 % p;
        q.section.at(free_cols[k], k) = 1 % p;
    }
    // reducing e_j by the echelon rows moves pivot coordinates onto free ones
    for (int j = 0; j < ambient; ++j) {
        if (!is_pivot[j]) continue;
        const int t = pivot_row[j];
        for (int k = 0; k < q.dim; ++k)
            q.projection.at(k, j) = neg_mod(rel.basis().at(t, free_cols[k]), p);
    }
    return q;
}

namespace reference {

Matrix mul(const Matrix& x, const Matrix& y) {
    if (x.cols() != y.rows() || x.mod() != y.mod())
        throw std::invalid_argument("matrix product shape mismatch");
    const u32 p = x.mod();
    Matrix r(x.rows(), y.cols(), p);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) {
            u64 acc = 0;
            for (int k = 0; k < x.cols(); ++k) acc += u64(x.at(i, k)) * y.at(k, j);
            r.at(i, j) = static_cast<u32>(acc % p);
        }
    return r;
}

Echelon rref(Matrix m) {
    const u32 p = m.mod();
    const int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        const u32 inv = inv_mod(m.at(r, c), p);
        if (inv != 1)
            for (int j = c; j < cols; ++j) m.at(r, j) = mul_mod(m.at(r, j), inv, p);
        for (int i = 0; i < rows; ++i) {
            if (i == r || !m.at(i, c)) continue;
            const u32 f = m.at(i, c);
            for (int j = c; j < cols; ++j)
                m.at(i, j) = sub_mod(m.at(i, j), mul_mod(f, m.at(r, j), p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon{std::move(m), std::move(pivots), r};
}

}  // namespace reference

}  // namespace coringlab::gf
