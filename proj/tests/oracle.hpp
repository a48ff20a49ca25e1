#pragma once

// Test-only oracles, deliberately independent of the coringlab::gf kernels:
// plain int vectors, textbook elimination, brute-force enumeration. Expected
// values frozen in the test files were produced by these.

#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using Row = std::vector<long>;

inline long norm(long x, long p) {
    long r = x % p;
    return r < 0 ? r + p : r;
}

inline long inv(long a, long p) {
    a = norm(a, p);
    for (long x = 1; x < p; ++x)
        if (norm(a * x, p) == 1) return x;
    return 0;
}

// Gauss-Jordan; returns rank, mutates rows into reduced form.
inline int eliminate(std::vector<Row>& rows, long p) {
    if (rows.empty()) return 0;
    const int cols = static_cast<int>(rows[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (norm(rows[i][c], p)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[r]);
        const long iv = inv(rows[r][c], p);
        for (long& x : rows[r]) x = norm(x * iv, p);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r) continue;
            const long f = norm(rows[i][c], p);
            if (!f) continue;
            for (int j = 0; j < cols; ++j) rows[i][j] = norm(rows[i][j] - f * rows[r][j], p);
        }
        ++r;
    }
    return r;
}

inline int rank(std::vector<Row> rows, long p) { return eliminate(rows, p); }

// Kernel by exhaustive enumeration; only for p^cols small.
inline std::vector<Row> kernel_by_enumeration(const std::vector<Row>& m, int cols, long p) {
    std::vector<Row> kernel;
    long total = 1;
    for (int i = 0; i < cols; ++i) total *= p;
    for (long code = 0; code < total; ++code) {
        Row v(cols);
        long c = code;
        for (int i = 0; i < cols; ++i) {
            v[i] = c % p;
            c /= p;
        }
        bool in_kernel = true;
        for (const Row& row : m) {
            long acc = 0;
            for (int j = 0; j < cols; ++j) acc += row[j] * v[j];
            if (norm(acc, p)) {
                in_kernel = false;
                break;
            }
        }
        bool zero = true;
        for (long x : v) zero &= (x == 0);
        if (in_kernel && !zero) kernel.push_back(v);
    }
    return kernel;
}

// Determinant by cofactor expansion.
inline long det_cofactor(const std::vector<Row>& m, long p) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    if (n == 1) return norm(m[0][0], p);
    long acc = 0;
    for (int j = 0; j < n; ++j) {
        if (!norm(m[0][j], p)) continue;
        std::vector<Row> minor;
        for (int i = 1; i < n; ++i) {
            Row row;
            for (int k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        const long sign = (j % 2 == 0) ? 1 : p - 1;
        acc += sign * m[0][j] * det_cofactor(minor, p);
    }
    return norm(acc, p);
}

// Dimension of (V (x) W) / span(relations), relations given explicitly.
inline int quotient_dim(int ambient, const std::vector<Row>& relations, long p) {
    std::vector<Row> rows = relations;
    const int r = eliminate(rows, p);
    (void)ambient;
    return ambient - r;
}

}  // namespace oracle
