#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coringlab/matrix.hpp"
#include "oracle.hpp"

using namespace coringlab;
using gf::Matrix;
using gf::Vec;

namespace {

Matrix random_matrix(int r, int c, gf::u32 p, std::mt19937_64& rng) {
    Matrix m(r, c, p);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<gf::u32>(rng() % p);
    return m;
}

}  // namespace

TEST_CASE("kernel_basis on pinned small cases") {
    // identity 3x3 over F_2 -> zero subspace
    CHECK(kernel_basis(Matrix::identity(3, 2)).dim() == 0);
    // zero 2x2 over F_2 -> full 2-dim subspace
    CHECK(kernel_basis(Matrix(2, 2, 2)).dim() == 2);

    // m = [[1,1],[1,1]] over F_2 -> span{(1,1)}; frozen from enumeration of
    // all 4 vectors of F_2^2 (oracle::kernel_by_enumeration gives {(1,1)}).
    Matrix m = Matrix::from_rows({{1, 1}, {1, 1}}, 2, 2);
    auto ker = kernel_basis(m);
    CHECK(ker.dim() == 1);
    CHECK(ker.basis().row(0) == Vec{1, 1});
    auto enumerated = oracle::kernel_by_enumeration({{1, 1}, {1, 1}}, 2, 2);
    REQUIRE(enumerated.size() == 1);
    CHECK(enumerated[0] == oracle::Row{1, 1});
}

TEST_CASE("kernel vectors multiply to zero") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const gf::u32 p = trial % 2 ? 3 : 2;
        Matrix m = random_matrix(4 + trial % 3, 5 + trial % 4, p, rng);
        auto ker = kernel_basis(m);
        for (int i = 0; i < ker.dim(); ++i)
            CHECK(gf::is_zero(gf::apply(m, ker.basis().row(i))));
        // rank-nullity
        CHECK(ker.dim() + gf::rank(m) == m.cols());
    }
}

TEST_CASE("quotient_space on pinned small cases") {
    SUBCASE("ambient 4, rel = 0") {
        auto q = quotient_space(4, gf::Subspace::zero(4, 2));
        CHECK(q.dim == 4);
        CHECK(q.projection.is_identity());
    }
    SUBCASE("ambient 2, rel = full") {
        auto q = quotient_space(2, gf::Subspace::full(2, 2));
        CHECK(q.dim == 0);
    }
    SUBCASE("ambient 4 over F_2, rel = span{(1,0,1,0),(0,1,0,1)}") {
        // dim 2 frozen by rank-nullity: oracle rank of the two rows is 2.
        CHECK(oracle::rank({{1, 0, 1, 0}, {0, 1, 0, 1}}, 2) == 2);
        auto rel = gf::Subspace::from_vectors({{1, 0, 1, 0}, {0, 1, 0, 1}}, 4, 2);
        auto q = quotient_space(4, rel);
        CHECK(q.dim == 2);
        CHECK(gf::mul(q.projection, q.section).is_identity());
        CHECK(kernel_basis(q.projection) == rel);
    }
}

TEST_CASE("quotient projection/section laws on random rels") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const gf::u32 p = trial % 2 ? 3 : 2;
        const int n = 6;
        Matrix g = random_matrix(3, n, p, rng);
        auto rel = gf::row_space(g);
        auto q = quotient_space(n, rel);
        CHECK(q.dim == n - rel.dim());
        CHECK(gf::mul(q.projection, q.section).is_identity());
        // section o projection == identity modulo rel
        Matrix sp = gf::mul(q.section, q.projection);
        for (int j = 0; j < n; ++j) {
            Vec e(n, 0);
            e[j] = 1;
            Vec d = gf::sub(gf::apply(sp, e), e, p);
            CHECK(rel.contains(d));
        }
    }
}

TEST_CASE("is_isomorphism on pinned small cases") {
    CHECK(gf::is_isomorphism(Matrix::identity(4, 2)));
    CHECK_FALSE(gf::is_isomorphism(Matrix(2, 3, 2)));
    // [[1,1],[0,1]] over F_2: determinant 1 by cofactor expansion
    CHECK(oracle::det_cofactor({{1, 1}, {0, 1}}, 2) == 1);
    CHECK(gf::is_isomorphism(Matrix::from_rows({{1, 1}, {0, 1}}, 2, 2)));
}

TEST_CASE("solve and inverse") {
    Matrix m = Matrix::from_rows({{1, 1}, {0, 1}}, 2, 2);
    auto x = gf::solve(m, Vec{1, 1});
    REQUIRE(x.has_value());
    CHECK(gf::apply(m, *x) == Vec{1, 1});
    auto inv = gf::inverse(m);
    REQUIRE(inv.has_value());
    CHECK(gf::mul(m, *inv).is_identity());
    // inconsistent system
    Matrix z(2, 2, 2);
    CHECK_FALSE(gf::solve(z, Vec{1, 0}).has_value());
}

TEST_CASE("parallel kernels agree with serial reference") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        const gf::u32 p = trial % 3 ? 2 : 1009;
        Matrix a = random_matrix(37, 41, p, rng);
        Matrix b = random_matrix(41, 29, p, rng);
        CHECK(gf::mul(a, b) == gf::reference::mul(a, b));
        auto e1 = gf::rref(a);
        auto e2 = gf::reference::rref(a);
        CHECK(e1.m == e2.m);
        CHECK(e1.pivots == e2.pivots);
    }
    // large enough to take the parallel path
    Matrix big_a = random_matrix(150, 160, 3, rng);
    Matrix big_b = random_matrix(160, 140, 3, rng);
    CHECK(gf::mul(big_a, big_b) == gf::reference::mul(big_a, big_b));
    CHECK(gf::rref(big_a).m == gf::reference::rref(big_a).m);
}

TEST_CASE("subspace canonical form") {
    // same span, different generators -> identical echelon basis
    auto s1 = gf::Subspace::from_vectors({{1, 1, 0}, {0, 1, 1}}, 3, 2);
    auto s2 = gf::Subspace::from_vectors({{1, 0, 1}, {0, 1, 1}, {1, 1, 0}}, 3, 2);
    CHECK(s1 == s2);
    CHECK(s1.contains(Vec{1, 0, 1}));
    CHECK_FALSE(s1.contains(Vec{1, 0, 0}));
    auto c = s1.coordinates(Vec{1, 0, 1});
    REQUIRE(c.has_value());
    Vec rebuilt = gf::apply(s1.inclusion(), *c);
    CHECK(rebuilt == Vec{1, 0, 1});
}

TEST_CASE("kron index convention") {
    // (v (x) w)[i*dimW + j] = v_i w_j
    Vec v{1, 2}, w{3, 5, 7};
    Vec k = gf::kron(v, w, 11);
    CHECK(k == Vec{3, 5, 7, 6, 10, 3});
    Matrix a = Matrix::from_rows({{1, 2}}, 2, 11);
    Matrix b = Matrix::from_rows({{3, 5, 7}}, 3, 11);
    Matrix kk = gf::kron(a, b);
    CHECK(kk.rows() == 1);
    CHECK(kk.cols() == 6);
    CHECK(kk.row(0) == k);
}

TEST_CASE("zero-dimensional edge cases") {
    Matrix e(0, 3, 2);
    CHECK(kernel_basis(e).dim() == 3);  // no constraints
    Matrix z(3, 0, 2);
    CHECK(kernel_basis(z).dim() == 0);
    CHECK(gf::is_isomorphism(Matrix(0, 0, 2)));
    auto q = quotient_space(0, gf::Subspace::zero(0, 2));
    CHECK(q.dim == 0);
}
