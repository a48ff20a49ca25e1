#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coringlab/instances.hpp"
#include "coringlab/systems.hpp"

using namespace coringlab;
using gf::Matrix;
using gf::Vec;

TEST_CASE("poset validation") {
    auto chain = DirectedPoset::chain(3);
    CHECK(chain.validate().pass());
    CHECK(chain.maximum() == 2);
    CHECK(chain.join(0, 1) == 1);
    CHECK(chain.join_alt(0, 1) == 2);  // a different valid choice

    DirectedPoset bad;  // two incomparable points, not directed
    bad.n = 2;
    bad.rel.assign(4, 0);
    bad.set(0, 0);
    bad.set(1, 1);
    CHECK_FALSE(bad.validate().pass());
    CHECK_THROWS_AS(bad.maximum(), Error);
}

TEST_CASE("check_system on the corner chain") {
    auto in = inst::corner(3);
    CHECK(check_system(in.sys.rings).pass());
    CHECK(check_system(in.sys.modules).pass());

    SUBCASE("single-point system passes") {
        auto sw = inst::sweedler();
        CHECK(check_system(sw.sys.rings).pass());
        CHECK(check_system(sw.sys.modules).pass());
    }
    SUBCASE("zeroed retraction fails eq-3.1.1 at (0,1)") {
        auto mutant = in;
        mutant.sys.modules.down[{0, 1}] = Matrix(1, 2, 2);
        Report rep = check_system(mutant.sys.modules);
        CHECK_FALSE(rep.pass());
        bool found = false;
        for (const auto& r : rep.failures()) found = found || r.identity == "eq-3.1.1";
        CHECK(found);
    }
}

TEST_CASE("colimit on pinned small cases") {
    SUBCASE("constant system -> same object, identity injections") {
        auto sw = inst::sweedler();
        auto col = colimit(sw.sys.modules);
        CHECK(col.top == 0);
        CHECK(col.inj.at(0).is_identity());
        CHECK_FALSE(col.truncated);
    }
    SUBCASE("corner chain of algebras -> M_3 with corner injections") {
        auto in = inst::corner(3);
        auto col = colimit(in.sys.rings);
        CHECK(col.top == 2);
        CHECK(in.sys.rings.obj[col.top]->dim == 9);
        CHECK(col.inj.at(0) == in.sys.rings.up[{0, 2}]);
    }
    SUBCASE("lazy corner chain truncated at 4 -> M_4 with flag") {
        auto in = inst::lazy_corner(4);
        auto col = colimit(in.sys.rings);
        CHECK(col.truncated);
        CHECK(in.sys.rings.obj[col.top]->dim == 16);
    }
}

TEST_CASE("retractions and Prop 3.1 laws") {
    auto in = inst::corner(3);
    auto col = colimit(in.sys.modules);
    auto nu = retractions(in.sys.modules, col);
    CHECK(check_retractions(in.sys.modules, col, nu).pass());
    // corner chain: nu_i = coordinate truncation
    CHECK(nu.at(0) == in.sys.modules.down[{0, 2}]);

    SUBCASE("single point: nu = id") {
        auto sw = inst::sweedler();
        auto c = colimit(sw.sys.modules);
        CHECK(retractions(sw.sys.modules, c).at(0).is_identity());
    }
    SUBCASE("perturbing nu_1 breaks eq-3.1.3") {
        auto mutated = nu;
        mutated[1] = gf::add(mutated[1], Matrix::from_rows({{0, 0, 1}, {0, 0, 0}}, 3, 2));
        CHECK_FALSE(check_retractions(in.sys.modules, col, mutated).pass());
    }
    SUBCASE("choice-dependent u^i_k raises IndependenceFailure") {
        auto blk = inst::block();
        auto bcol = colimit(blk.sys.modules);
        auto broken = blk.sys;
        broken.modules.down[{0, 2}] = Matrix(1, 3, 2);  // still composes, no longer splits
        CHECK_THROWS_AS(retractions(broken.modules, bcol), Error);
    }
}

TEST_CASE("local_units_from_colimit") {
    SUBCASE("constant unital system -> family {1}") {
        auto sw = inst::sweedler();
        auto col = colimit(sw.sys.rings);
        auto b = local_units_from_colimit(sw.sys.rings, col);
        REQUIRE(b.idempotents.size() == 1);
        CHECK(b.idempotents[0] == *sw.sys.rings.obj[0]->unit);
    }
    SUBCASE("corner chain -> e_1, e_2, e_3 = 1 with e_i e_j = e_min") {
        auto in = inst::corner(3);
        auto col = colimit(in.sys.rings);
        auto b = local_units_from_colimit(in.sys.rings, col);
        REQUIRE(b.idempotents.size() == 3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                CHECK(b.product(b.idempotents[i], b.idempotents[j]) ==
                      b.idempotents[std::min(i, j)]);
        std::vector<std::vector<Vec>> subsets;
        for (int i = 0; i < b.dim; ++i) {
            Vec e(b.dim, 0);
            e[i] = 1;
            subsets.push_back({e});
        }
        CHECK(verify_local_units(b, subsets));
        CHECK(idempotent_order_directed(b));
    }
    SUBCASE("block system -> directed family with incomparable idempotents") {
        auto in = inst::block();
        auto col = colimit(in.sys.rings);
        auto b = local_units_from_colimit(in.sys.rings, col);
        REQUIRE(b.idempotents.size() == 3);
        auto le = idempotent_order(b);
        CHECK(le[0][2]);
        CHECK(le[1][2]);
        CHECK_FALSE(le[0][1]);
        CHECK(idempotent_order_directed(b));
        // e_1 e_2 = 0: orthogonal below the top
        CHECK(gf::is_zero(b.product(b.idempotents[0], b.idempotents[1])));
    }
}

TEST_CASE("colimit oracle: direct-sum-mod-relations construction") {
    for (auto in : {inst::corner(3), inst::block()}) {
        auto rcol = colimit(in.sys.rings);
        auto r = colimit_oracle(in.sys.rings, rcol);
        CHECK(r.iso);
        CHECK(r.dim == in.sys.rings.obj[rcol.top]->dim);
        auto mcol = colimit(in.sys.modules);
        auto m = colimit_oracle(in.sys.modules, mcol);
        CHECK(m.iso);
        CHECK(m.dim == in.sys.modules.obj[mcol.top].dim);
    }
}

TEST_CASE("epi property: injections jointly span the colimit") {
    auto in = inst::block();
    auto col = colimit(in.sys.modules);
    std::vector<Vec> cols;
    for (auto& [i, mu] : col.inj)
        for (int c = 0; c < mu.cols(); ++c) cols.push_back(mu.col(c));
    CHECK(gf::Subspace::from_vectors(cols, 3, 2) == gf::Subspace::full(3, 2));
}
