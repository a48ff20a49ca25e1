#include "coringlab/systems.hpp"

#include <functional>
#include <sstream>

namespace coringlab {

namespace {

std::string pair_str(int i, int j) {
    std::ostringstream os;
    os << "(" << i << "," << j << ")";
    return os.str();
}

}  // namespace

DirectedPoset DirectedPoset::chain(int n) {
    DirectedPoset p;
    p.n = n;
    p.rel.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) p.set(i, j);
    return p;
}

DirectedPoset DirectedPoset::single() { return chain(1); }

Report DirectedPoset::validate() const {
    Report rep;
    bool antisym = true, transitive = true, directed = true, extension = true;
    std::string cx;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && leq(i, j) && leq(j, i)) {
                antisym = false;
                cx = pair_str(i, j);
            }
            if (leq(i, j) && j < i) extension = false;
        }
    rep.check("poset", "antisymmetric", antisym, cx);
    rep.check("poset", "indices-linear-extension", extension,
              "indices do not refine the order");
    cx.clear();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (leq(i, j) && leq(j, k) && !leq(i, k)) {
                    transitive = false;
                    cx = pair_str(i, j) + pair_str(j, k);
                }
    rep.check("poset", "transitive", transitive, cx);
    cx.clear();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool ub = false;
            for (int k = 0; k < n && !ub; ++k) ub = leq(i, k) && leq(j, k);
            if (!ub) {
                directed = false;
                cx = pair_str(i, j);
            }
        }
    rep.check("poset", "directed", directed, cx);
    return rep;
}

int DirectedPoset::join(int i, int j) const {
    for (int k = 0; k < n; ++k)
        if (leq(i, k) && leq(j, k)) return k;
    throw Error(ErrorCode::NoUpperBound, "no upper bound for " + pair_str(i, j));
}

int DirectedPoset::join_alt(int i, int j) const {
    for (int k = n - 1; k >= 0; --k)
        if (leq(i, k) && leq(j, k)) return k;
    throw Error(ErrorCode::NoUpperBound, "no upper bound for " + pair_str(i, j));
}

int DirectedPoset::maximum() const {
    for (int k = n - 1; k >= 0; --k) {
        bool max = true;
        for (int i = 0; i < n && max; ++i) max = leq(i, k);
        if (max) return k;
    }
    throw Error(ErrorCode::NoUpperBound, "poset has no maximum");
}

std::vector<std::pair<int, int>> DirectedPoset::strict_pairs() const {
    std::vector<std::pair<int, int>> v;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && leq(i, j)) v.push_back({i, j});
    return v;
}

namespace {

Matrix lookup(const TransMap& maps, int i, int j, int dim_i, int dim_j, u32 p, const char* what) {
    if (i == j) {
        auto it = maps.find({i, i});
        if (it != maps.end()) return it->second;
        return Matrix::identity(dim_i, p);
    }
    auto it = maps.find({i, j});
    if (it == maps.end())
        throw Error(ErrorCode::Internal,
                    std::string("missing ") + what + " at " + pair_str(i, j));
    (void)dim_j;
    return it->second;
}

}  // namespace

Matrix AlgebraSystem::transition(int i, int j) const {
    return lookup(up, i, j, obj[i]->dim, obj[j]->dim, obj[i]->p, "transition");
}

Matrix SplitAlgebraSystem::retraction(int i, int j) const {
    return lookup(down, i, j, obj[i]->dim, obj[j]->dim, obj[i]->p, "retraction");
}

Matrix ModuleSystem::transition(int i, int j) const {
    return lookup(up, i, j, obj[i].dim, obj[j].dim, obj[i].mod(), "transition");
}

Matrix SplitModuleSystem::retraction(int i, int j) const {
    return lookup(down, i, j, obj[i].dim, obj[j].dim, obj[i].mod(), "retraction");
}

namespace {

// Shared law checks over any system presentation.
struct SystemView {
    const DirectedPoset* poset;
    std::function<int(int)> dim;
    std::function<Matrix(int, int)> up;    // i <= j
    std::function<Matrix(int, int)> down;  // empty when not split
    bool split = false;
    std::function<bool(int, int, const Matrix&)> morphism_ok;  // up-map validity
};

Report check_view(const SystemView& v) {
    Report rep;
    rep.merge(v.poset->validate());
    const int n = v.poset->n;
    for (int i = 0; i < n; ++i) {
        rep.check("system", "identity-at-" + std::to_string(i),
                  v.up(i, i).is_identity() && (!v.split || v.down(i, i).is_identity()),
                  "transition at (i,i) is not the identity");
    }
    for (auto [i, j] : v.poset->strict_pairs()) {
        if (!v.morphism_ok(i, j, v.up(i, j)))
            rep.fail("system", "morphism", "transition " + pair_str(i, j) + " is not a morphism");
    }
    bool functorial = true;
    std::string cx;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (!(v.poset->leq(i, j) && v.poset->leq(j, k))) continue;
                if (!(gf::mul(v.up(j, k), v.up(i, j)) == v.up(i, k))) {
                    functorial = false;
                    cx = pair_str(i, j) + pair_str(j, k);
                }
            }
    rep.check("system", "functor-comp", functorial, cx);
    if (v.split) {
        for (auto [i, j] : v.poset->strict_pairs()) {
            rep.check("system", "eq-3.1.1",
                      gf::mul(v.down(i, j), v.up(i, j)).is_identity(),
                      "nu o mu != id at " + pair_str(i, j));
        }
        bool retr_comp = true;
        std::string rcx;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (!(v.poset->leq(i, j) && v.poset->leq(j, k))) continue;
                    if (!(gf::mul(v.down(i, j), v.down(j, k)) == v.down(i, k))) {
                        retr_comp = false;
                        rcx = pair_str(i, j) + pair_str(j, k);
                    }
                }
        rep.check("system", "retraction-comp", retr_comp, rcx);
    }
    return rep;
}

SystemView view_of(const AlgebraSystem& sys) {
    SystemView v;
    v.poset = &sys.poset;
    v.dim = [&sys](int i) { return sys.obj[i]->dim; };
    v.up = [&sys](int i, int j) { return sys.transition(i, j); };
    v.morphism_ok = [&sys](int i, int j, const Matrix& m) {
        return is_multiplicative(AlgebraMorphism{sys.obj[i], sys.obj[j], m, false});
    };
    return v;
}

SystemView view_of(const ModuleSystem& sys) {
    SystemView v;
    v.poset = &sys.poset;
    v.dim = [&sys](int i) { return sys.obj[i].dim; };
    v.up = [&sys](int i, int j) { return sys.transition(i, j); };
    v.morphism_ok = [&sys](int i, int j, const Matrix& m) {
        switch (sys.kind) {
            case MorKind::RightLinear: return is_right_linear(sys.obj[i], sys.obj[j], m);
            case MorKind::LeftLinear: return is_left_linear(sys.obj[i], sys.obj[j], m);
            case MorKind::BimoduleMap: return is_bimodule_map(sys.obj[i], sys.obj[j], m);
        }
        return false;
    };
    return v;
}

}  // namespace

Report check_system(const AlgebraSystem& sys) { return check_view(view_of(sys)); }

Report check_system(const SplitAlgebraSystem& sys) {
    SystemView v = view_of(static_cast<const AlgebraSystem&>(sys));
    v.split = true;
    v.down = [&sys](int i, int j) { return sys.retraction(i, j); };
    return check_view(v);
}

Report check_system(const ModuleSystem& sys) { return check_view(view_of(sys)); }

Report check_system(const SplitModuleSystem& sys) {
    SystemView v = view_of(static_cast<const ModuleSystem&>(sys));
    v.split = true;
    v.down = [&sys](int i, int j) { return sys.retraction(i, j); };
    return check_view(v);
}

namespace {

template <class Sys>
Colimit colimit_impl(const Sys& sys) {
    Colimit col;
    col.top = sys.poset.maximum();
    col.truncated = sys.poset.lazy;
    for (int i = 0; i < sys.poset.n; ++i) col.inj[i] = sys.transition(i, col.top);
    return col;
}

template <class Sys>
std::map<int, Matrix> retractions_impl(const Sys& sys, const Colimit& col) {
    const DirectedPoset& po = sys.poset;
    std::map<int, Matrix> nu;
    for (int i = 0; i < po.n; ++i) {
        // u^i_k must not depend on the mediating index l >= i,k
        for (int k = 0; k < po.n; ++k) {
            std::optional<Matrix> first;
            for (int l = 0; l < po.n; ++l) {
                if (!(po.leq(i, l) && po.leq(k, l))) continue;
                Matrix u = gf::mul(sys.retraction(i, l), sys.transition(k, l));
                if (!first)
                    first = u;
                else if (!(*first == u))
                    throw Error(ErrorCode::IndependenceFailure,
                                "u^" + std::to_string(i) + "_" + std::to_string(k) +
                                    " depends on the mediating index");
            }
        }
        nu[i] = sys.retraction(i, col.top);
    }
    return nu;
}

template <class Sys>
Report check_retractions_impl(const Sys& sys, const Colimit& col, const std::map<int, Matrix>& nu) {
    Report rep;
    const DirectedPoset& po = sys.poset;
    for (int i = 0; i < po.n; ++i) {
        rep.check("system", "eq-3.1.3-unit",
                  gf::mul(nu.at(i), col.inj.at(i)).is_identity(),
                  "nu_i o mu_i != id at i=" + std::to_string(i));
        for (int j = 0; j < po.n; ++j) {
            if (!po.leq(i, j) || i == j) continue;
            rep.check("system", "eq-3.1.3",
                      gf::mul(sys.retraction(i, j), nu.at(j)) == nu.at(i),
                      "nu_i != nu_ij o nu_j at " + pair_str(i, j));
        }
        // eq-3.1.4 re-derivation: u^i_j = nu_i o mu_j for every j
        for (int j = 0; j < po.n; ++j) {
            const int l = po.join(i, j);
            Matrix u = gf::mul(sys.retraction(i, l), sys.transition(j, l));
            rep.check("system", "eq-3.1.4", gf::mul(nu.at(i), col.inj.at(j)) == u,
                      "cocone re-derivation fails at " + pair_str(i, j));
        }
    }
    return rep;
}

}  // namespace

Colimit colimit(const AlgebraSystem& sys) { return colimit_impl(sys); }
Colimit colimit(const ModuleSystem& sys) { return colimit_impl(sys); }

std::map<int, Matrix> retractions(const SplitAlgebraSystem& sys, const Colimit& col) {
    return retractions_impl(sys, col);
}

std::map<int, Matrix> retractions(const SplitModuleSystem& sys, const Colimit& col) {
    return retractions_impl(sys, col);
}

Report check_retractions(const SplitModuleSystem& sys, const Colimit& col,
                         const std::map<int, Matrix>& nu) {
    return check_retractions_impl(sys, col, nu);
}

Report check_retractions(const SplitAlgebraSystem& sys, const Colimit& col,
                         const std::map<int, Matrix>& nu) {
    return check_retractions_impl(sys, col, nu);
}

FiniteAlgebra local_units_from_colimit(const AlgebraSystem& sys, const Colimit& col) {
    FiniteAlgebra b = *sys.obj[col.top];
    b.idempotents.clear();
    b.family_orthogonal = false;
    for (int i = 0; i < sys.poset.n; ++i) {
        const auto& unit_i = sys.obj[i]->unit;
        if (!unit_i)
            throw Error(ErrorCode::PreconditionFailure,
                        "local_units_from_colimit needs unital levels");
        Vec e = gf::apply(col.inj.at(i), *unit_i);
        bool dup = false;
        for (const Vec& f : b.idempotents) dup = dup || f == e;
        if (!dup) b.idempotents.push_back(std::move(e));
    }
    return b;
}

namespace {

template <class Sys>
ColimitOracleResult colimit_oracle_impl(const Sys& sys, const Colimit& col,
                                        const std::vector<int>& dims, u32 p) {
    const int n = sys.poset.n;
    std::vector<int> offset(n, 0);
    int total = 0;
    for (int i = 0; i < n; ++i) {
        offset[i] = total;
        total += dims[i];
    }
    std::vector<Vec> gens;
    for (auto [i, j] : sys.poset.strict_pairs()) {
        Matrix t = sys.transition(i, j);
        for (int v = 0; v < dims[i]; ++v) {
            Vec g(total, 0);
            g[offset[i] + v] = 1 % p;
            for (int w = 0; w < dims[j]; ++w)
                g[offset[j] + w] = gf::sub_mod(g[offset[j] + w], t.at(w, v), p);
            gens.push_back(std::move(g));
        }
    }
    Subspace rel = Subspace::from_vectors(gens, total, p);
    gf::Quotient q = quotient_space(total, rel);
    // induced map to the top object: inc_i(x) -> mu_i(x)
    Matrix f(dims[col.top], total, p);
    for (int i = 0; i < n; ++i) {
        const Matrix& mu = col.inj.at(i);
        for (int v = 0; v < dims[i]; ++v)
            for (int w = 0; w < dims[col.top]; ++w) f.at(w, offset[i] + v) = mu.at(w, v);
    }
    ColimitOracleResult res;
    res.dim = q.dim;
    bool kills_relations = true;
    for (int r = 0; r < rel.dim(); ++r)
        kills_relations = kills_relations && gf::is_zero(gf::apply(f, rel.basis().row(r)));
    res.mediating = gf::mul(f, q.section);
    res.iso = kills_relations && q.dim == dims[col.top] && gf::is_isomorphism(res.mediating);
    return res;
}

}  // namespace

ColimitOracleResult colimit_oracle(const ModuleSystem& sys, const Colimit& col) {
    std::vector<int> dims;
    for (const auto& m : sys.obj) dims.push_back(m.dim);
    return colimit_oracle_impl(sys, col, dims, sys.obj.at(0).mod());
}

ColimitOracleResult colimit_oracle(const AlgebraSystem& sys, const Colimit& col) {
    std::vector<int> dims;
    for (const auto& a : sys.obj) dims.push_back(a->dim);
    return colimit_oracle_impl(sys, col, dims, sys.obj.at(0)->p);
}

}  // namespace coringlab
