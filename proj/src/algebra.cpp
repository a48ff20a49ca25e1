#include "coringlab/algebra.hpp"

#include <map>
#include <mutex>

namespace coringlab {

using gf::add_mod;
using gf::mul_mod;
using gf::sub_mod;

namespace {

Vec basis_vec(int dim, int i, u32 p) {
    Vec v(dim, 0);
    v[i] = 1 % p;
    return v;
}

}  // namespace

Vec FiniteAlgebra::product(const Vec& a, const Vec& b) const {
    return gf::apply(mult, gf::kron(a, b, p));
}

Matrix FiniteAlgebra::left_mul(const Vec& a) const {
    Matrix m(dim, dim, p);
    for (int j = 0; j < dim; ++j) m.set_col(j, product(a, basis_vec(dim, j, p)));
    return m;
}

Matrix FiniteAlgebra::right_mul(const Vec& a) const {
    Matrix m(dim, dim, p);
    for (int j = 0; j < dim; ++j) m.set_col(j, product(basis_vec(dim, j, p), a));
    return m;
}

Report FiniteAlgebra::validate() const {
    Report rep;
    const std::string suite = "algebra:" + (name.empty() ? std::string("?") : name);
    // associativity: mult o (mult (x) id) == mult o (id (x) mult) on A^3
    Matrix lhs = gf::mul(mult, gf::kron(mult, Matrix::identity(dim, p)));
    Matrix rhs = gf::mul(mult, gf::kron(Matrix::identity(dim, p), mult));
    rep.check(suite, "associativity", lhs == rhs, "basis triple violates associativity");
    if (unit) {
        rep.check(suite, "unit-left", left_mul(*unit).is_identity(), "unit fails 1*x=x");
        rep.check(suite, "unit-right", right_mul(*unit).is_identity(), "unit fails x*1=x");
    }
    for (size_t k = 0; k < idempotents.size(); ++k) {
        const Vec& e = idempotents[k];
        if (!(product(e, e) == e))
            rep.fail(suite, "idempotent", "family element " + std::to_string(k) + " not idempotent");
    }
    if (!idempotents.empty() && rep.pass()) rep.ok(suite, "idempotent");
    return rep;
}

AlgebraPtr make_algebra(FiniteAlgebra a) { return std::make_shared<const FiniteAlgebra>(std::move(a)); }

AlgebraPtr trivial_algebra(u32 p) {
    static std::mutex mu;
    static std::map<u32, AlgebraPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    FiniteAlgebra a;
    a.p = p;
    a.dim = 1;
    a.mult = Matrix(1, 1, p);
    a.mult.at(0, 0) = 1 % p;
    a.unit = Vec{1 % p};
    a.idempotents = {Vec{1 % p}};
    a.name = "k";
    auto ptr = make_algebra(std::move(a));
    cache[p] = ptr;
    return ptr;
}

bool is_multiplicative(const AlgebraMorphism& f) {
    // f o mult_src == mult_tgt o (f (x) f)
    Matrix lhs = gf::mul(f.map, f.source->mult);
    Matrix rhs = gf::mul(f.target->mult, gf::kron(f.map, f.map));
    return lhs == rhs;
}

Report check_algebra_morphism(const AlgebraMorphism& f) {
    Report rep;
    rep.check("algebra-morphism", "multiplicative", is_multiplicative(f),
              "f(xy) != f(x)f(y) on some basis pair");
    if (f.local_unit_morphism) {
        bool ok = true;
        for (const Vec& e : f.source->idempotents) {
            Vec fe = gf::apply(f.map, e);
            if (!(f.target->product(fe, fe) == fe)) ok = false;
        }
        rep.check("algebra-morphism", "idempotents-to-idempotents", ok,
                  "image of a listed idempotent is not idempotent");
    }
    return rep;
}

Matrix Bimodule::left_op(const Vec& b) const {
    Matrix m(dim, dim, mod());
    for (int j = 0; j < dim; ++j) m.set_col(j, act_left(b, basis_vec(dim, j, mod())));
    return m;
}

Matrix Bimodule::right_op(const Vec& a) const {
    Matrix m(dim, dim, mod());
    for (int j = 0; j < dim; ++j) m.set_col(j, act_right(basis_vec(dim, j, mod()), a));
    return m;
}

Vec Bimodule::act_left(const Vec& b, const Vec& m) const {
    return gf::apply(lact, gf::kron(b, m, mod()));
}

Vec Bimodule::act_right(const Vec& m, const Vec& a) const {
    return gf::apply(ract, gf::kron(m, a, mod()));
}

Report Bimodule::validate() const {
    Report rep;
    const u32 p = mod();
    const int db = left_alg->dim, da = right_alg->dim;
    Matrix idm = Matrix::identity(dim, p);
    Matrix idb = Matrix::identity(db, p);
    Matrix ida = Matrix::identity(da, p);
    rep.check("bimodule", "left-associative",
              gf::mul(lact, gf::kron(left_alg->mult, idm)) == gf::mul(lact, gf::kron(idb, lact)),
              "(bb')m != b(b'm)");
    rep.check("bimodule", "right-associative",
              gf::mul(ract, gf::kron(ract, ida)) == gf::mul(ract, gf::kron(idm, right_alg->mult)),
              "(ma)a' != m(aa')");
    rep.check("bimodule", "actions-commute",
              gf::mul(ract, gf::kron(lact, ida)) == gf::mul(lact, gf::kron(idb, ract)),
              "(bm)a != b(ma)");
    return rep;
}

Bimodule regular_bimodule(const AlgebraPtr& a) {
    Bimodule m;
    m.left_alg = a;
    m.right_alg = a;
    m.dim = a->dim;
    m.lact = a->mult;
    m.ract = a->mult;
    return m;
}

Bimodule zero_bimodule(const AlgebraPtr& b, const AlgebraPtr& a) {
    Bimodule m;
    m.left_alg = b;
    m.right_alg = a;
    m.dim = 0;
    m.lact = Matrix(0, 0, b->p);
    m.ract = Matrix(0, 0, b->p);
    return m;
}

Bimodule right_module(const AlgebraPtr& a, int dim, Matrix ract) {
    Bimodule m;
    m.left_alg = trivial_algebra(a->p);
    m.right_alg = a;
    m.dim = dim;
    m.lact = Matrix::identity(dim, a->p);  // scalar action of k
    m.ract = std::move(ract);
    return m;
}

Bimodule left_module(const AlgebraPtr& b, int dim, Matrix lact) {
    Bimodule m;
    m.left_alg = b;
    m.right_alg = trivial_algebra(b->p);
    m.dim = dim;
    m.lact = std::move(lact);
    m.ract = Matrix::identity(dim, b->p);
    return m;
}

bool is_left_linear(const Bimodule& src, const Bimodule& tgt, const Matrix& f) {
    // f o lact_src == lact_tgt o (id_B (x) f)
    Matrix idb = Matrix::identity(src.left_alg->dim, src.mod());
    return gf::mul(f, src.lact) == gf::mul(tgt.lact, gf::kron(idb, f));
}

bool is_right_linear(const Bimodule& src, const Bimodule& tgt, const Matrix& f) {
    Matrix ida = Matrix::identity(src.right_alg->dim, src.mod());
    return gf::mul(f, src.ract) == gf::mul(tgt.ract, gf::kron(f, ida));
}

bool is_bimodule_map(const Bimodule& src, const Bimodule& tgt, const Matrix& f) {
    return is_left_linear(src, tgt, f) && is_right_linear(src, tgt, f);
}

Matrix slot_matrix(const std::vector<int>& dims, int slot, const Matrix& op, u32 p) {
    int pre = 1, post = 1;
    for (int t = 0; t < slot; ++t) pre *= dims[t];
    for (int t = slot + 1; t < static_cast<int>(dims.size()); ++t) post *= dims[t];
    return gf::kron(gf::kron(Matrix::identity(pre, p), op), Matrix::identity(post, p));
}

namespace {

// Pairwise balancing operator for e_m at junction t, embedded in the full
// tensor space: x (x) y -> (x.m) (x) y - x (x) (m.y).
Matrix junction_operator(const std::vector<const Bimodule*>& factors,
                         const std::vector<int>& dims, int t, const Vec& mid, u32 p) {
    const Bimodule& l = *factors[t];
    const Bimodule& r = *factors[t + 1];
    Matrix op = gf::sub(gf::kron(l.right_op(mid), Matrix::identity(r.dim, p)),
                        gf::kron(Matrix::identity(l.dim, p), r.left_op(mid)));
    // treat slots t, t+1 as one fused slot
    std::vector<int> fused;
    for (int s = 0; s < static_cast<int>(dims.size()); ++s) {
        if (s == t) {
            fused.push_back(dims[t] * dims[t + 1]);
        } else if (s == t + 1) {
            continue;
        } else {
            fused.push_back(dims[s]);
        }
    }
    return slot_matrix(fused, t, op, p);
}

}  // namespace

BalancedTensor balanced_tensor(const std::vector<const Bimodule*>& factors) {
    if (factors.empty()) throw Error(ErrorCode::Internal, "empty tensor product");
    const u32 p = factors[0]->mod();
    std::vector<int> dims;
    long total = 1;
    for (size_t t = 0; t < factors.size(); ++t) {
        dims.push_back(factors[t]->dim);
        total *= factors[t]->dim;
        if (t + 1 < factors.size() && factors[t]->right_alg.get() != factors[t + 1]->left_alg.get())
            throw Error(ErrorCode::Internal, "tensor factors over mismatched algebras");
    }
    const int n = static_cast<int>(total);

    std::vector<Vec> gens;
    for (size_t t = 0; t + 1 < factors.size(); ++t) {
        const AlgebraPtr& mid = factors[t]->right_alg;
        for (int m = 0; m < mid->dim; ++m) {
            Matrix op = junction_operator(factors, dims, static_cast<int>(t),
                                          basis_vec(mid->dim, m, p), p);
            for (int j = 0; j < n; ++j) {
                Vec c = op.col(j);
                if (!gf::is_zero(c)) gens.push_back(std::move(c));
            }
        }
    }
    Subspace rel = Subspace::from_vectors(gens, n, p);
    gf::Quotient q = quotient_space(n, rel);

    BalancedTensor bt;
    bt.factor_dims = dims;
    bt.relations = rel;
    bt.proj = q.projection;
    bt.sect = q.section;

    Bimodule& sp = bt.space;
    sp.left_alg = factors.front()->left_alg;
    sp.right_alg = factors.back()->right_alg;
    sp.dim = q.dim;
    const int db = sp.left_alg->dim, da = sp.right_alg->dim;
    sp.lact = Matrix(q.dim, db * q.dim, p);
    sp.ract = Matrix(q.dim, q.dim * da, p);
    for (int b = 0; b < db; ++b) {
        Matrix opb = slot_matrix(dims, 0, factors.front()->left_op(basis_vec(db, b, p)), p);
        Matrix col = gf::mul(bt.proj, gf::mul(opb, bt.sect));
        for (int u = 0; u < q.dim; ++u)
            for (int i = 0; i < q.dim; ++i) sp.lact.at(i, b * q.dim + u) = col.at(i, u);
    }
    for (int a = 0; a < da; ++a) {
        Matrix opa = slot_matrix(dims, static_cast<int>(dims.size()) - 1,
                                 factors.back()->right_op(basis_vec(da, a, p)), p);
        Matrix col = gf::mul(bt.proj, gf::mul(opa, bt.sect));
        for (int u = 0; u < q.dim; ++u)
            for (int i = 0; i < q.dim; ++i) sp.ract.at(i, u * da + a) = col.at(i, u);
    }
    return bt;
}

BalancedTensor tensor_over(const Bimodule& m, const Bimodule& n) {
    return balanced_tensor({&m, &n});
}

bool descends(const Matrix& f, const Subspace& rel_src, const Subspace& rel_tgt) {
    for (int i = 0; i < rel_src.dim(); ++i)
        if (!rel_tgt.contains(gf::apply(f, rel_src.basis().row(i)))) return false;
    return true;
}

Matrix induced_map(const BalancedTensor& src, const BalancedTensor& tgt, const Matrix& f) {
    return gf::mul(tgt.proj, gf::mul(f, src.sect));
}

DualModule dual_module(const Bimodule& p) {
    const AlgebraPtr& a = p.right_alg;
    if (!a->unit) throw Error(ErrorCode::PreconditionFailure, "dual_module needs unital right algebra");
    const u32 mod = p.mod();
    const int da = a->dim, dp = p.dim;
    // unknown F : da x dp with F o R_P(e) = R_A(e) o F for all basis e of A
    const int nunk = da * dp;
    std::vector<Vec> rows;
    for (int e = 0; e < da; ++e) {
        Matrix rp = p.right_op(basis_vec(da, e, mod));
        Matrix ra = a->right_mul(basis_vec(da, e, mod));
        // constraint per (i<da, j<dp): sum_k F[i,k] rp[k,j] - sum_k ra[i,k] F[k,j] = 0
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < dp; ++j) {
                Vec row(nunk, 0);
                for (int k = 0; k < dp; ++k)
                    row[i * dp + k] = add_mod(row[i * dp + k], rp.at(k, j), mod);
                for (int k = 0; k < da; ++k)
                    row[k * dp + j] = sub_mod(row[k * dp + j], ra.at(i, k), mod);
                rows.push_back(std::move(row));
            }
    }
    Subspace sol = kernel_basis(Matrix::from_rows(rows, nunk, mod));

    DualModule dm;
    const int dd = sol.dim();
    for (int v = 0; v < dd; ++v) {
        Matrix f(da, dp, mod);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < dp; ++j) f.at(i, j) = sol.basis().at(v, i * dp + j);
        dm.functionals.push_back(std::move(f));
    }
    auto flatten = [&](const Matrix& f) {
        Vec v(nunk, 0);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < dp; ++j) v[i * dp + j] = f.at(i, j);
        return v;
    };
    Bimodule& sp = dm.space;
    sp.left_alg = a;
    sp.right_alg = p.left_alg;
    sp.dim = dd;
    const int db = p.left_alg->dim;
    sp.lact = Matrix(dd, da * dd, mod);
    sp.ract = Matrix(dd, dd * db, mod);
    for (int e = 0; e < da; ++e) {
        Matrix la = a->left_mul(basis_vec(da, e, mod));
        for (int v = 0; v < dd; ++v) {
            auto coord = sol.coordinates(flatten(gf::mul(la, dm.functionals[v])));
            if (!coord) throw Error(ErrorCode::Internal, "dual left action leaves solution space");
            for (int u = 0; u < dd; ++u) sp.lact.at(u, e * dd + v) = (*coord)[u];
        }
    }
    for (int e = 0; e < db; ++e) {
        Matrix lb = p.left_op(basis_vec(db, e, mod));
        for (int v = 0; v < dd; ++v) {
            auto coord = sol.coordinates(flatten(gf::mul(dm.functionals[v], lb)));
            if (!coord) throw Error(ErrorCode::Internal, "dual right action leaves solution space");
            for (int u = 0; u < dd; ++u) sp.ract.at(u, v * db + e) = (*coord)[u];
        }
    }
    dm.eval = Matrix(da, dd * dp, mod);
    for (int v = 0; v < dd; ++v)
        for (int j = 0; j < dp; ++j)
            for (int i = 0; i < da; ++i) dm.eval.at(i, v * dp + j) = dm.functionals[v].at(i, j);
    return dm;
}

std::optional<Vec> functional_coords(const DualModule& d, const Matrix& f) {
    const int da = f.rows(), dp = f.cols();
    Matrix cols(da * dp, static_cast<int>(d.functionals.size()), f.mod());
    for (size_t v = 0; v < d.functionals.size(); ++v)
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < dp; ++j)
                cols.at(i * dp + j, static_cast<int>(v)) = d.functionals[v].at(i, j);
    Vec target(static_cast<size_t>(da) * dp);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < dp; ++j) target[static_cast<size_t>(i) * dp + j] = f.at(i, j);
    return gf::solve(cols, target);
}

Matrix dual_transition(const DualModule& from, const DualModule& to, const Matrix& precompose) {
    const int df = static_cast<int>(from.functionals.size());
    const int dt = static_cast<int>(to.functionals.size());
    const u32 p = precompose.mod();
    Matrix m(dt, df, p);
    for (int v = 0; v < df; ++v) {
        auto c = functional_coords(to, gf::mul(from.functionals[v], precompose));
        if (!c)
            throw Error(ErrorCode::Internal, "precomposed functional escapes the target dual");
        m.set_col(v, *c);
    }
    return m;
}

bool is_firm(const Bimodule& m, Side side) {
    const AlgebraPtr& acting = side == Side::Right ? m.right_alg : m.left_alg;
    if (!acting->unit && acting->idempotents.empty())
        throw Error(ErrorCode::PreconditionFailure,
                    "is_firm needs a unit or local units on the acting side");
    Bimodule reg = regular_bimodule(acting);
    if (side == Side::Right) {
        BalancedTensor t = tensor_over(m, reg);
        Matrix canonical = gf::mul(m.ract, t.sect);
        return gf::is_isomorphism(canonical);
    }
    BalancedTensor t = tensor_over(reg, m);
    Matrix canonical = gf::mul(m.lact, t.sect);
    return gf::is_isomorphism(canonical);
}

bool verify_local_units(const FiniteAlgebra& alg,
                        const std::vector<std::vector<Vec>>& sample_subsets) {
    if (alg.idempotents.empty()) throw Error(ErrorCode::EmptyFamily, "no idempotents listed");
    if (alg.family_orthogonal) {
        for (size_t i = 0; i < alg.idempotents.size(); ++i)
            for (size_t j = 0; j < alg.idempotents.size(); ++j) {
                if (i == j) continue;
                if (!gf::is_zero(alg.product(alg.idempotents[i], alg.idempotents[j]))) return false;
            }
    }
    for (const auto& subset : sample_subsets) {
        bool absorbed = false;
        for (const Vec& e : alg.idempotents) {
            bool ok = true;
            for (const Vec& b : subset) {
                if (!(alg.product(e, b) == b) || !(alg.product(b, e) == b)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                absorbed = true;
                break;
            }
        }
        if (!absorbed) return false;
    }
    return true;
}

std::vector<std::vector<bool>> idempotent_order(const FiniteAlgebra& alg) {
    const size_t n = alg.idempotents.size();
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Vec& ei = alg.idempotents[i];
            const Vec& ej = alg.idempotents[j];
            le[i][j] = alg.product(ei, ej) == ei && alg.product(ej, ei) == ei;
        }
    return le;
}

bool idempotent_order_directed(const FiniteAlgebra& alg) {
    auto le = idempotent_order(alg);
    const size_t n = alg.idempotents.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            bool found = false;
            for (size_t k = 0; k < n && !found; ++k) found = le[i][k] && le[j][k];
            if (!found) return false;
        }
    return true;
}

MatrixRingResult matrix_ring(const Bimodule& p, const Bimodule& pdag, const BalancedTensor& pdag_p,
                             const Matrix& eps) {
    const u32 mod = p.mod();
    Bimodule reg_a = regular_bimodule(p.right_alg);
    if (!is_bimodule_map(pdag_p.space, reg_a, eps))
        throw Error(ErrorCode::NotAssociative, "eps is not an (A,A)-bimodule map");

    MatrixRingResult res;
    res.space = tensor_over(p, pdag);
    const int dp = p.dim, dq = pdag.dim;
    // eps lifted to the plain tensor Pdag (x) P
    Matrix eps_k = gf::mul(eps, pdag_p.proj);
    // mid : Pdag (x) P (x) Pdag -> Pdag ,  phi (x) y (x) psi -> eps(phi (x) y) . psi
    Matrix mid = gf::mul(pdag.lact, gf::kron(eps_k, Matrix::identity(dq, mod)));
    Matrix m_k = gf::kron(Matrix::identity(dp, mod), mid);
    Matrix mult = gf::mul(res.space.proj, gf::mul(m_k, gf::kron(res.space.sect, res.space.sect)));

    FiniteAlgebra& s = res.ring;
    s.p = mod;
    s.dim = res.space.space.dim;
    s.mult = std::move(mult);
    s.name = "S";
    Report rep = s.validate();
    if (!rep.pass())
        throw Error(ErrorCode::NotAssociative, "matrix ring multiplication not associative");
    return res;
}

AlgebraPtr matrix_algebra(int n, u32 p, const std::string& name) {
    FiniteAlgebra a;
    a.p = p;
    a.dim = n * n;
    a.mult = Matrix(a.dim, a.dim * a.dim, p);
    // E_{uv} E_{wx} = [v==w] E_{ux}
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                for (int x = 0; x < n; ++x) {
                    if (v != w) continue;
                    const int i = u * n + v, j = w * n + x, k = u * n + x;
                    a.mult.at(k, i * a.dim + j) = 1 % p;
                }
    Vec unit(a.dim, 0);
    for (int u = 0; u < n; ++u) unit[u * n + u] = 1 % p;
    a.unit = unit;
    a.idempotents = {unit};
    a.name = name.empty() ? "M" + std::to_string(n) : name;
    return make_algebra(std::move(a));
}

AlgebraPtr product_algebra(const std::vector<AlgebraPtr>& factors, const std::string& name) {
    if (factors.empty()) throw Error(ErrorCode::Internal, "empty product algebra");
    const u32 p = factors[0]->p;
    int dim = 0;
    std::vector<int> offset;
    for (const auto& f : factors) {
        offset.push_back(dim);
        dim += f->dim;
    }
    FiniteAlgebra a;
    a.p = p;
    a.dim = dim;
    a.mult = Matrix(dim, dim * dim, p);
    for (size_t t = 0; t < factors.size(); ++t) {
        const FiniteAlgebra& f = *factors[t];
        const int o = offset[t];
        for (int i = 0; i < f.dim; ++i)
            for (int j = 0; j < f.dim; ++j)
                for (int k = 0; k < f.dim; ++k) {
                    const u32 c = f.mult.at(k, i * f.dim + j);
                    if (c) a.mult.at(o + k, (o + i) * dim + (o + j)) = c;
                }
    }
    Vec unit(dim, 0);
    bool all_unital = true;
    for (size_t t = 0; t < factors.size(); ++t) {
        if (!factors[t]->unit) {
            all_unital = false;
            continue;
        }
        for (int i = 0; i < factors[t]->dim; ++i) unit[offset[t] + i] = (*factors[t]->unit)[i];
    }
    if (all_unital) {
        a.unit = unit;
        for (size_t t = 0; t < factors.size(); ++t) {
            Vec e(dim, 0);
            for (int i = 0; i < factors[t]->dim; ++i) e[offset[t] + i] = (*factors[t]->unit)[i];
            a.idempotents.push_back(std::move(e));
        }
        a.idempotents.push_back(unit);
    }
    a.name = name.empty() ? "product" : name;
    return make_algebra(std::move(a));
}

AlgebraPtr dual_numbers(u32 p) {
    FiniteAlgebra a;
    a.p = p;
    a.dim = 2;
    a.mult = Matrix(2, 4, p);
    // 1*1 = 1, 1*x = x*1 = x, x*x = 0
    a.mult.at(0, 0) = 1 % p;
    a.mult.at(1, 1) = 1 % p;
    a.mult.at(1, 2) = 1 % p;
    a.unit = Vec{1 % p, 0};
    a.idempotents = {Vec{1 % p, 0}};
    a.name = "k[x]/(x^2)";
    return make_algebra(std::move(a));
}

Bimodule column_module(const AlgebraPtr& mn, int n) {
    const u32 p = mn->p;
    Bimodule m;
    m.left_alg = mn;
    m.right_alg = trivial_algebra(p);
    m.dim = n;
    m.lact = Matrix(n, mn->dim * n, p);
    // E_{uv} . e_w = [v==w] e_u
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) m.lact.at(u, (u * n + v) * n + v) = 1 % p;
    m.ract = Matrix::identity(n, p);
    return m;
}

Bimodule row_module(const AlgebraPtr& mn, int n) {
    const u32 p = mn->p;
    Bimodule m;
    m.left_alg = trivial_algebra(p);
    m.right_alg = mn;
    m.dim = n;
    m.lact = Matrix::identity(n, p);
    m.ract = Matrix(n, n * mn->dim, p);
    // e_w . E_{uv} = [w==u] e_v
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) m.ract.at(v, u * mn->dim + (u * n + v)) = 1 % p;
    return m;
}

}  // namespace coringlab
