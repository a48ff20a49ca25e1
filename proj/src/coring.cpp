#include "coringlab/coring.hpp"

namespace coringlab {

Coring trivial_coring(const AlgebraPtr& a) {
    Coring c;
    c.base = a;
    c.carrier = regular_bimodule(a);
    c.square = tensor_over(c.carrier, c.carrier);
    // A = A (x)_A A via multiplication; the comultiplication is its inverse
    Matrix mu = gf::mul(a->mult, c.square.sect);
    auto inv = gf::inverse(mu);
    if (!inv) throw Error(ErrorCode::PreconditionFailure, "base algebra is not firm");
    c.comult = *inv;
    c.counit = Matrix::identity(a->dim, a->p);
    return c;
}

SweedlerData sweedler_data(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (!a->unit) throw Error(ErrorCode::PreconditionFailure, "Sweedler coring needs unital A");
    const u32 p = a->p;
    // A as a (B,A)- and an (A,B)-bimodule via scalar restriction along B -> A.
    // Only B = k is needed by the generators; scalars act componentwise.
    if (b->dim != 1)
        throw Error(ErrorCode::PreconditionFailure, "sweedler_coring implemented for B = k");
    Bimodule left = regular_bimodule(a);   // (A, B): right action scalar
    left.right_alg = b;
    left.ract = Matrix::identity(a->dim, p);
    Bimodule right = regular_bimodule(a);  // (B, A): left action scalar
    right.left_alg = b;
    right.lact = Matrix::identity(a->dim, p);

    SweedlerData sd;
    Coring& c = sd.coring;
    c.base = a;
    sd.aa = tensor_over(left, right);
    const BalancedTensor& aa = sd.aa;
    c.carrier = aa.space;
    c.square = tensor_over(c.carrier, c.carrier);
    // Delta(x (x) y) = (x (x) 1) (x) (1 (x) y), eps(x (x) y) = xy
    const int d = a->dim;
    Matrix delta_k(c.square.space.dim, d * d, p);
    Matrix eps_k(d, d * d, p);
    Vec unit = *a->unit;
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            Vec ex(d, 0), ey(d, 0);
            ex[x] = 1;
            ey[y] = 1;
            Vec x1 = gf::apply(aa.proj, gf::kron(ex, unit, p));
            Vec oney = gf::apply(aa.proj, gf::kron(unit, ey, p));
            delta_k.set_col(x * d + y, gf::apply(c.square.proj, gf::kron(x1, oney, p)));
            eps_k.set_col(x * d + y, a->product(ex, ey));
        }
    c.comult = gf::mul(delta_k, aa.sect);
    c.counit = gf::mul(eps_k, aa.sect);
    return sd;
}

Coring sweedler_coring(const AlgebraPtr& a, const AlgebraPtr& b) {
    return sweedler_data(a, b).coring;
}

Report check_coring(const Coring& c) {
    Report rep;
    const u32 p = c.base->p;
    const Bimodule& C = c.carrier;
    Matrix idc = Matrix::identity(C.dim, p);
    rep.merge(C.validate());
    Bimodule reg_a = regular_bimodule(c.base);
    rep.check("coring", "comult-bimodule-map",
              is_bimodule_map(C, c.square.space, c.comult), "comultiplication not (A,A)-linear");
    rep.check("coring", "counit-bimodule-map", is_bimodule_map(C, reg_a, c.counit),
              "counit not (A,A)-linear");

    BalancedTensor cube = balanced_tensor({&C, &C, &C});
    Matrix lift = c.comult_lift();
    Matrix leg_l = gf::mul(cube.proj, gf::mul(gf::kron(lift, idc), lift));
    Matrix leg_r = gf::mul(cube.proj, gf::mul(gf::kron(idc, lift), lift));
    rep.check("coring", "coassociativity", leg_l == leg_r,
              "(Delta (x) C) o Delta != (C (x) Delta) o Delta");

    Matrix left_counit = gf::mul(C.lact, gf::mul(gf::kron(c.counit, idc), lift));
    Matrix right_counit = gf::mul(C.ract, gf::mul(gf::kron(idc, c.counit), lift));
    rep.check("coring", "counit-left", left_counit.is_identity(), "(eps (x) C) o Delta != id");
    rep.check("coring", "counit-right", right_counit.is_identity(), "(C (x) eps) o Delta != id");
    return rep;
}

Report check_coring_morphism(const Coring& src, const Coring& tgt, const Matrix& f) {
    Report rep;
    rep.check("coring-morphism", "bimodule-map", is_bimodule_map(src.carrier, tgt.carrier, f),
              "map not (A,A)-linear");
    Matrix lhs = gf::mul(tgt.square.proj, gf::mul(gf::kron(f, f), src.comult_lift()));
    Matrix rhs = gf::mul(tgt.comult, f);
    rep.check("coring-morphism", "comult-compat", lhs == rhs,
              "(f (x) f) o Delta_src != Delta_tgt o f");
    rep.check("coring-morphism", "counit-compat", gf::mul(tgt.counit, f) == src.counit,
              "eps_tgt o f != eps_src");
    return rep;
}

bool same_coring(const Coring& x, const Coring& y) {
    return x.base.get() == y.base.get() && x.carrier.dim == y.carrier.dim &&
           x.carrier.lact == y.carrier.lact && x.carrier.ract == y.carrier.ract &&
           x.comult == y.comult && x.counit == y.counit;
}

ComoduleR make_comodule_r(const CoringPtr& c, Bimodule carrier, const Matrix& coact_lifted) {
    ComoduleR m;
    m.coring = c;
    m.carrier = std::move(carrier);
    m.mc = tensor_over(m.carrier, c->carrier);
    m.coact = gf::mul(m.mc.proj, coact_lifted);
    return m;
}

ComoduleL make_comodule_l(const CoringPtr& c, Bimodule carrier, const Matrix& coact_lifted) {
    ComoduleL m;
    m.coring = c;
    m.carrier = std::move(carrier);
    m.cm = tensor_over(c->carrier, m.carrier);
    m.coact = gf::mul(m.cm.proj, coact_lifted);
    return m;
}

ComoduleR trivial_comodule_r(const CoringPtr& trivial, Bimodule carrier) {
    BalancedTensor mc = tensor_over(carrier, trivial->carrier);
    Matrix canonical = gf::mul(carrier.ract, mc.sect);  // M (x)_A A -> M
    auto inv = gf::inverse(canonical);
    if (!inv) throw Error(ErrorCode::PreconditionFailure, "carrier is not firm over A");
    return make_comodule_r(trivial, std::move(carrier), gf::mul(mc.sect, *inv));
}

ComoduleL trivial_comodule_l(const CoringPtr& trivial, Bimodule carrier) {
    BalancedTensor cm = tensor_over(trivial->carrier, carrier);
    Matrix canonical = gf::mul(carrier.lact, cm.sect);
    auto inv = gf::inverse(canonical);
    if (!inv) throw Error(ErrorCode::PreconditionFailure, "carrier is not firm over A");
    return make_comodule_l(trivial, std::move(carrier), gf::mul(cm.sect, *inv));
}

Report check_comodule(const ComoduleR& m) {
    Report rep;
    const Coring& c = *m.coring;
    const u32 p = c.base->p;
    const Bimodule& M = m.carrier;
    Matrix idm = Matrix::identity(M.dim, p);
    rep.check("comodule", "coaction-bimodule-map", is_bimodule_map(M, m.mc.space, m.coact),
              "coaction not a bimodule map");
    BalancedTensor t3 = balanced_tensor({&M, &c.carrier, &c.carrier});
    Matrix rho = m.coact_lift();
    Matrix leg1 = gf::mul(t3.proj, gf::mul(gf::kron(rho, Matrix::identity(c.carrier.dim, p)), rho));
    Matrix leg2 = gf::mul(t3.proj, gf::mul(gf::kron(idm, c.comult_lift()), rho));
    rep.check("comodule", "coassociativity", leg1 == leg2,
              "(rho (x) C) o rho != (M (x) Delta) o rho");
    Matrix counit_law = gf::mul(M.ract, gf::mul(gf::kron(idm, c.counit), rho));
    rep.check("comodule", "counit", counit_law.is_identity(), "(M (x) eps) o rho != id");
    return rep;
}

Report check_comodule(const ComoduleL& m) {
    Report rep;
    const Coring& c = *m.coring;
    const u32 p = c.base->p;
    const Bimodule& M = m.carrier;
    Matrix idm = Matrix::identity(M.dim, p);
    rep.check("comodule", "coaction-bimodule-map", is_bimodule_map(M, m.cm.space, m.coact),
              "coaction not a bimodule map");
    BalancedTensor t3 = balanced_tensor({&c.carrier, &c.carrier, &M});
    Matrix rho = m.coact_lift();
    Matrix leg1 = gf::mul(t3.proj, gf::mul(gf::kron(Matrix::identity(c.carrier.dim, p), rho), rho));
    Matrix leg2 = gf::mul(t3.proj, gf::mul(gf::kron(c.comult_lift(), idm), rho));
    rep.check("comodule", "coassociativity", leg1 == leg2,
              "(C (x) rho) o rho != (Delta (x) M) o rho");
    Matrix counit_law = gf::mul(M.lact, gf::mul(gf::kron(c.counit, idm), rho));
    rep.check("comodule", "counit", counit_law.is_identity(), "(eps (x) M) o rho != id");
    return rep;
}

Report check_zcoalgebra(const ZCoalgebra& g) {
    Report rep;
    rep.merge(check_system(g.system));
    for (size_t i = 0; i < g.levels.size(); ++i) {
        Report r = check_coring(g.levels[i]);
        if (!r.pass())
            rep.fail("zcoalgebra", "level-coring",
                     "level " + std::to_string(i) + " fails the coring axioms");
    }
    for (auto [i, j] : g.system.poset.strict_pairs()) {
        Report r = check_coring_morphism(g.levels[i], g.levels[j], g.system.transition(i, j));
        rep.check("zcoalgebra", "naturality", r.pass(),
                  "transition (" + std::to_string(i) + "," + std::to_string(j) +
                      ") is not a coring morphism");
    }
    return rep;
}

ColimitCoringResult colimit_coring(const ZCoalgebra& g) {
    for (auto [i, j] : g.system.poset.strict_pairs()) {
        Report r = check_coring_morphism(g.levels[i], g.levels[j], g.system.transition(i, j));
        if (!r.pass())
            throw Error(ErrorCode::NotNatural,
                        "transition (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is not a coring morphism");
    }
    ColimitCoringResult res;
    res.col = colimit(g.system);
    res.coring = g.levels[res.col.top];
    // cocone equations pinning Delta_C and eps_C (Prop 2.1's d_Z construction)
    for (int i = 0; i < g.system.poset.n; ++i) {
        const Matrix& ci = res.col.inj.at(i);
        Matrix lhs = gf::mul(res.coring.comult, ci);
        Matrix rhs = gf::mul(res.coring.square.proj,
                             gf::mul(gf::kron(ci, ci), g.levels[i].comult_lift()));
        res.checks.check("coring", "colimit-comult-cocone", lhs == rhs,
                         "Delta_C o c_i != (c_i (x) c_i) o Delta_i at i=" + std::to_string(i));
        res.checks.check("coring", "colimit-counit-cocone",
                         gf::mul(res.coring.counit, ci) == g.levels[i].counit,
                         "eps_C o c_i != eps_i at i=" + std::to_string(i));
    }
    res.checks.merge(check_coring(res.coring));
    return res;
}

ColimitComoduleResult colimit_comodule(const ZCoalgebra& g, const ComoduleSystem& h,
                                       const Coring& colim) {
    for (auto [i, j] : g.system.poset.strict_pairs()) {
        // H(a_ji) is a comodule morphism along the coring morphism G(a_ji):
        // rho_j o H(a) == (H(a) (x) G(a)) o rho_i
        const Matrix& ha = h.system.transition(i, j);
        const Matrix& ga = g.system.transition(i, j);
        Matrix lhs = gf::mul(h.levels[j].coact_lift(), ha);
        Matrix rhs = gf::mul(gf::kron(ha, ga), h.levels[i].coact_lift());
        if (!(gf::mul(h.levels[j].mc.proj, lhs) ==
              gf::mul(h.levels[j].mc.proj, rhs)))
            throw Error(ErrorCode::NotNatural,
                        "comodule transition (" + std::to_string(i) + "," + std::to_string(j) +
                            ") incompatible with the coactions");
    }
    ColimitComoduleResult res;
    res.col = colimit(h.system);
    res.comodule = h.levels[res.col.top];
    for (int i = 0; i < h.system.poset.n; ++i) {
        const Matrix& mi = res.col.inj.at(i);
        const Matrix& ci = g.system.transition(i, res.col.top);
        Matrix lhs = gf::mul(res.comodule.coact, mi);
        Matrix rhs = gf::mul(res.comodule.mc.proj,
                             gf::mul(gf::kron(mi, ci), h.levels[i].coact_lift()));
        res.checks.check("comodule", "colimit-coaction-cocone", lhs == rhs,
                         "rho_M o m_i != r_i at i=" + std::to_string(i));
    }
    res.checks.merge(check_comodule(res.comodule));
    (void)colim;
    return res;
}

CotensorResult cotensor(const ComoduleR& n, const ComoduleL& m) {
    if (!same_coring(*n.coring, *m.coring))
        throw Error(ErrorCode::PreconditionFailure, "cotensor over different corings");
    const Coring& c = *n.coring;
    const u32 p = c.base->p;
    CotensorResult res;
    res.nm = tensor_over(n.carrier, m.carrier);
    BalancedTensor t3 = balanced_tensor({&n.carrier, &c.carrier, &m.carrier});
    Matrix leg_r = gf::mul(t3.proj, gf::mul(gf::kron(n.coact_lift(), Matrix::identity(m.carrier.dim, p)),
                                            res.nm.sect));
    Matrix leg_l = gf::mul(t3.proj, gf::mul(gf::kron(Matrix::identity(n.carrier.dim, p), m.coact_lift()),
                                            res.nm.sect));
    res.space = kernel_basis(gf::sub(leg_r, leg_l));
    res.incl = res.space.inclusion();
    return res;
}

}  // namespace coringlab
