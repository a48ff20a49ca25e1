#include "coringlab/instances.hpp"

#include <map>
#include <mutex>

namespace coringlab::inst {

namespace {

void check_budget(const FirmBimoduleSystem& sys, int cap) {
    const int top = sys.rings.poset.n - 1;
    const int total = sys.rings.obj[top]->dim + sys.modules.obj[top].dim;
    if (total > cap)
        throw Error(ErrorCode::BudgetExceeded,
                    "colimit carriers need " + std::to_string(total) + " dims, cap is " +
                        std::to_string(cap));
}

void attach_duals(FirmBimoduleSystem& sys) {
    for (const Bimodule& m : sys.modules.obj) sys.duals.push_back(dual_basis(m));
}

// corner embedding M_m(F_p) -> M_n(F_p), zero-padded
Matrix corner_embedding(int m, int n, u32 p) {
    Matrix f(n * n, m * m, p);
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) f.at(u * n + v, u * m + v) = 1 % p;
    return f;
}

// compression M_n -> M_m by the corner idempotent
Matrix corner_compression(int m, int n, u32 p) {
    Matrix f(m * m, n * n, p);
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) f.at(u * m + v, u * n + v) = 1 % p;
    return f;
}

Matrix pad_columns(int m, int n, u32 p) {  // F^m -> F^n
    Matrix f(n, m, p);
    for (int i = 0; i < m; ++i) f.at(i, i) = 1 % p;
    return f;
}

Matrix truncate_columns(int m, int n, u32 p) {  // F^n -> F^m
    Matrix f(m, n, p);
    for (int i = 0; i < m; ++i) f.at(i, i) = 1 % p;
    return f;
}

}  // namespace

Instance sweedler(u32 p, int cap) {
    gf::require_prime(p);
    Instance in;
    in.name = "sweedler";
    in.p = p;
    in.target = GaloisTarget::Sweedler;
    AlgebraPtr a = dual_numbers(p);
    AlgebraPtr b = trivial_algebra(p);
    in.sys.base = a;
    in.sys.rings.poset = DirectedPoset::single();
    in.sys.rings.obj = {b};
    in.sys.modules.poset = in.sys.rings.poset;
    Bimodule pa = regular_bimodule(a);
    pa.left_alg = b;
    pa.lact = Matrix::identity(a->dim, p);
    in.sys.modules.obj = {pa};
    attach_duals(in.sys);
    check_budget(in.sys, cap);
    return in;
}

Instance corner(int k, u32 p, int cap) {
    gf::require_prime(p);
    if (k < 1) throw Error(ErrorCode::ParseError, "corner needs k >= 1");
    Instance in;
    in.name = "corner " + std::to_string(k);
    in.p = p;
    in.target = GaloisTarget::Trivial;
    in.sys.base = trivial_algebra(p);
    in.sys.rings.poset = DirectedPoset::chain(k);
    in.sys.modules.poset = in.sys.rings.poset;
    for (int i = 1; i <= k; ++i) {
        AlgebraPtr mi = matrix_algebra(i, p, "M" + std::to_string(i));
        in.sys.rings.obj.push_back(mi);
        in.sys.modules.obj.push_back(column_module(mi, i));
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            in.sys.rings.up[{i, j}] = corner_embedding(i + 1, j + 1, p);
            in.sys.rings.down[{i, j}] = corner_compression(i + 1, j + 1, p);
            in.sys.modules.up[{i, j}] = pad_columns(i + 1, j + 1, p);
            in.sys.modules.down[{i, j}] = truncate_columns(i + 1, j + 1, p);
        }
    attach_duals(in.sys);
    check_budget(in.sys, cap);
    return in;
}

Instance lazy_corner(int bound, u32 p, int cap) {
    static std::mutex mu;
    static std::map<std::pair<u32, int>, Instance> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, bound});
        if (it != cache.end()) return it->second;
    }
    Instance in = corner(bound, p, cap);
    in.name = "lazy-corner " + std::to_string(bound);
    in.target = GaloisTarget::Trivial;
    in.sys.rings.poset.lazy = true;
    in.sys.rings.poset.level_bound = bound;
    in.sys.modules.poset = in.sys.rings.poset;
    std::lock_guard<std::mutex> lock(mu);
    cache[{p, bound}] = in;
    return in;
}

Instance kgt_directsum(const std::vector<int>& parts, u32 p, int cap) {
    gf::require_prime(p);
    if (parts.empty()) throw Error(ErrorCode::ParseError, "kgt-directsum needs parts");
    Instance in;
    in.name = "kgt-directsum";
    in.p = p;
    const int m = static_cast<int>(parts.size());
    in.sys.base = trivial_algebra(p);

    std::vector<AlgebraPtr> factors;
    for (int d : parts) factors.push_back(matrix_algebra(d, p));
    if (m == 1) {
        in.sys.rings.poset = DirectedPoset::single();
        in.sys.modules.poset = in.sys.rings.poset;
        in.sys.rings.obj = {factors[0]};
        in.sys.modules.obj = {column_module(factors[0], parts[0])};
        attach_duals(in.sys);
        check_budget(in.sys, cap);
        return in;
    }

    // poset: the m one-part levels below a single top
    DirectedPoset po;
    po.n = m + 1;
    po.rel.assign(static_cast<size_t>(po.n) * po.n, 0);
    for (int i = 0; i < po.n; ++i) po.set(i, i);
    for (int t = 0; t < m; ++t) po.set(t, m);
    in.sys.rings.poset = po;
    in.sys.modules.poset = po;

    AlgebraPtr btop = product_algebra(factors);
    std::vector<int> offset_b, offset_p;
    int db = 0, dp = 0;
    for (int t = 0; t < m; ++t) {
        offset_b.push_back(db);
        offset_p.push_back(dp);
        db += factors[t]->dim;
        dp += parts[t];
    }
    // top module: direct sum of the column modules, block-diagonal action
    Bimodule ptop;
    ptop.left_alg = btop;
    ptop.right_alg = in.sys.base;
    ptop.dim = dp;
    ptop.lact = Matrix(dp, db * dp, p);
    ptop.ract = Matrix::identity(dp, p);
    for (int t = 0; t < m; ++t) {
        const int n = parts[t];
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                const int bidx = offset_b[t] + u * n + v;
                ptop.lact.at(offset_p[t] + u, bidx * dp + (offset_p[t] + v)) = 1 % p;
            }
    }
    for (int t = 0; t < m; ++t) {
        in.sys.rings.obj.push_back(factors[t]);
        in.sys.modules.obj.push_back(column_module(factors[t], parts[t]));
    }
    in.sys.rings.obj.push_back(btop);
    in.sys.modules.obj.push_back(ptop);
    for (int t = 0; t < m; ++t) {
        const int dt = factors[t]->dim;
        Matrix beta(db, dt, p);
        for (int i = 0; i < dt; ++i) beta.at(offset_b[t] + i, i) = 1 % p;
        Matrix gamma(dt, db, p);
        for (int i = 0; i < dt; ++i) gamma.at(i, offset_b[t] + i) = 1 % p;
        in.sys.rings.up[{t, m}] = beta;
        in.sys.rings.down[{t, m}] = gamma;
        Matrix sigma(dp, parts[t], p);
        for (int i = 0; i < parts[t]; ++i) sigma.at(offset_p[t] + i, i) = 1 % p;
        Matrix tau(parts[t], dp, p);
        for (int i = 0; i < parts[t]; ++i) tau.at(i, offset_p[t] + i) = 1 % p;
        in.sys.modules.up[{t, m}] = sigma;
        in.sys.modules.down[{t, m}] = tau;
    }
    attach_duals(in.sys);
    check_budget(in.sys, cap);
    return in;
}

Instance block(u32 p, int cap) {
    Instance in = kgt_directsum({1, 2}, p, cap);
    in.name = "block";
    return in;
}

Instance block_with_zero_part(u32 p) {
    // same rings as the block instance, but P = F_p + 0
    Instance in = block(p);
    in.name = "block-zero-part";
    const AlgebraPtr& b1 = in.sys.rings.obj[0];
    const AlgebraPtr& b2 = in.sys.rings.obj[1];
    const AlgebraPtr& btop = in.sys.rings.obj[2];
    Bimodule p1 = column_module(b1, 1);
    Bimodule p2 = zero_bimodule(b2, in.sys.base);
    Bimodule ptop;
    ptop.left_alg = btop;
    ptop.right_alg = in.sys.base;
    ptop.dim = 1;
    ptop.lact = Matrix(1, btop->dim, p);
    ptop.lact.at(0, 0) = 1 % p;  // only e_1 = (1,0) acts, identically
    ptop.ract = Matrix::identity(1, p);
    in.sys.modules.obj = {p1, p2, ptop};
    in.sys.modules.up.clear();
    in.sys.modules.down.clear();
    in.sys.modules.up[{0, 2}] = Matrix::identity(1, p);
    in.sys.modules.down[{0, 2}] = Matrix::identity(1, p);
    in.sys.modules.up[{1, 2}] = Matrix(1, 0, p);
    in.sys.modules.down[{1, 2}] = Matrix(0, 1, p);
    in.sys.duals.clear();
    attach_duals(in.sys);
    return in;
}

Instance generate(const std::string& name, const std::vector<int>& params, u32 p, int cap) {
    if (name == "sweedler") return sweedler(p, cap);
    if (name == "block") return block(p, cap);
    if (name == "corner") {
        if (params.size() != 1) throw Error(ErrorCode::ParseError, "corner needs one parameter");
        return corner(params[0], p, cap);
    }
    if (name == "lazy-corner") {
        if (params.size() != 1)
            throw Error(ErrorCode::ParseError, "lazy-corner needs one parameter");
        return lazy_corner(params[0], p, cap);
    }
    if (name == "kgt-directsum") return kgt_directsum(params, p, cap);
    throw Error(ErrorCode::ParseError, "unknown generator: " + name);
}

}  // namespace coringlab::inst
