#include "coringlab/io.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

namespace coringlab::io {

namespace {

void emit_ints(std::ostringstream& os, const char* key, const Vec& v) {
    os << key;
    for (u32 x : v) os << " " << x;
    os << "\n";
}

void emit_matrix(std::ostringstream& os, const char* key, const Matrix& m) {
    os << key;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) os << " " << m.at(i, j);
    os << "\n";
}

void emit_algebra(std::ostringstream& os, const std::string& tag, const FiniteAlgebra& a) {
    os << "algebra " << tag << "\n";
    os << "dim " << a.dim << "\n";
    os << "idem " << a.idempotents.size() << "\n";
    for (const Vec& e : a.idempotents) emit_ints(os, "idemvec", e);
    emit_matrix(os, "mult", a.mult);
    os << "orth " << (a.family_orthogonal ? 1 : 0) << "\n";
    if (a.unit)
        emit_ints(os, "unit", *a.unit);
    else
        os << "unit none\n";
}

const char* galois_name(inst::GaloisTarget t) {
    switch (t) {
        case inst::GaloisTarget::None: return "none";
        case inst::GaloisTarget::Trivial: return "trivial";
        case inst::GaloisTarget::Sweedler: return "sweedler";
    }
    return "none";
}

}  // namespace

std::string serialize(const inst::Instance& in) {
    std::ostringstream os;
    const auto& sys = in.sys;
    const int n = sys.levels();
    os << "coringlab-instance v1\n";
    os << "galois " << galois_name(in.target) << "\n";
    os << "lazy " << (sys.rings.poset.lazy ? 1 : 0) << "\n";
    os << "levelbound " << sys.rings.poset.level_bound << "\n";
    os << "levels " << n << "\n";
    os << "name " << in.name << "\n";
    os << "prime " << in.p << "\n";
    emit_algebra(os, "base", *sys.base);
    for (int i = 0; i < n; ++i) emit_algebra(os, std::to_string(i), *sys.rings.obj[i]);
    for (int i = 0; i < n; ++i) {
        os << "module " << i << "\n";
        os << "dim " << sys.modules.obj[i].dim << "\n";
        emit_matrix(os, "lact", sys.modules.obj[i].lact);
        emit_matrix(os, "ract", sys.modules.obj[i].ract);
    }
    for (auto [i, j] : sys.rings.poset.strict_pairs()) {
        os << "pair " << i << " " << j << "\n";
        emit_matrix(os, "moddown", sys.modules.retraction(i, j));
        emit_matrix(os, "modup", sys.modules.transition(i, j));
        emit_matrix(os, "ringdown", sys.rings.retraction(i, j));
        emit_matrix(os, "ringup", sys.rings.transition(i, j));
    }
    return os.str();
}

namespace {

struct Parser {
    std::vector<std::vector<std::string>> lines;
    size_t pos = 0;

    explicit Parser(const std::string& text) {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            std::istringstream ls(line);
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (!toks.empty()) lines.push_back(std::move(toks));
        }
    }

    bool done() const { return pos >= lines.size(); }
    const std::vector<std::string>& peek() const {
        if (done()) throw Error(ErrorCode::ParseError, "unexpected end of file");
        return lines[pos];
    }
    std::vector<std::string> next() {
        auto l = peek();
        ++pos;
        return l;
    }
    std::vector<std::string> expect(const std::string& key) {
        auto l = next();
        if (l[0] != key)
            throw Error(ErrorCode::ParseError, "expected '" + key + "', found '" + l[0] + "'");
        return l;
    }
};

long to_int(const std::string& s) {
    try {
        return std::stol(s);
    } catch (...) {
        throw Error(ErrorCode::ParseError, "not an integer: " + s);
    }
}

Vec parse_ints(const std::vector<std::string>& toks, size_t from, size_t count, u32 p) {
    if (toks.size() != from + count)
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(count) + " integers");
    Vec v;
    for (size_t i = from; i < toks.size(); ++i)
        v.push_back(static_cast<u32>(((to_int(toks[i]) % p) + p) % p));
    return v;
}

Matrix parse_matrix(const std::vector<std::string>& toks, int rows, int cols, u32 p) {
    Vec flat = parse_ints(toks, 1, static_cast<size_t>(rows) * cols, p);
    Matrix m(rows, cols, p);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = flat[static_cast<size_t>(i) * cols + j];
    return m;
}

FiniteAlgebra parse_algebra(Parser& ps, u32 p) {
    FiniteAlgebra a;
    a.p = p;
    auto dim = ps.expect("dim");
    a.dim = static_cast<int>(to_int(dim.at(1)));
    auto idem = ps.expect("idem");
    const long k = to_int(idem.at(1));
    for (long t = 0; t < k; ++t)
        a.idempotents.push_back(parse_ints(ps.expect("idemvec"), 1, a.dim, p));
    a.mult = parse_matrix(ps.expect("mult"), a.dim, a.dim * a.dim, p);
    a.family_orthogonal = to_int(ps.expect("orth").at(1)) != 0;
    auto unit = ps.expect("unit");
    if (!(unit.size() == 2 && unit[1] == "none")) a.unit = parse_ints(unit, 1, a.dim, p);
    return a;
}

}  // namespace

inst::Instance parse(const std::string& text) {
    Parser ps(text);
    {
        auto magic = ps.next();
        if (magic.size() != 2 || magic[0] != "coringlab-instance" || magic[1] != "v1")
            throw Error(ErrorCode::ParseError, "not a coringlab-instance v1 file");
    }
    inst::Instance in;
    auto galois = ps.expect("galois");
    if (galois.at(1) == "none")
        in.target = inst::GaloisTarget::None;
    else if (galois.at(1) == "trivial")
        in.target = inst::GaloisTarget::Trivial;
    else if (galois.at(1) == "sweedler")
        in.target = inst::GaloisTarget::Sweedler;
    else
        throw Error(ErrorCode::ParseError, "unknown galois target " + galois.at(1));
    const bool lazy = to_int(ps.expect("lazy").at(1)) != 0;
    const int level_bound = static_cast<int>(to_int(ps.expect("levelbound").at(1)));
    const int n = static_cast<int>(to_int(ps.expect("levels").at(1)));
    {
        auto name = ps.expect("name");
        for (size_t t = 1; t < name.size(); ++t) in.name += (t > 1 ? " " : "") + name[t];
    }
    const long prime = to_int(ps.expect("prime").at(1));
    if (prime < 2 || prime > static_cast<long>(gf::kMaxPrime) ||
        !gf::is_prime(static_cast<u32>(prime)))
        throw Error(ErrorCode::ParseError, "prime field characteristic required");
    in.p = static_cast<u32>(prime);
    const u32 p = in.p;

    ps.expect("algebra");  // base
    in.sys.base = make_algebra(parse_algebra(ps, p));
    in.sys.rings.poset = DirectedPoset::chain(n);  // rebuilt from pairs below
    in.sys.rings.poset.rel.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) in.sys.rings.poset.set(i, i);
    in.sys.rings.poset.lazy = lazy;
    in.sys.rings.poset.level_bound = level_bound;
    for (int i = 0; i < n; ++i) {
        auto head = ps.expect("algebra");
        if (to_int(head.at(1)) != i) throw Error(ErrorCode::ParseError, "algebra blocks out of order");
        in.sys.rings.obj.push_back(make_algebra(parse_algebra(ps, p)));
    }
    for (int i = 0; i < n; ++i) {
        auto head = ps.expect("module");
        if (to_int(head.at(1)) != i) throw Error(ErrorCode::ParseError, "module blocks out of order");
        Bimodule m;
        m.left_alg = in.sys.rings.obj[i];
        m.right_alg = in.sys.base;
        m.dim = static_cast<int>(to_int(ps.expect("dim").at(1)));
        m.lact = parse_matrix(ps.expect("lact"), m.dim, in.sys.rings.obj[i]->dim * m.dim, p);
        m.ract = parse_matrix(ps.expect("ract"), m.dim, m.dim * in.sys.base->dim, p);
        in.sys.modules.obj.push_back(std::move(m));
    }
    while (!ps.done()) {
        auto head = ps.expect("pair");
        const int i = static_cast<int>(to_int(head.at(1)));
        const int j = static_cast<int>(to_int(head.at(2)));
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw Error(ErrorCode::ParseError, "bad pair indices");
        in.sys.rings.poset.set(i, j);
        const int di = in.sys.modules.obj[i].dim, dj = in.sys.modules.obj[j].dim;
        const int bi = in.sys.rings.obj[i]->dim, bj = in.sys.rings.obj[j]->dim;
        in.sys.modules.down[{i, j}] = parse_matrix(ps.expect("moddown"), di, dj, p);
        in.sys.modules.up[{i, j}] = parse_matrix(ps.expect("modup"), dj, di, p);
        in.sys.rings.down[{i, j}] = parse_matrix(ps.expect("ringdown"), bi, bj, p);
        in.sys.rings.up[{i, j}] = parse_matrix(ps.expect("ringup"), bj, bi, p);
    }
    in.sys.modules.poset = in.sys.rings.poset;
    Report po = in.sys.rings.poset.validate();
    if (!po.pass()) throw Error(ErrorCode::ParseError, "transition pairs do not form a directed poset");
    for (const Bimodule& m : in.sys.modules.obj) in.sys.duals.push_back(dual_basis(m));
    return in;
}

inst::Instance load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse(os.str());
}

void save_file(const inst::Instance& in, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path);
    f << serialize(in);
}

inst::Instance truncate_levels(const inst::Instance& in, int level) {
    const int n = in.sys.levels();
    if (level == n) return in;
    if (level < 1 || level > n)
        throw Error(ErrorCode::ParseError,
                    "level " + std::to_string(level) + " outside 1.." + std::to_string(n) +
                        " (truncated files cannot be extended)");
    inst::Instance out;
    out.name = in.name;
    out.p = in.p;
    out.target = in.target;
    out.sys.base = in.sys.base;
    DirectedPoset po;
    po.n = level;
    po.rel.assign(static_cast<size_t>(level) * level, 0);
    for (int i = 0; i < level; ++i)
        for (int j = 0; j < level; ++j)
            if (in.sys.rings.poset.leq(i, j)) po.set(i, j);
    po.lazy = in.sys.rings.poset.lazy;
    po.level_bound = level;
    out.sys.rings.poset = po;
    out.sys.modules.poset = po;
    for (int i = 0; i < level; ++i) {
        out.sys.rings.obj.push_back(in.sys.rings.obj[i]);
        out.sys.modules.obj.push_back(in.sys.modules.obj[i]);
        out.sys.duals.push_back(in.sys.duals[i]);
    }
    for (auto [i, j] : po.strict_pairs()) {
        out.sys.rings.up[{i, j}] = in.sys.rings.transition(i, j);
        out.sys.rings.down[{i, j}] = in.sys.rings.retraction(i, j);
        out.sys.modules.up[{i, j}] = in.sys.modules.transition(i, j);
        out.sys.modules.down[{i, j}] = in.sys.modules.retraction(i, j);
    }
    Report po_check = po.validate();
    if (!po_check.pass())
        throw Error(ErrorCode::ParseError, "truncation does not leave a directed poset");
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void suite_systems(const inst::Instance& in, VerificationReport& out) {
    Report rep;
    rep.merge(in.sys.rings.poset.validate());
    rep.merge(check_system(in.sys.rings));
    rep.merge(check_system(in.sys.modules));
    auto rcol = colimit(in.sys.rings);
    auto mcol = colimit(in.sys.modules);
    try {
        auto rnu = retractions(in.sys.rings, rcol);
        rep.merge(check_retractions(in.sys.rings, rcol, rnu));
        auto mnu = retractions(in.sys.modules, mcol);
        rep.merge(check_retractions(in.sys.modules, mcol, mnu));
    } catch (const Error& e) {
        rep.fail("system", "prop-3.1", e.what());
    }
    auto roracle = colimit_oracle(in.sys.rings, rcol);
    rep.check("system", "colimit-oracle-rings", roracle.iso,
              "quotient construction disagrees with the top object");
    auto moracle = colimit_oracle(in.sys.modules, mcol);
    rep.check("system", "colimit-oracle-modules", moracle.iso,
              "quotient construction disagrees with the top object");
    try {
        FiniteAlgebra b = local_units_from_colimit(in.sys.rings, rcol);
        std::vector<std::vector<Vec>> subsets;
        for (int i = 0; i < b.dim; ++i) {
            Vec e(b.dim, 0);
            e[i] = 1 % in.p;
            subsets.push_back({e});
        }
        rep.check("system", "local-units", verify_local_units(b, subsets),
                  "colimit family fails to absorb a basis element");
        rep.check("system", "local-units-directed", idempotent_order_directed(b),
                  "induced idempotent order is not directed");
    } catch (const Error& e) {
        rep.fail("system", "local-units", e.what());
    }
    out.records.merge(rep);
}

void suite_comatrix(const inst::Instance& in, VerificationReport& out) {
    Report rep;
    rep.merge(check_compat(in.sys));
    ComatrixBundle bundle = build_bundle(in.sys);
    rep.merge(bundle.pd.checks);
    rep.merge(bundle.gd.checks);
    rep.merge(bundle.coring.checks);
    rep.merge(bundle.eta.checks);
    rep.merge(bundle.ctx.checks);
    out.dims.push_back({"dim B", bundle.sc.B->dim});
    out.dims.push_back({"dim P", bundle.sc.P.dim});
    out.dims.push_back({"dim P-dagger", bundle.pd.carrier.dim});
    out.dims.push_back({"dim Pdag(x)P coring", bundle.coring.coring.carrier.dim});
    out.dims.push_back({"dim S = P(x)Pdag", bundle.eta.S.ring.dim});
    out.dims.push_back({"rank eta", gf::rank(bundle.eta.eta)});
    // Prop 5.4 splitting applies exactly when the local units are central
    bool central = true;
    for (int i = 0; i < in.sys.levels() && central; ++i) {
        Vec e = gf::apply(bundle.sc.rings.inj.at(i), *in.sys.rings.obj[i]->unit);
        central = bundle.sc.B->left_mul(e) == bundle.sc.B->right_mul(e);
    }
    if (central) {
        try {
            auto split = split_G(in.sys, bundle.sc, bundle.pd, bundle.gd);
            rep.merge(check_system(split));
            rep.check("comatrix", "prop-5.4", true, "");
        } catch (const Error& e) {
            rep.fail("comatrix", "prop-5.4", e.what());
        }
    } else {
        rep.ok("comatrix", "prop-5.4-not-applicable");
    }
    out.records.merge(rep);
}

void suite_coring(const inst::Instance& in, VerificationReport& out) {
    Report rep;
    ComatrixBundle bundle = build_bundle(in.sys);
    rep.merge(check_coring(bundle.coring.coring));
    rep.merge(check_zcoalgebra(bundle.gd.g));
    auto colim = colimit_coring(bundle.gd.g);
    rep.merge(colim.checks);
    rep.check("coring", "colimit-vs-direct",
              gf::is_isomorphism(bundle.coring.mediating),
              "colim G and the direct construction are not isomorphic");
    auto dptr = std::make_shared<const Coring>(bundle.coring.coring);
    auto cs = comodule_structures(bundle.ctx, dptr);
    rep.merge(cs.checks);
    out.records.merge(rep);
}

void suite_adjunction(const inst::Instance& in, VerificationReport& out, std::uint64_t seed) {
    Report rep;
    ComatrixBundle bundle = build_bundle(in.sys);
    std::mt19937_64 rng(seed);
    std::vector<Bimodule> ns = {right_module(bundle.ctx.B, bundle.ctx.B->dim, bundle.ctx.B->mult)};
    for (auto& s : simple_right_modules(bundle.ctx.B)) ns.push_back(s);
    ns.push_back(random_right_module(bundle.ctx.B, rng));
    std::vector<Bimodule> ms = {right_module(bundle.ctx.A, bundle.ctx.A->dim, bundle.ctx.A->mult)};
    ms.push_back(random_right_module(bundle.ctx.A, rng));
    rep.merge(check_module_adjunction(bundle.ctx, ns, ms).checks);

    auto dptr = std::make_shared<const Coring>(bundle.coring.coring);
    auto cs = comodule_structures(bundle.ctx, dptr);
    std::vector<ComoduleR> cms = {make_comodule_r(dptr, dptr->carrier, dptr->comult_lift())};
    cms.push_back(k_functor(bundle.ctx, dptr, cs.right_on_p, ns.back()));
    rep.merge(check_comodule_adjunction(bundle.ctx, dptr, cs, ns, cms).checks);
    out.records.merge(rep);
}

void suite_descent(const inst::Instance& in, VerificationReport& out, std::uint64_t seed) {
    ComatrixBundle bundle = build_bundle(in.sys);
    auto dptr = std::make_shared<const Coring>(bundle.coring.coring);
    auto cs = comodule_structures(bundle.ctx, dptr);
    out.records.merge(descent_check(bundle.ctx, dptr, cs, {seed, true}));
}

void suite_galois(const inst::Instance& in, VerificationReport& out, std::uint64_t seed) {
    Report rep;
    ComatrixBundle bundle = build_bundle(in.sys);
    // kappa and the extended diagram over the plain endomorphism systems
    auto es = endo_system(in.sys.modules);
    auto fbs = induced_firm_system(es, in.sys.base);
    auto ebundle = build_bundle(fbs);
    auto col = colimit(es.carrier);
    auto td = build_tdagger(es, col, retractions(es.carrier, col));
    rep.merge(es.checks);
    rep.merge(td.checks);
    rep.merge(kappa_check(ebundle, td));
    rep.merge(extended_diagram(es, ebundle));

    // self-Galois over the instance's own comatrix coring
    auto sg = self_comodule_system(bundle);
    rep.merge(sg.checks);
    auto cm = canonical_map(sg.coring, bundle.sys.modules, sg.comods);
    rep.merge(cm.checks);
    rep.check("galois", "self-galois", is_galois(cm), "can is not an isomorphism");
    if (is_galois(cm))
        rep.merge(galois_equivalence_check(cm, sg.coring, {seed, true}));

    // cross-check target named by the generator
    if (in.target == inst::GaloisTarget::Trivial) {
        auto c = std::make_shared<const Coring>(trivial_coring(in.sys.base));
        std::vector<ComoduleR> comods;
        for (const Bimodule& m : in.sys.modules.obj) comods.push_back(trivial_comodule_r(c, m));
        auto cm2 = canonical_map(c, in.sys.modules, comods);
        rep.merge(cm2.checks);
        rep.check("galois", "galois-vs-trivial-coring", is_galois(cm2),
                  "can against the trivial coring is not an isomorphism");
        if (is_galois(cm2)) rep.merge(galois_equivalence_check(cm2, c, {seed, true}));
    } else if (in.target == inst::GaloisTarget::Sweedler) {
        auto sd = sweedler_data(in.sys.base, trivial_algebra(in.p));
        auto c = std::make_shared<const Coring>(sd.coring);
        const Bimodule& m = in.sys.modules.obj[0];
        Matrix lift(in.sys.base->dim * c->carrier.dim, in.sys.base->dim, in.p);
        for (int x = 0; x < in.sys.base->dim; ++x) {
            Vec ex(in.sys.base->dim, 0);
            ex[x] = 1;
            Vec cls = gf::apply(sd.aa.proj, gf::kron(*in.sys.base->unit, ex, in.p));
            lift.set_col(x, gf::kron(*in.sys.base->unit, cls, in.p));
        }
        ComoduleR com = make_comodule_r(c, m, lift);
        auto cm2 = canonical_map(c, in.sys.modules, {com});
        rep.merge(cm2.checks);
        rep.check("galois", "galois-vs-sweedler-coring", is_galois(cm2),
                  "can against the Sweedler coring is not an isomorphism");
        if (is_galois(cm2)) rep.merge(galois_equivalence_check(cm2, c, {seed, true}));
    }
    out.records.merge(rep);
}

}  // namespace

VerificationReport verify(const inst::Instance& in, const std::set<std::string>& suites,
                          std::uint64_t seed) {
    VerificationReport out;
    out.seed = seed;
    for (const std::string& s : suites)
        if (!kAllSuites.count(s)) throw Error(ErrorCode::ParseError, "unknown suite: " + s);
    // suites are independent and the library is pure, so they run
    // concurrently; assembly below keeps a fixed order
    using Job = std::pair<const char*, std::function<void(VerificationReport&)>>;
    std::vector<Job> jobs;
    if (suites.count("systems")) jobs.push_back({"systems", [&](auto& o) { suite_systems(in, o); }});
    if (suites.count("comatrix"))
        jobs.push_back({"comatrix", [&](auto& o) { suite_comatrix(in, o); }});
    if (suites.count("coring")) jobs.push_back({"coring", [&](auto& o) { suite_coring(in, o); }});
    if (suites.count("adjunction"))
        jobs.push_back({"adjunction", [&](auto& o) { suite_adjunction(in, o, seed); }});
    if (suites.count("descent"))
        jobs.push_back({"descent", [&](auto& o) { suite_descent(in, o, seed); }});
    if (suites.count("galois"))
        jobs.push_back({"galois", [&](auto& o) { suite_galois(in, o, seed); }});

    std::vector<std::future<std::pair<VerificationReport, double>>> futures;
    for (auto& [name, fn] : jobs) {
        futures.push_back(std::async(std::launch::async, [name = name, fn = fn] {
            VerificationReport part;
            auto t0 = Clock::now();
            try {
                fn(part);
            } catch (const Error& e) {
                part.records.fail(name, "exception", e.what());
            }
            return std::make_pair(std::move(part), ms_since(t0));
        }));
    }
    for (size_t t = 0; t < jobs.size(); ++t) {
        auto [part, ms] = futures[t].get();
        out.records.merge(part.records);
        for (auto& d : part.dims) out.dims.push_back(d);
        out.timings_ms.push_back({jobs[t].first, ms});
    }
    return out;
}

std::string render_text(const VerificationReport& rep) {
    std::ostringstream os;
    int passed = 0, failed = 0;
    for (const auto& r : rep.records.records) (r.pass ? passed : failed)++;
    os << "coringlab verification report (seed " << rep.seed << ")\n";
    os << "identities: " << passed << " passed, " << failed << " failed\n\n";
    for (const auto& r : rep.records.records) {
        os << (r.pass ? "  ok   " : "  FAIL ") << r.suite << " :: " << r.identity;
        if (!r.pass && !r.counterexample.empty()) os << "  [" << r.counterexample << "]";
        os << "\n";
    }
    if (!rep.dims.empty()) {
        os << "\ndimensions:\n";
        for (const auto& [k, v] : rep.dims) os << "  " << k << " = " << v << "\n";
    }
    if (!rep.timings_ms.empty()) {
        os << "\ntimings:\n";
        for (const auto& [k, v] : rep.timings_ms) {
            os << "  " << k << " " << v << " ms\n";
        }
    }
    os << "\nresult: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string render_machine(const VerificationReport& rep) {
    std::ostringstream os;
    for (const auto& r : rep.records.records) {
        nlohmann::json j;
        j["suite"] = r.suite;
        j["identity"] = r.identity;
        j["status"] = r.pass ? "pass" : "fail";
        j["counterexample"] = r.counterexample;
        os << j.dump() << "\n";
    }
    return os.str();
}

}  // namespace coringlab::io
