#pragma once

#include <random>

#include "coringlab/comatrix.hpp"

namespace coringlab {

// --- right-module toolkit (modules as (k,B)-bimodules) ----------------------

/// Smallest submodule containing v.
Subspace spin_right(const Bimodule& m, const Vec& v);

Bimodule submodule_right(const Bimodule& m, const Subspace& w);
Bimodule quotient_module_right(const Bimodule& m, const Subspace& w);

/// Exhaustive over all nonzero vectors when p^dim is small (always true at
/// desk scale); falls back to seeded sampling beyond that.
bool is_simple_right(const Bimodule& m);

/// Composition factors of the right regular module, deduplicated up to
/// isomorphism: every simple right B-module appears exactly once.
std::vector<Bimodule> simple_right_modules(const AlgebraPtr& b);

std::vector<Matrix> hom_right_modules(const Bimodule& m, const Bimodule& n);

/// Quotient of the free module B^2 by a random cyclic submodule; unital and
/// nonzero, deterministic in the rng state.
Bimodule random_right_module(const AlgebraPtr& b, std::mt19937_64& rng);

// --- flatness ----------------------------------------------------------------

/// Flatness of P as a left B-module. Unital B: f.g. flat over a
/// finite-dimensional algebra means projective, decided by solving for a
/// B-linear splitting of B^n -> P. Local units without a unit: Prop-5.2 style
/// reduction to the unital corners e_i B e_i.
bool is_flat_left(const Bimodule& p);

/// Faithful flatness: flat plus S (x)_B P != 0 for every simple right module.
bool is_faithfully_flat_left(const Bimodule& p);

/// Trace ideal sum{ f(p) : f in Hom_B(P, B) }; equals B exactly when a f.g.
/// projective P is a generator. Kept as an independent route for tests.
Subspace trace_ideal_left(const Bimodule& p);

// --- adjunctions ---------------------------------------------------------------

struct AdjunctionWitness {
    Report checks;
    std::vector<std::pair<std::string, Matrix>> units;    // eta_N per test object
    std::vector<std::pair<std::string, Matrix>> counits;  // eps_M per test object
    bool all_units_iso = true;
    bool all_counits_iso = true;
};

/// Prop 1.1: (F,G) = (- (x)_B P, - (x)_A Pdag); both triangle identities on
/// every test object.
AdjunctionWitness check_module_adjunction(const ComatrixContext& ctx,
                                          const std::vector<Bimodule>& ns,
                                          const std::vector<Bimodule>& ms);

/// R(M) = M cotensor Pdag, with the right B-module structure on the equalizer.
struct CotensorModule {
    CotensorResult cot;
    Bimodule module;  // (k, B) on cotensor coordinates
};

CotensorModule r_functor(const ComatrixContext& ctx, const ComoduleR& m, const ComoduleL& pdag_l);

/// K(N) = N (x)_B P with the coaction inherited from P.
ComoduleR k_functor(const ComatrixContext& ctx, const CoringPtr& d, const ComoduleR& p_com,
                    const Bimodule& n);

/// Prop 1.2: (K,R) between firm B-modules and D-comodules; eta_N is verified
/// to land inside the cotensor (CotensorMembershipFailure otherwise).
AdjunctionWitness check_comodule_adjunction(const ComatrixContext& ctx, const CoringPtr& d,
                                            const ComoduleStructures& cs,
                                            const std::vector<Bimodule>& ns,
                                            const std::vector<ComoduleR>& ms);

struct DescentOptions {
    std::uint64_t seed = 1;
    bool include_random = true;
};

/// Thm 1.3 at desk scale: when P is faithfully flat every unit and counit on
/// the test sets must be an isomorphism; when P is flat but not faithfully
/// flat the counits must still be isomorphisms and any unit failure is
/// reported with a concrete kernel element.
Report descent_check(const ComatrixContext& ctx, const CoringPtr& d, const ComoduleStructures& cs,
                     const DescentOptions& opts = {});

}  // namespace coringlab
