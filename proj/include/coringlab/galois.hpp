#pragma once

#include "coringlab/descent.hpp"

namespace coringlab {

/// Endomorphism data of a split direct system: T_i = End(M_i), or the
/// C-colinear endomorphisms when the system lives in comodules.
struct EndoSystem {
    SplitModuleSystem carrier;
    std::vector<AlgebraPtr> T;
    std::vector<std::vector<Matrix>> endo_basis;  // per level, dimM x dimM matrices
    TransMap rho_up;    // rho_ji(t) = mu_ji o t o nu_ij
    TransMap rho_down;  // t_j -> nu_ij o t_j o mu_ji
    bool comodule_case = false;
    std::vector<ComoduleR> comods;  // comodule case only
    Report checks;
};

/// Plain-module case.
EndoSystem endo_system(const SplitModuleSystem& sys);

/// Comodule case: End^C via the colinearity kernel; transitions must be
/// colinear (NotColinearTransitions).
EndoSystem endo_system(const SplitModuleSystem& sys, const CoringPtr& c,
                       const std::vector<ComoduleR>& comods);

/// The (T_i, A)-bimodule system induced by an endo system, packaged as a firm
/// bimodule system (this is the Sec. 6 route into the Sec. 4 machinery).
FirmBimoduleSystem induced_firm_system(const EndoSystem& es, const AlgebraPtr& base);

/// T-dagger: the subalgebra { t in End(M) : t = e_i t e_i } with local units
/// e_i = mu_i o nu_i, verified to be colim T.
struct TDagger {
    AlgebraPtr endo_of_colimit;       // full End(M) (colinear End in the comodule case)
    std::vector<Matrix> endo_basis;   // basis of End(M) as matrices
    Subspace dag;                     // T-dagger inside End(M) coordinates
    AlgebraPtr algebra;               // T-dagger with family {e_i}
    std::map<int, Matrix> rho;        // rho_i : T_i -> T-dagger coordinates
    std::vector<Vec> units;           // e_i in T-dagger coordinates
    Report checks;
};

TDagger build_tdagger(const EndoSystem& es, const Colimit& col,
                      const std::map<int, Matrix>& nu);

/// Prop 6.3: kappa : P-dagger (x)_{T-dagger} P -> P^* (x)_T P and the proof's
/// lambda are mutually inverse matrices.
Report kappa_check(const ComatrixBundle& bundle, const TDagger& td);

/// Props 6.4/6.5: the extended diagram over I x I, its commutation laws, and
/// its colimit matching P-dagger (x)_{T-dagger} P.
Report extended_diagram(const EndoSystem& es, const ComatrixBundle& bundle);

/// can : M-dagger (x)_{T-dagger} M -> C of Prop 7.3.
struct CanonicalMap {
    ComatrixBundle bundle;  // the Sec. 4 tower over the T-system
    EndoSystem endos;
    Matrix can;
    Report checks;
};

CanonicalMap canonical_map(const CoringPtr& c, const SplitModuleSystem& sys,
                           const std::vector<ComoduleR>& comods);

bool is_galois(const CanonicalMap& cm);

/// Thm 7.4 at desk scale: with can an isomorphism and M faithfully flat over
/// T-dagger, the transported (K, R) units/counits against C are isomorphisms.
Report galois_equivalence_check(const CanonicalMap& cm, const CoringPtr& c,
                                const DescentOptions& opts = {});

/// The built-in self test: the comodule system of a bundle over its own
/// comatrix coring (levels P_i with the restricted coaction).
struct SelfGaloisData {
    CoringPtr coring;
    std::vector<ComoduleR> comods;
    Report checks;
};

SelfGaloisData self_comodule_system(const ComatrixBundle& bundle);

}  // namespace coringlab
