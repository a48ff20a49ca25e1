#pragma once

#include "coringlab/coring.hpp"

namespace coringlab {

/// Finite dual basis {(z_u, z_u^*)} of a module that is finitely generated
/// projective on the A side: p = sum z_u z_u^*(p) for all p.
struct DualBasis {
    std::vector<Vec> z;          // elements of P
    std::vector<Matrix> zstar;   // A-linear functionals, each dimA x dimP
};

/// Solves the dual-basis equation; throws NotFGProjective when unsolvable.
DualBasis dual_basis(const Bimodule& p);

/// Both dual-basis identities, verified exhaustively.
Report check_dual_basis(const Bimodule& p, const DualBasis& e);

/// A split direct system of unital rings B_i together with a compatible split
/// system of (B_i, A)-bimodules P_i carrying finite dual bases: the data that
/// presents a firm (B, A)-bimodule over the ring with local units B.
struct FirmBimoduleSystem {
    AlgebraPtr base;            // A, unital
    SplitAlgebraSystem rings;   // B_i, transitions beta, retractions gamma
    SplitModuleSystem modules;  // P_i, transitions sigma, retractions tau
    std::vector<DualBasis> duals;

    int levels() const { return rings.poset.n; }
};

/// Colimits of both systems, the colimit ring with its induced idempotent
/// family, and the top module re-read as a (B, A)-bimodule.
struct SystemColimits {
    Colimit rings;
    Colimit modules;
    std::map<int, Matrix> ring_retr;  // gamma_i : B -> B_i
    std::map<int, Matrix> mod_retr;   // tau_i : P -> P_i
    AlgebraPtr B;
    Bimodule P;
};

SystemColimits system_colimits(const FirmBimoduleSystem& sys);

/// The full identity battery: (4.2.1), (4.2.3)-(4.2.9), (4.7.1), (4.11.1),
/// reported per identity and per index pair.
Report check_compat(const FirmBimoduleSystem& sys);

/// P-dagger as a concrete subspace of P^*: functionals factoring through some
/// tau_i. Prop 4.5 (colim P^* = P-dagger) is verified, not assumed.
struct PDagger {
    std::vector<DualModule> level_duals;  // P_i^*
    DualModule pstar;                     // P^* as an (A, B)-bimodule
    Subspace dag;                         // subspace of P^* coordinates
    Bimodule carrier;                     // (A, B) structure on dag coordinates
    Matrix incl;                          // pstar.space.dim x carrier.dim
    std::map<int, Matrix> inj;            // tau_i^* : P_i^* -> carrier
    Report checks;
};

PDagger build_pdagger(const FirmBimoduleSystem& sys, const SystemColimits& sc);

/// The Z-coalgebra G(i) = P_i^* (x)_{B_i} P_i of Props 4.6/4.8.
struct GData {
    ZCoalgebra g;
    std::vector<BalancedTensor> carriers;
    Report checks;
};

GData build_G(const FirmBimoduleSystem& sys, const SystemColimits& sc, const PDagger& pd);

/// The comatrix coring on P-dagger (x)_B P with its cocone g_i, plus the
/// mediating isomorphism from colim G (the Props 4.9/2.1 cross-check).
struct ComatrixCoringResult {
    Coring coring;
    BalancedTensor carrier;        // P-dagger (x)_B P
    std::map<int, Matrix> cocone;  // g_i : G(i) -> carrier coordinates
    Matrix mediating;              // colim G -> coring carrier
    Report checks;
};

ComatrixCoringResult build_comatrix_coring(const FirmBimoduleSystem& sys,
                                           const SystemColimits& sc, const PDagger& pd,
                                           const GData& gd);

/// eta : B -> S = P (x)_A P-dagger per Eq (4.11.2), with the choice of
/// presenting index verified immaterial (IndexDependence otherwise).
struct EtaResult {
    MatrixRingResult S;        // ring on P (x)_A P-dagger, family = eta(1_{B_i})
    Matrix eta;                // S.ring.dim x B.dim
    std::vector<Vec> s_units;  // images of the local units of B
    Report checks;
};

EtaResult build_eta(const FirmBimoduleSystem& sys, const SystemColimits& sc, const PDagger& pd,
                    const ComatrixCoringResult& cc);

/// The sextuple (B, A, P, P-dagger, eta, eps) with both absorption laws of
/// Eq (1.1.1) verified exhaustively (LawFailure names the offending pair).
struct ComatrixContext {
    AlgebraPtr B;
    AlgebraPtr A;
    Bimodule P;       // (B, A)
    Bimodule Pdag;    // (A, B)
    BalancedTensor pdag_p;  // P-dagger (x)_B P, carrier of the coring
    Matrix eps;       // A.dim x pdag_p.space.dim
    Matrix eta;       // into S coordinates
    MatrixRingResult S;
    Report checks;
};

ComatrixContext build_context(const FirmBimoduleSystem& sys, const SystemColimits& sc,
                              const PDagger& pd, const ComatrixCoringResult& cc,
                              const EtaResult& et);

/// Prop 5.4: retractions h_ij for G when the local units are central in B.
SplitModuleSystem split_G(const FirmBimoduleSystem& sys, const SystemColimits& sc,
                          const PDagger& pd, const GData& gd);

/// Right coaction on P and left coaction on P-dagger over the comatrix coring.
struct ComoduleStructures {
    ComoduleR right_on_p;
    ComoduleL left_on_pdag;
    Report checks;
};

ComoduleStructures comodule_structures(const ComatrixContext& ctx, const CoringPtr& d);

/// One-stop build of the whole tower; the workhorse behind the CLI and tests.
struct ComatrixBundle {
    FirmBimoduleSystem sys;
    SystemColimits sc;
    PDagger pd;
    GData gd;
    ComatrixCoringResult coring;
    EtaResult eta;
    ComatrixContext ctx;
};

ComatrixBundle build_bundle(const FirmBimoduleSystem& sys);

}  // namespace coringlab
