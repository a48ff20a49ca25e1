#pragma once

#include "coringlab/systems.hpp"

namespace coringlab {

/// A-coring: coalgebra in (A,A)-bimodules. Composites through the tensor
/// quotient are fixed by the stored projection/section pair, so all axioms
/// are matrix identities.
struct Coring {
    AlgebraPtr base;
    Bimodule carrier;      // (A,A)
    BalancedTensor square;  // C (x)_A C
    Matrix comult;          // square.space.dim x carrier.dim
    Matrix counit;          // base->dim x carrier.dim

    /// Lift of the comultiplication to the plain tensor square.
    Matrix comult_lift() const { return gf::mul(square.sect, comult); }
};

using CoringPtr = std::shared_ptr<const Coring>;

Coring trivial_coring(const AlgebraPtr& a);

/// Sweedler's canonical coring A (x)_B A of the inclusion B -> A, together
/// with the tensor presentation of its carrier.
struct SweedlerData {
    Coring coring;
    BalancedTensor aa;
};

SweedlerData sweedler_data(const AlgebraPtr& a, const AlgebraPtr& b);
Coring sweedler_coring(const AlgebraPtr& a, const AlgebraPtr& b);

Report check_coring(const Coring& c);

Report check_coring_morphism(const Coring& src, const Coring& tgt, const Matrix& f);

bool same_coring(const Coring& x, const Coring& y);

struct ComoduleR {
    CoringPtr coring;
    Bimodule carrier;    // (B, A) with A = coring base
    BalancedTensor mc;   // M (x)_A C
    Matrix coact;        // mc.space.dim x carrier.dim

    Matrix coact_lift() const { return gf::mul(mc.sect, coact); }
};

struct ComoduleL {
    CoringPtr coring;
    Bimodule carrier;    // (A, B)
    BalancedTensor cm;   // C (x)_A M
    Matrix coact;

    Matrix coact_lift() const { return gf::mul(cm.sect, coact); }
};

ComoduleR make_comodule_r(const CoringPtr& c, Bimodule carrier, const Matrix& coact_lifted);
ComoduleL make_comodule_l(const CoringPtr& c, Bimodule carrier, const Matrix& coact_lifted);

/// Canonical comodule over the trivial coring A: the coaction is the inverse
/// of the firmness isomorphism M (x)_A A = M.
ComoduleR trivial_comodule_r(const CoringPtr& trivial, Bimodule carrier);
ComoduleL trivial_comodule_l(const CoringPtr& trivial, Bimodule carrier);

Report check_comodule(const ComoduleR& m);
Report check_comodule(const ComoduleL& m);

/// Z-coalgebra: direct system of (A,A)-bimodules whose levels are corings and
/// whose transitions are coring morphisms.
struct ZCoalgebra {
    ModuleSystem system;         // right_linear_only = false
    std::vector<Coring> levels;
};

Report check_zcoalgebra(const ZCoalgebra& g);

struct ColimitCoringResult {
    Coring coring;
    Colimit col;
    Report checks;
};

/// Prop 2.1 at the top of the system: the colimit carrier with the unique
/// comultiplication/counit determined by the cocone equations, which are
/// verified level by level. Throws NotNatural when a transition fails the
/// coring-morphism laws.
ColimitCoringResult colimit_coring(const ZCoalgebra& g);

struct ComoduleSystem {
    ModuleSystem system;           // carriers H(i), right A-linear transitions
    std::vector<ComoduleR> levels; // H(i) over g.levels[i]
};

struct ColimitComoduleResult {
    ComoduleR comodule;
    Colimit col;
    Report checks;
};

/// Prop 2.2 analogue of colimit_coring.
ColimitComoduleResult colimit_comodule(const ZCoalgebra& g, const ComoduleSystem& h,
                                       const Coring& colim);

struct CotensorResult {
    Subspace space;      // inside N (x)_A M
    Matrix incl;         // nm.space.dim x space.dim
    BalancedTensor nm;
};

/// Equalizer of the two coaction legs N (x)_A M => N (x)_A C (x)_A M.
CotensorResult cotensor(const ComoduleR& n, const ComoduleL& m);

}  // namespace coringlab
