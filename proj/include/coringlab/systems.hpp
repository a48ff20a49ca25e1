#pragma once

#include <map>
#include <utility>

#include "coringlab/algebra.hpp"

namespace coringlab {

/// Finite directed poset. Indices are required to list a linear extension
/// (i <= j implies i <= j as integers); this fixes the deterministic
/// tie-break "smallest upper bound in a fixed total extension".
struct DirectedPoset {
    int n = 0;
    std::vector<char> rel;  // rel[i*n+j] = (i <= j)
    bool lazy = false;      // truncation of an infinite chain
    int level_bound = 0;

    static DirectedPoset chain(int n);
    static DirectedPoset single();

    bool leq(int i, int j) const { return i == j || rel[static_cast<size_t>(i) * n + j]; }
    void set(int i, int j) { rel[static_cast<size_t>(i) * n + j] = 1; }

    Report validate() const;

    /// Smallest-index upper bound of {i, j}; throws NoUpperBound.
    int join(int i, int j) const;
    /// Largest-index upper bound, used to test choice-independence.
    int join_alt(int i, int j) const;
    int maximum() const;

    std::vector<std::pair<int, int>> strict_pairs() const;  // all i <= j with i != j
};

using TransMap = std::map<std::pair<int, int>, Matrix>;

struct AlgebraSystem {
    DirectedPoset poset;
    std::vector<AlgebraPtr> obj;
    TransMap up;  // up[{i,j}] = beta_{ji} : B_i -> B_j for i <= j

    Matrix transition(int i, int j) const;
};

struct SplitAlgebraSystem : AlgebraSystem {
    TransMap down;  // down[{i,j}] = gamma_{ij} : B_j -> B_i

    Matrix retraction(int i, int j) const;
};

enum class MorKind { RightLinear, LeftLinear, BimoduleMap };

struct ModuleSystem {
    DirectedPoset poset;
    std::vector<Bimodule> obj;
    TransMap up;
    // Systems of (B_i, A)-bimodules over varying B_i are split systems in M_A:
    // transitions are then only required to be right-linear.
    MorKind kind = MorKind::RightLinear;

    Matrix transition(int i, int j) const;
};

struct SplitModuleSystem : ModuleSystem {
    TransMap down;

    Matrix retraction(int i, int j) const;
};

Report check_system(const AlgebraSystem& sys);
Report check_system(const SplitAlgebraSystem& sys);
Report check_system(const ModuleSystem& sys);
Report check_system(const SplitModuleSystem& sys);

/// Cocone at the maximum element; injections mu_i are the transitions into it.
struct Colimit {
    int top = -1;
    bool truncated = false;
    std::map<int, Matrix> inj;
};

Colimit colimit(const AlgebraSystem& sys);
Colimit colimit(const ModuleSystem& sys);

/// Unique retractions nu_i of Prop-3.1 type, built as u^i_k = nu_{il} o mu_{lk}
/// with the choice of l verified to be immaterial (IndependenceFailure).
std::map<int, Matrix> retractions(const SplitAlgebraSystem& sys, const Colimit& col);
std::map<int, Matrix> retractions(const SplitModuleSystem& sys, const Colimit& col);

/// The laws (3.1.3)/(3.1.4) for a retraction family.
Report check_retractions(const SplitModuleSystem& sys, const Colimit& col,
                         const std::map<int, Matrix>& nu);
Report check_retractions(const SplitAlgebraSystem& sys, const Colimit& col,
                         const std::map<int, Matrix>& nu);

/// Colimit algebra of a system of unital algebras, with idempotent family the
/// images of the local units 1_{B_i}.
FiniteAlgebra local_units_from_colimit(const AlgebraSystem& sys, const Colimit& col);

/// Independent colimit construction: quotient of the direct sum by the span
/// of inc_j(mu_{ji} x) - inc_i(x), compared against the value at the top.
struct ColimitOracleResult {
    int dim = 0;
    Matrix mediating;  // quotient -> object at top
    bool iso = false;
};

ColimitOracleResult colimit_oracle(const ModuleSystem& sys, const Colimit& col);
ColimitOracleResult colimit_oracle(const AlgebraSystem& sys, const Colimit& col);

}  // namespace coringlab
