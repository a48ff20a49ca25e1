#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coringlab/errors.hpp"
#include "coringlab/matrix.hpp"
#include "coringlab/report.hpp"

namespace coringlab {

using gf::Matrix;
using gf::Subspace;
using gf::Vec;
using gf::u32;

/// Finite-dimensional F_p-algebra given by structure constants. The unit is
/// optional metadata: rings with local units stay first-class non-unital.
struct FiniteAlgebra {
    u32 p = 2;
    int dim = 0;
    Matrix mult;  // dim x dim^2; column i*dim+j holds e_i * e_j
    std::optional<Vec> unit;
    std::vector<Vec> idempotents;  // local-unit family, possibly empty
    bool family_orthogonal = false;
    std::string name;

    Vec product(const Vec& a, const Vec& b) const;
    Matrix left_mul(const Vec& a) const;   // x -> a*x
    Matrix right_mul(const Vec& a) const;  // x -> x*a
    bool is_unital_flagged() const { return unit.has_value(); }

    Report validate() const;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

AlgebraPtr make_algebra(FiniteAlgebra a);

/// F_p itself; scalars acting on anything make it a plain module.
AlgebraPtr trivial_algebra(u32 p);

struct AlgebraMorphism {
    AlgebraPtr source;
    AlgebraPtr target;
    Matrix map;
    bool local_unit_morphism = false;
};

bool is_multiplicative(const AlgebraMorphism& f);
Report check_algebra_morphism(const AlgebraMorphism& f);

/// (B,A)-bimodule with explicit action tensors. lact has columns indexed by
/// b*dim+m (value e_b . e_m), ract by m*dimA+a (value e_m . e_a).
struct Bimodule {
    AlgebraPtr left_alg;
    AlgebraPtr right_alg;
    int dim = 0;
    Matrix lact;
    Matrix ract;

    u32 mod() const { return left_alg->p; }
    Matrix left_op(const Vec& b) const;   // dim x dim, m -> b.m
    Matrix right_op(const Vec& a) const;  // dim x dim, m -> m.a
    Vec act_left(const Vec& b, const Vec& m) const;
    Vec act_right(const Vec& m, const Vec& a) const;

    Report validate() const;
};

Bimodule regular_bimodule(const AlgebraPtr& a);
Bimodule zero_bimodule(const AlgebraPtr& b, const AlgebraPtr& a);
/// Plain right A-module as a bimodule with scalar left action.
Bimodule right_module(const AlgebraPtr& a, int dim, Matrix ract);
Bimodule left_module(const AlgebraPtr& b, int dim, Matrix lact);

bool is_left_linear(const Bimodule& src, const Bimodule& tgt, const Matrix& f);
bool is_right_linear(const Bimodule& src, const Bimodule& tgt, const Matrix& f);
bool is_bimodule_map(const Bimodule& src, const Bimodule& tgt, const Matrix& f);

struct BimoduleMap {
    const Bimodule* source = nullptr;
    const Bimodule* target = nullptr;
    Matrix map;
};

/// Embed an operator acting on one tensor slot into the full tensor space.
/// op maps F_p^{dims[slot]} -> F_p^{r}; the result maps the product space
/// accordingly (identity on every other slot).
Matrix slot_matrix(const std::vector<int>& dims, int slot, const Matrix& op, u32 p);

/// Balanced tensor product M_1 (x)_{A_1} M_2 (x)_{A_2} ... M_k realized as the
/// canonical quotient of the full F_p-tensor space by all adjacent balancing
/// relations (x.a (x) y - x (x) a.y), with the induced outer actions.
struct BalancedTensor {
    Bimodule space;
    Matrix proj;  // space.dim x N
    Matrix sect;  // N x space.dim
    std::vector<int> factor_dims;
    Subspace relations;
};

BalancedTensor balanced_tensor(const std::vector<const Bimodule*>& factors);

/// tensor_over(m, n) = m (x)_B n together with the balanced projection.
BalancedTensor tensor_over(const Bimodule& m, const Bimodule& n);

/// True when f maps the source relation span into the target relation span,
/// i.e. descends to the quotients.
bool descends(const Matrix& f, const Subspace& rel_src, const Subspace& rel_tgt);

/// tgt.proj * f * src.sect. Callers verify `descends` first when the map is
/// not well-defined by construction.
Matrix induced_map(const BalancedTensor& src, const BalancedTensor& tgt, const Matrix& f);

/// Right dual Hom_A(P, A) of a (B,A)-bimodule, materialized with an explicit
/// basis of functionals solved from the A-linearity constraints. Carries the
/// (A,B)-bimodule structure (a.phi.b)(x) = a phi(b x).
struct DualModule {
    Bimodule space;
    std::vector<Matrix> functionals;  // basis, each dimA x dimP
    Matrix eval;                      // dimA x (dual_dim * dimP)
};

DualModule dual_module(const Bimodule& p);

/// Coordinates of an A-linear functional (dimA x dimP matrix) in the basis of
/// the materialized dual; empty when the matrix is not in the span.
std::optional<Vec> functional_coords(const DualModule& d, const Matrix& f);

/// Matrix of phi -> phi o precompose between two materialized duals.
Matrix dual_transition(const DualModule& from, const DualModule& to, const Matrix& precompose);

enum class Side { Left, Right };

/// Canonical map M (x)_A A -> M (resp. A (x)_A M -> M) tested for bijectivity.
bool is_firm(const Bimodule& m, Side side);

/// Local-unit absorption over the supplied finite subsets; orthogonality is
/// additionally enforced when the family is flagged orthogonal.
bool verify_local_units(const FiniteAlgebra& alg,
                        const std::vector<std::vector<Vec>>& sample_subsets);

/// Partial order e_i <= e_j iff e_i e_j = e_j e_i = e_i.
std::vector<std::vector<bool>> idempotent_order(const FiniteAlgebra& alg);
bool idempotent_order_directed(const FiniteAlgebra& alg);

struct MatrixRingResult {
    FiniteAlgebra ring;    // multiplication (x (x) phi)(y (x) psi) = x (x) eps(phi (x) y) psi
    BalancedTensor space;  // carrier P (x)_A Pdag
};

/// The matrix ring S = P (x)_A Pdag of a pairing eps : Pdag (x)_B P -> A.
MatrixRingResult matrix_ring(const Bimodule& p, const Bimodule& pdag, const BalancedTensor& pdag_p,
                             const Matrix& eps);

// --- stock algebras and modules -------------------------------------------

/// M_n(F_p) with basis E_{uv} at index u*n+v.
AlgebraPtr matrix_algebra(int n, u32 p, const std::string& name = "");

/// Direct product; basis is the concatenation of the factor bases, unit the
/// sum of the factor units, idempotent family the factor units plus their sum.
AlgebraPtr product_algebra(const std::vector<AlgebraPtr>& factors, const std::string& name = "");

/// F_p[x]/(x^2) with basis {1, x}.
AlgebraPtr dual_numbers(u32 p);

/// Column vectors F_p^n as an (M_n(F_p), k)-bimodule.
Bimodule column_module(const AlgebraPtr& mn, int n);

/// Row vectors F_p^n as a (k, M_n(F_p))-bimodule.
Bimodule row_module(const AlgebraPtr& mn, int n);

}  // namespace coringlab
