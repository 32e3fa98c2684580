// 1-cohomology of finite matrix groups over F_q, and the constructive
// pieces built on it: cocycle systems on a Cayley-graph skeleton, the
// torus-averaging normalization, the congruence-level conjugacy lifter,
// and the two exhaustive finite-field lemmas (polynomial vanishing on
// (F_q^*)^n and the torus character span).
//
// Cocycle convention, used everywhere: delta(gh) = delta(g)^h + delta(h)
// with the right adjoint action m^h = h^-1 m h.  A coboundary is
// g -> x^g - x.  Unknowns live on the generators only; one d-dimensional
// constraint per non-tree Cayley edge cuts the system down to
// (edges - tree edges) * d rows.

#pragma once

#include "covollab/grouptable.hpp"
#include "covollab/localgrp.hpp"
#include "covollab/rootsys.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace covollab::cohomlab {

using localgrp::FqField;
using localgrp::FqMat;
using localgrp::TruncMat;
using localgrp::TruncRing;

struct FiniteGroupTable {
    localgrp::GroupTable table;

    size_t size() const { return table.size(); }
    const FqField& field() const { return *table.ring.F; }
    unsigned matrix_size() const { return table.n; }
    unsigned ngens() const { return unsigned(table.generators.size()); }
    TruncMat element(uint32_t i) const { return table.element(i); }
};

// Complete closure or an explicit failure; never a partial table.
FiniteGroupTable enumerate_group(const std::vector<TruncMat>& generators, uint64_t max_elements);

enum class AdjointModule { GL, SL, LieSp };

struct ModuleAction {
    unsigned dim = 0;
    uint32_t q = 0;
    std::vector<FqMat> basis;  // d matrices spanning the module
    std::vector<FqMat> rho;    // per generator: matrix of m -> s^-1 m s on coordinates
};

// The table must live over the field itself (truncation level 1).
ModuleAction adjoint_action(const FiniteGroupTable& t, AdjointModule which);

using Cocycle = std::vector<uint32_t>;  // generator values, concatenated, length dim * ngens

struct H1Dimensions {
    unsigned dim_fixed = 0;  // dim M^G
    unsigned dim_z1 = 0;
    unsigned dim_b1 = 0;
    unsigned dim_h1 = 0;
    uint64_t nontree_edges = 0;
};

// Builds the per-element cocycle transport C_g (delta(g) as a linear map
// of the generator unknowns) along the BFS tree, verifies the action on
// every non-tree cycle, and accumulates the closure constraints.
class CocycleSolver {
public:
    CocycleSolver(const FiniteGroupTable& t, ModuleAction action);

    const H1Dimensions& dims() const { return dims_; }
    const FiniteGroupTable& group() const { return *table_; }
    const ModuleAction& action() const { return action_; }
    unsigned dim() const { return action_.dim; }
    unsigned width() const { return action_.dim * unsigned(action_.rho.size()); }

    // delta(element) for the cocycle with the given generator values
    std::vector<uint32_t> evaluate(const Cocycle& c, uint32_t element) const;
    // exact check of the cocycle identity over every Cayley edge
    bool is_cocycle(const Cocycle& c) const;
    Cocycle coboundary(const std::vector<uint32_t>& x) const;

    // delta' = delta + coboundary(x) with x the torus average; delta'
    // vanishes on the listed torus elements.  |torus| must be prime to p.
    struct Normalized {
        Cocycle cocycle;
        std::vector<uint32_t> average;
    };
    Normalized normalize_cocycle(const Cocycle& c, const std::vector<uint32_t>& torus) const;

private:
    const FiniteGroupTable* table_;
    ModuleAction action_;
    H1Dimensions dims_;
    std::vector<uint8_t> transport_;  // |G| * d * width
    std::vector<uint8_t> rho_all_;    // |G| * d * d

    const uint8_t* transport_of(uint32_t g) const;
    const uint8_t* rho_of(uint32_t g) const;
};

// (dim Z^1, dim B^1, dim H^1) for the pair.
H1Dimensions h1_dimension(const FiniteGroupTable& t, const ModuleAction& a);

struct LiftResult {
    bool success = false;
    bool hypotheses_met = false;
    TruncMat conjugator;  // in GL_n over the model ring
    std::string detail;
    // on coboundary failure: the level and the unsolved defect per generator
    unsigned residual_level = 0;
    std::vector<FqMat> residual_defect;
};

// Conjugates a finite subgroup H of the model group, isomorphic to
// G(F_q) under reduction mod u, exactly onto the standard copy.  The
// conjugator is found level by level: read the defect cocycle off the
// generators, solve delta(s) = s x s^-1 - x in gl_n(F_q), multiply by
// 1 + u^m x.  The returned conjugator always passes the exact post-check
// g H g^-1 = G(F_q); failures are reported, never silently wrong.
LiftResult lift_conjugacy(const FiniteGroupTable& H, const localgrp::GroupModel& model,
                          bool allow_outside_hypotheses = false);

struct Monomial {
    std::vector<unsigned> exps;
    uint32_t coeff;
};
struct SparsePoly {
    unsigned nvars = 0;
    std::vector<Monomial> terms;
};

struct VanishCert {
    bool vanishes_on_torus = false;  // zero on all of (F_q^*)^n
    bool zero_polynomial = false;    // coefficient table combines to zero
    bool lemma_consistent = false;   // vanishing implies zero under deg <= q-2
    std::optional<std::vector<uint32_t>> witness;
    uint64_t points_checked = 0;
};

// Exhaustive check of the vanishing lemma: per-variable degree <= q-2
// enforced as a precondition.
VanishCert poly_vanish_check(uint32_t q, const SparsePoly& poly, uint64_t max_points);

struct SpanRankResult {
    unsigned rank = 0;
    unsigned full = 0;  // |Phi| + 1
    uint64_t rows = 0;
    bool full_rank() const { return rank == full; }
};

// Rank of {(1, (beta(t))_beta) : t in T(F_q)} inside F_q^(|Phi|+1),
// with T parametrized by (F_q^*)^r through the fundamental coweights.
SpanRankResult root_span_rank(const rootsys::RootSystem& rs, uint32_t q, uint64_t max_rows);

}  // namespace covollab::cohomlab
