// Matrix models of the simply connected groups of types A and C over
// F_q[u]/(u^L): root subgroups, coroot one-parameter subgroups, the
// congruence filtration, and the diagonal automorphisms h(theta_alpha)
// that scale each root subgroup u_beta(x) by u^(alpha-coordinate of beta).
//
// Type A is SL_n with the usual elementary matrices.  Type C is Sp_2n
// for the antidiagonal form J (J[i][2n-1-i] = +1 for i < n, -1 for
// i >= n), which keeps the standard Borel upper triangular.  Positive
// root elements are then upper unitriangular and the parabolic shape
// predicates are entrywise zero tests.

#pragma once

#include "covollab/chevorder.hpp"
#include "covollab/grouptable.hpp"
#include "covollab/rootsys.hpp"
#include "covollab/truncring.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace covollab::localgrp {

enum class ModelKind { SL, Sp };

// Conjugation by diag(u^e_0, ..., u^e_{m-1}).  Entry (i, j) of the
// argument is shifted by u^(e_i - e_j); entries that would acquire a
// negative power below the known precision raise an error instead of
// wrapping.  The result is only known modulo u^(L - spread), and is
// returned at that truncation.
struct DiagConjugator {
    TruncRing ring;
    std::vector<int> exps;
    bool inside_group = false;  // true when the diagonal satisfies the model's form

    int spread() const;
    TruncMat apply(const TruncMat& g) const;
};

struct PReport {
    unsigned alpha_index = 0;
    unsigned level = 0;
    unsigned trunc_out = 0;       // truncation of conjugated elements
    int expected_drop = 0;        // alpha-coordinate of the highest root
    bool conjugator_in_group = false;
    uint64_t p1_checks = 0;
    bool p1_ok = false;
    uint64_t p2_checks = 0;
    int max_drop_observed = 0;
    bool p2_ok = false;
    uint64_t p3_checks = 0;
    bool p3_radical_ok = false;    // xi_l image inside R_u(P_alpha^-)
    bool p3_parabolic_ok = false;  // xi_{l+1} image inside P_alpha^-
    bool ok() const { return p1_ok && p2_ok && p3_radical_ok && p3_parabolic_ok; }
};

struct GenReport {
    unsigned level = 0;
    unsigned trunc = 0;
    bool complete = false;       // closure finished under the element bound
    uint64_t closure_order = 0;
    mpz_class expected_order;    // q^((L-l) dim G)
    bool match = false;
};

struct CentralizerReport {
    uint32_t commutant_dim = 0;  // F_q-solutions of Xg = gX over the generators
    bool commutant_is_scalars = false;
    std::vector<TruncRing::Elem> center_scalars;  // zeta with zeta I in the group
    bool centralizer_equals_center = false;
    uint64_t expected_center_size = 0;
};

class GroupModel {
public:
    static GroupModel make_sl(unsigned n, uint32_t q, unsigned L);   // type A_{n-1}, n >= 2
    static GroupModel make_sp(unsigned half, uint32_t q, unsigned L);  // type C_half, half >= 2

    ModelKind kind() const { return kind_; }
    unsigned msize() const { return msize_; }
    const TruncRing& ring() const { return ring_; }
    const FqField& field() const { return *ring_.F; }
    const rootsys::RootSystem& roots() const { return rs_; }
    std::string name() const;

    TruncMat root_element(const rootsys::Root& beta, const TruncRing::Elem& x) const;
    TruncMat root_element_fq(const rootsys::Root& beta, uint32_t c) const;
    // alpha_i^vee(s) for a unit s
    TruncMat coweight_element(unsigned i, const TruncRing::Elem& s) const;

    bool is_member(const TruncMat& g) const;
    // largest l <= L with g trivial mod u^l; g must be a member
    unsigned congruence_level(const TruncMat& g) const;

    // u_{±alpha_i}(b) over an F_p-basis b of F_q: generates G(F_q)
    std::vector<TruncMat> field_group_generators() const;
    // generators of the l-th congruence subgroup: u_beta(u^j b) for
    // j in [l, L) together with coweight units alpha_i^vee(1 + u^j b)
    std::vector<TruncMat> congruence_generators(unsigned l) const;

    DiagConjugator theta_conjugator(unsigned alpha_index) const;

    // shape predicates on reduced matrices (arbitrary truncation)
    bool in_opposite_parabolic(const TruncMat& m, unsigned alpha_index) const;
    bool in_opposite_radical(const TruncMat& m, unsigned alpha_index) const;

    PReport verify_p_properties(unsigned alpha_index, unsigned l) const;
    GenReport congruence_generation_audit(unsigned l, uint64_t max_elements) const;
    CentralizerReport centralizer_audit() const;

    rootsys::RootSystemType rstype() const { return rs_.type(); }

private:
    GroupModel(ModelKind kind, unsigned msize, uint32_t q, unsigned L,
               rootsys::RootSystemType t);

    ModelKind kind_;
    unsigned msize_;
    TruncRing ring_;
    rootsys::RootSystem rs_;

    struct PatternEntry {
        unsigned row, col;
        int sign;
    };
    std::vector<std::vector<PatternEntry>> patterns_;  // by root index
    std::vector<std::vector<int>> pos_root_;           // off-diagonal position -> root index
    TruncMat form_;                                    // J for Sp, unused for SL

    void build_patterns();
};

}  // namespace covollab::localgrp
