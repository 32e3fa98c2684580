// Root systems of the Chevalley families in simple-root integer
// coordinates, with the pairing/reflection calculus and the exhaustive
// subset audits built on top of them.
//
// Roots are stored exclusively as integer vectors over the simple basis;
// Euclidean realizations appear only in test oracles.  Construction
// closes the simple roots under the simple reflections, which reaches
// every root because the Weyl group is generated by them and acts
// transitively on roots of each length.

#pragma once

#include "covollab/errors.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace covollab::rootsys {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

Family family_from_char(char c);

struct RootSystemType {
    Family family;
    int rank;

    std::string name() const;
    bool operator==(const RootSystemType&) const = default;
};

// Supported ranks: A r>=1, B r>=2, C r>=2, D r>=2 (D_2 is the Spin_4
// product system), E 6..8, F 4, G 2.
bool type_supported(RootSystemType t);

using Root = std::vector<int>;  // coefficients over the simple roots

int height(const Root& r);

// Every subset is counted under two readings of the support set.  The
// "span" fields take <Xi> literally as the positive roots supported on
// Xi; the "sym" fields close it under negation.  The sign-balance
// display and the off-by-one count of the source argument are true
// statements only for the negation-closed set (the positive-span
// balance genuinely fails, e.g. 5 against 10 for Xi = {alpha_0}); both
// are reported so neither reading is baked into an assumption.
struct E6SubsetRow {
    uint32_t subset_mask = 0;      // bit i = simple root alpha_{i+1} in Xi
    long n = 0, m = 0;             // positive-span n_{Xi,a0}, m_{Xi,a0}
    long n_sym = 0, m_sym = 0;     // same counts over the negation-closed support
    long span_size = 0;            // |<Xi>|
    long not_minus_one = 0;        // |{beta : <a0,beta> != -1}|
    long discrepancy = 0;          // (n+m+1) - not_minus_one, positive-span reading
    long discrepancy_sym = 0;      // same with the symmetric reading
    long span_balance_minus = 0;   // |{beta in <Xi> : <beta,a0> = -1}|
    long span_balance_plus = 0;    // |{beta in <Xi> : <beta,a0> = +1}|
    long sym_balance_minus = 0;    // same over <Xi> u -<Xi>
    long sym_balance_plus = 0;
    bool inequality_ok = false;    // n+m+1 < |Phi| under both readings
    bool balance_ok = false;       // the display, over the negation-closed set
};

struct E6AuditReport {
    int alpha0_index = -1;  // 0-based simple index of the coefficient-3 root
    std::vector<E6SubsetRow> rows;
    bool all_inequalities = false;
    bool all_balanced = false;
};

struct SimplyLacedViolation {
    Root alpha, beta;
    std::string clause;
};

struct SimplyLacedReport {
    uint64_t ordered_pairs = 0;
    std::vector<SimplyLacedViolation> violations;
    bool ok() const { return violations.empty(); }
};

class RootSystem {
public:
    static RootSystem build(RootSystemType t);

    RootSystemType type() const { return type_; }
    int rank() const { return type_.rank; }
    const std::vector<Root>& roots() const { return roots_; }
    std::vector<Root> positive_roots() const;
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    Root simple_root(int i) const;  // 0-based
    bool contains(const Root& r) const { return index_.count(r) != 0; }
    int index_of(const Root& r) const;
    bool simply_laced() const;
    bool irreducible() const { return !(type_.family == Family::D && type_.rank == 2); }

    // <beta, alpha> = 2(beta,alpha)/(alpha,alpha); both roots must belong
    // to the system.
    int pairing(const Root& beta, const Root& alpha) const;
    // sigma_alpha(beta) = beta - <beta,alpha> alpha
    Root reflect(const Root& alpha, const Root& beta) const;
    // (highest root, largest simple-root coefficient).  For the D_2
    // product system the dominance order has two maximal roots; the
    // lexicographically larger one is returned and the coefficient is 1.
    std::pair<Root, int> highest_and_l() const { return {highest_, lmax_}; }
    // (<beta,alpha_1>, ..., <beta,alpha_r>)
    std::vector<int> weight_coords(const Root& beta) const;

    // {beta in Phi : alpha0 + beta not in Phi}, the literal set of the
    // connectedness lemma (so it contains both alpha0 and -alpha0).
    std::vector<Root> phi_alpha(const Root& alpha0) const;

    struct XiCounts {
        std::vector<Root> span;  // <Xi>: positive roots supported on Xi
        long n = 0;              // |Phi_{a0} \ -<Xi>|
        long m = 0;              // |Phi_{a0} cap <Xi>|
    };
    // xi must consist of simple roots.
    XiCounts xi_counts(const std::vector<Root>& xi, const Root& alpha0) const;

    // E_6 only: all 32 subsets Xi containing the coefficient-3 simple
    // root; checks n+m+1 < |Phi| and the +1/-1 balance on <Xi>, and
    // reports the exact offset against |{beta : <a0,beta> != -1}|.
    E6AuditReport e6_inequality_audit() const;

    // Types A, D, E only: exhaustive check of both clauses of the
    // simply-laced remark over ordered root pairs.
    SimplyLacedReport simply_laced_audit() const;

private:
    RootSystemType type_;
    std::vector<Root> roots_;
    std::map<Root, int> index_;
    std::vector<std::vector<int>> cartan_;  // cartan_[i][j] = <alpha_i, alpha_j>
    std::vector<int> dhalf_;                // (alpha_i,alpha_i)/2, short roots = 1
    Root highest_;
    int lmax_ = 0;

    long bilinear(const Root& x, const Root& y) const;  // (x,y), short roots length^2 = 2
};

}  // namespace covollab::rootsys
