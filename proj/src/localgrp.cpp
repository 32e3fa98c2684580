#include "covollab/localgrp.hpp"

#include <algorithm>
#include <set>

namespace covollab::localgrp {

using rootsys::Root;

int DiagConjugator::spread() const {
    auto [lo, hi] = std::minmax_element(exps.begin(), exps.end());
    return int(*hi - *lo);
}

TruncMat DiagConjugator::apply(const TruncMat& g) const {
    unsigned L = ring.L;
    int sp = spread();
    if (int(L) - sp < 1)
        throw precondition_error("insufficient precision: truncation " + std::to_string(L) +
                                 " cannot absorb a conjugation of spread " + std::to_string(sp));
    unsigned Lout = L - unsigned(sp);
    TruncRing Rout(*ring.F, Lout);
    TruncMat out(Rout, g.n);
    for (unsigned i = 0; i < g.n; ++i)
        for (unsigned j = 0; j < g.n; ++j) {
            int e = exps[i] - exps[j];
            for (int k = 0; k < int(Lout); ++k) {
                int src = k - e;
                uint32_t c = (src >= 0 && src < int(L)) ? g.at(i, j, unsigned(src)) : 0;
                out.at(i, j, unsigned(k)) = c;
            }
            // entries pushed below u^0 must vanish on their known part
            for (int k = e; k < 0; ++k)
                if (g.at(i, j, unsigned(k - e)) != 0)
                    throw precondition_error(
                        "insufficient precision: entry (" + std::to_string(i) + "," +
                        std::to_string(j) + ") has valuation below " + std::to_string(-e));
        }
    return out;
}

GroupModel::GroupModel(ModelKind kind, unsigned msize, uint32_t q, unsigned L,
                       rootsys::RootSystemType t)
    : kind_(kind),
      msize_(msize),
      ring_(FqField::get(q), L),
      rs_(rootsys::RootSystem::build(t)) {
    build_patterns();
}

GroupModel GroupModel::make_sl(unsigned n, uint32_t q, unsigned L) {
    if (n < 2) throw precondition_error("SL_n needs n >= 2");
    return GroupModel(ModelKind::SL, n, q, L,
                      {rootsys::Family::A, int(n) - 1});
}

GroupModel GroupModel::make_sp(unsigned half, uint32_t q, unsigned L) {
    if (half < 2) throw precondition_error("Sp_2n needs n >= 2");
    return GroupModel(ModelKind::Sp, 2 * half, q, L,
                      {rootsys::Family::C, int(half)});
}

std::string GroupModel::name() const {
    std::string base = (kind_ == ModelKind::SL ? "SL_" : "Sp_") + std::to_string(msize_) +
                       "(F_" + std::to_string(ring_.F->q());
    if (ring_.L > 1) base += "[u]/(u^" + std::to_string(ring_.L) + ")";
    return base + ")";
}

void GroupModel::build_patterns() {
    int r = rs_.rank();
    unsigned m = msize_;
    // Euclidean vectors of the simple roots in the defining coordinates.
    std::vector<std::vector<int>> se(r, std::vector<int>(kind_ == ModelKind::SL ? m : m / 2, 0));
    if (kind_ == ModelKind::SL) {
        for (int k = 0; k < r; ++k) {
            se[k][k] = 1;
            se[k][k + 1] = -1;
        }
    } else {
        int half = int(m / 2);
        for (int k = 0; k + 1 < half; ++k) {
            se[k][k] = 1;
            se[k][k + 1] = -1;
        }
        se[half - 1][half - 1] = 2;
    }

    auto mir = [&](unsigned i) { return m - 1 - i; };
    patterns_.assign(rs_.roots().size(), {});
    pos_root_.assign(m, std::vector<int>(m, -1));
    for (size_t ri = 0; ri < rs_.roots().size(); ++ri) {
        const Root& b = rs_.roots()[ri];
        std::vector<int> w(se[0].size(), 0);
        for (int k = 0; k < r; ++k)
            for (size_t c = 0; c < w.size(); ++c) w[c] += b[k] * se[k][c];

        std::vector<PatternEntry> pat;
        if (kind_ == ModelKind::SL) {
            unsigned i = 0, j = 0;
            for (size_t c = 0; c < w.size(); ++c) {
                if (w[c] == 1) i = unsigned(c);
                if (w[c] == -1) j = unsigned(c);
            }
            pat = {{i, j, +1}};
        } else {
            // classify ±(e_i - e_j), ±(e_i + e_j), ±2 e_i
            std::vector<unsigned> plus, minus;
            bool doubled = false;
            for (size_t c = 0; c < w.size(); ++c) {
                if (w[c] == 2 || w[c] == -2) doubled = true;
                if (w[c] > 0) plus.push_back(unsigned(c));
                if (w[c] < 0) minus.push_back(unsigned(c));
            }
            if (doubled) {
                unsigned i = plus.empty() ? minus[0] : plus[0];
                pat = plus.empty() ? std::vector<PatternEntry>{{mir(i), i, +1}}
                                   : std::vector<PatternEntry>{{i, mir(i), +1}};
            } else if (plus.size() == 2) {  // e_i + e_j
                unsigned i = plus[0], j = plus[1];
                pat = {{i, mir(j), +1}, {j, mir(i), +1}};
            } else if (minus.size() == 2) {  // -(e_i + e_j): transpose
                unsigned i = minus[0], j = minus[1];
                pat = {{mir(j), i, +1}, {mir(i), j, +1}};
            } else {  // ±(e_i - e_j)
                unsigned i = plus[0], j = minus[0];
                pat = {{i, j, +1}, {mir(j), mir(i), -1}};
            }
        }
        for (const auto& e : pat) {
            if (pos_root_[e.row][e.col] != -1) throw std::logic_error("overlapping root patterns");
            pos_root_[e.row][e.col] = int(ri);
        }
        patterns_[ri] = std::move(pat);
    }

    if (kind_ == ModelKind::Sp) {
        form_ = TruncMat(ring_, m);
        for (unsigned i = 0; i < m; ++i)
            form_.at(i, mir(i), 0) = (i < m / 2) ? 1 : ring_.F->neg(1);
    }
}

TruncMat GroupModel::root_element(const Root& beta, const TruncRing::Elem& x) const {
    int ri = rs_.index_of(beta);
    TruncMat g = tm_identity(ring_, msize_);
    for (const auto& e : patterns_[ri])
        g.set_entry(e.row, e.col, e.sign > 0 ? x : ring_.neg(x));
    return g;
}

TruncMat GroupModel::root_element_fq(const Root& beta, uint32_t c) const {
    return root_element(beta, ring_.from_fq(c));
}

TruncMat GroupModel::coweight_element(unsigned i, const TruncRing::Elem& s) const {
    if (int(i) >= rs_.rank()) throw precondition_error("coweight index out of range");
    if (!ring_.is_unit(s)) throw precondition_error("coweight parameter must be a unit");
    TruncMat g = tm_identity(ring_, msize_);
    TruncRing::Elem si = ring_.inv(s);
    if (kind_ == ModelKind::SL) {
        g.set_entry(i, i, s);
        g.set_entry(i + 1, i + 1, si);
    } else {
        unsigned half = msize_ / 2;
        auto mir = [&](unsigned k) { return msize_ - 1 - k; };
        if (i + 1 < half) {
            g.set_entry(i, i, s);
            g.set_entry(i + 1, i + 1, si);
            g.set_entry(mir(i), mir(i), si);
            g.set_entry(mir(i + 1), mir(i + 1), s);
        } else {
            g.set_entry(half - 1, half - 1, s);
            g.set_entry(half, half, si);
        }
    }
    return g;
}

bool GroupModel::is_member(const TruncMat& g) const {
    if (g.n != msize_) return false;
    if (kind_ == ModelKind::SL) return tm_det(g) == g.R.one();
    TruncMat form = form_;
    if (g.R.L != ring_.L) {
        form = tm_reduce(form_, g.R.L);
    }
    return tm_mul(tm_mul(tm_transpose(g), form), g) == form;
}

unsigned GroupModel::congruence_level(const TruncMat& g) const {
    if (!is_member(g)) throw precondition_error("matrix is not in " + name());
    return tm_congruence_level(g);
}

std::vector<TruncMat> GroupModel::field_group_generators() const {
    std::vector<TruncMat> gens;
    for (int i = 0; i < rs_.rank(); ++i) {
        Root a = rs_.simple_root(i), na = a;
        for (auto& c : na) c = -c;
        for (uint32_t b : ring_.F->basis()) {
            gens.push_back(root_element_fq(a, b));
            gens.push_back(root_element_fq(na, b));
        }
    }
    return gens;
}

std::vector<TruncMat> GroupModel::congruence_generators(unsigned l) const {
    if (l < 1 || l >= ring_.L)
        throw precondition_error("congruence level must satisfy 1 <= l < L");
    std::vector<TruncMat> gens;
    for (const Root& b : rs_.roots())
        for (unsigned j = l; j < ring_.L; ++j)
            for (uint32_t c : ring_.F->basis())
                gens.push_back(root_element(b, ring_.u_times_fq(j, c)));
    for (int i = 0; i < rs_.rank(); ++i)
        for (unsigned j = l; j < ring_.L; ++j)
            for (uint32_t c : ring_.F->basis()) {
                TruncRing::Elem s = ring_.one();
                s[j] = c;
                gens.push_back(coweight_element(unsigned(i), s));
            }
    return gens;
}

DiagConjugator GroupModel::theta_conjugator(unsigned alpha_index) const {
    if (int(alpha_index) >= rs_.rank()) throw precondition_error("simple-root index out of range");
    DiagConjugator d;
    d.ring = ring_;
    d.exps.assign(msize_, 0);
    if (kind_ == ModelKind::SL) {
        for (unsigned i = 0; i <= alpha_index; ++i) d.exps[i] = 1;
        d.inside_group = false;  // det u^(k+1), lives in GL_n
    } else {
        unsigned half = msize_ / 2;
        if (alpha_index + 1 < half) {
            // symplectic: exps antisymmetric under i <-> mirror(i)
            for (unsigned i = 0; i <= alpha_index; ++i) {
                d.exps[i] = 1;
                d.exps[msize_ - 1 - i] = -1;
            }
            d.inside_group = true;
        } else {
            // long simple root: similitude diag(u I, I); the symplectic
            // choice would need a square root of u
            for (unsigned i = 0; i < half; ++i) d.exps[i] = 1;
            d.inside_group = false;
        }
    }
    // Conjugation must scale each root subgroup by the alpha-coordinate.
    for (size_t ri = 0; ri < patterns_.size(); ++ri)
        for (const auto& e : patterns_[ri])
            if (d.exps[e.row] - d.exps[e.col] != rs_.roots()[ri][alpha_index])
                throw std::logic_error("conjugator exponents disagree with root coordinates");
    return d;
}

bool GroupModel::in_opposite_parabolic(const TruncMat& m, unsigned alpha_index) const {
    for (unsigned i = 0; i < msize_; ++i)
        for (unsigned j = 0; j < msize_; ++j) {
            if (i == j || pos_root_[i][j] < 0) continue;
            if (rs_.roots()[pos_root_[i][j]][alpha_index] > 0 && !m.R.is_zero(m.entry(i, j)))
                return false;
        }
    return true;
}

bool GroupModel::in_opposite_radical(const TruncMat& m, unsigned alpha_index) const {
    for (unsigned i = 0; i < msize_; ++i)
        for (unsigned j = 0; j < msize_; ++j) {
            if (i == j) {
                TruncRing::Elem e = m.entry(i, i);
                e[0] = m.R.F->sub(e[0], 1);
                if (!m.R.is_zero(e)) return false;
                continue;
            }
            if (pos_root_[i][j] < 0) continue;
            if (rs_.roots()[pos_root_[i][j]][alpha_index] >= 0 && !m.R.is_zero(m.entry(i, j)))
                return false;
        }
    return true;
}

PReport GroupModel::verify_p_properties(unsigned alpha_index, unsigned l) const {
    auto [highest, lg] = rs_.highest_and_l();
    if (l < unsigned(lg) || l >= ring_.L)
        throw precondition_error("property check needs l(G) <= l < L, l(G) = " +
                                 std::to_string(lg));
    DiagConjugator d = theta_conjugator(alpha_index);
    PReport rep;
    rep.alpha_index = alpha_index;
    rep.level = l;
    rep.expected_drop = highest[alpha_index];
    rep.conjugator_in_group = d.inside_group;
    rep.trunc_out = ring_.L - unsigned(d.spread());
    unsigned Lout = rep.trunc_out;
    if (l + 1 > Lout)
        throw precondition_error("truncation too small to read the xi_(l+1) image");

    // P1 on every root subgroup, parameters over the whole field scaled
    // into the conjugator's domain, plus the coweight subgroups.
    rep.p1_ok = true;
    for (const Root& b : rs_.roots()) {
        int cb = b[alpha_index];
        unsigned j0 = unsigned(std::max(0, -cb));
        unsigned jshift = unsigned(int(j0) + cb);
        for (uint32_t x = 1; x < ring_.F->q(); ++x) {
            TruncMat lhs = d.apply(root_element(b, ring_.u_times_fq(j0, x)));
            TruncMat rhs = tm_reduce(root_element(b, ring_.u_times_fq(jshift, x)), Lout);
            ++rep.p1_checks;
            rep.p1_ok = rep.p1_ok && lhs == rhs;
        }
    }
    for (int i = 0; i < rs_.rank(); ++i)
        for (uint32_t c : ring_.F->basis()) {
            TruncRing::Elem s = ring_.one();
            s[1] = c;  // sample unit 1 + u c (L >= 2 under the l < L gate)
            TruncMat t = coweight_element(unsigned(i), s);
            ++rep.p1_checks;
            rep.p1_ok = rep.p1_ok && d.apply(t) == tm_reduce(t, Lout);
        }

    // P2 and P3 on the congruence generators of G_l.
    rep.p2_ok = true;
    rep.p3_radical_ok = true;
    rep.p3_parabolic_ok = true;
    for (const TruncMat& g : congruence_generators(l)) {
        TruncMat h = d.apply(g);
        unsigned lev = tm_congruence_level(h);
        int drop = int(l) - int(std::min(lev, l));
        rep.max_drop_observed = std::max(rep.max_drop_observed, drop);
        ++rep.p2_checks;
        rep.p2_ok = rep.p2_ok && lev + unsigned(rep.expected_drop) >= std::min(l, Lout);

        rep.p3_radical_ok =
            rep.p3_radical_ok && in_opposite_radical(tm_reduce(h, l), alpha_index);
        rep.p3_parabolic_ok =
            rep.p3_parabolic_ok && in_opposite_parabolic(tm_reduce(h, l + 1), alpha_index);
        ++rep.p3_checks;
    }
    // sharp drop attained on the lowest root subgroup
    rep.p2_ok = rep.p2_ok && rep.max_drop_observed == rep.expected_drop;
    return rep;
}

GenReport GroupModel::congruence_generation_audit(unsigned l, uint64_t max_elements) const {
    GenReport rep;
    rep.level = l;
    rep.trunc = ring_.L;
    GroupTable t = bfs_closure(congruence_generators(l), max_elements);
    rep.complete = t.complete;
    rep.closure_order = t.size();
    mpz_class q(static_cast<unsigned long>(ring_.F->q()));
    mpz_pow_ui(rep.expected_order.get_mpz_t(), q.get_mpz_t(),
               static_cast<unsigned long>(uint64_t(ring_.L - l) *
                                          uint64_t(chevorder::exponents(rstype()).dim())));
    rep.match = rep.complete &&
                rep.expected_order == mpz_class(static_cast<unsigned long>(rep.closure_order));
    return rep;
}

CentralizerReport GroupModel::centralizer_audit() const {
    if (ring_.F->q() <= 3)
        throw precondition_error("centralizer audit requires q > 3");
    CentralizerReport rep;
    const FqField& F = *ring_.F;
    unsigned n = msize_;

    // Commutant conditions X s = s X are F_q-linear and act on each
    // u-coefficient of X independently, so one solve over F_q suffices.
    std::vector<std::vector<uint32_t>> rows;
    for (const TruncMat& gen : field_group_generators()) {
        FqMat s(n, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) s.at(i, j) = gen.at(i, j, 0);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                std::vector<uint32_t> row(size_t(n) * n, 0);
                for (unsigned k = 0; k < n; ++k) {
                    row[size_t(i) * n + k] = F.add(row[size_t(i) * n + k], s.at(k, j));
                    row[size_t(k) * n + j] = F.sub(row[size_t(k) * n + j], s.at(i, k));
                }
                rows.push_back(std::move(row));
            }
    }
    LinearSolution sol = fq_solve(F, std::move(rows), n * n);
    rep.commutant_dim = uint32_t(sol.kernel.size());
    rep.commutant_is_scalars = false;
    if (sol.kernel.size() == 1) {
        const auto& v = sol.kernel[0];
        uint32_t diag = v[0];
        bool scal = diag != 0;
        for (unsigned i = 0; i < n && scal; ++i)
            for (unsigned j = 0; j < n && scal; ++j)
                scal = v[size_t(i) * n + j] == (i == j ? diag : 0u);
        rep.commutant_is_scalars = scal;
    }

    // Scalars zeta I in the group: zeta^n = 1 for SL, zeta^2 = 1 for Sp.
    uint64_t total = 1;
    for (unsigned k = 0; k < ring_.L; ++k) total *= F.q();
    for (uint64_t code = 0; code < total; ++code) {
        TruncRing::Elem c(ring_.L);
        uint64_t t = code;
        for (unsigned k = 0; k < ring_.L; ++k) { c[k] = uint32_t(t % F.q()); t /= F.q(); }
        if (!ring_.is_unit(c)) continue;
        if (is_member(tm_scalar(ring_, n, c))) rep.center_scalars.push_back(c);
    }
    unsigned power = kind_ == ModelKind::SL ? n : 2;
    for (uint32_t z = 1; z < F.q(); ++z)
        if (F.pow(z, power) == 1) ++rep.expected_center_size;
    // When the commutant is scalars, the group centralizer of G(F_q) is
    // exactly the scalar subgroup listed above.
    rep.centralizer_equals_center = rep.commutant_is_scalars;
    return rep;
}

}  // namespace covollab::localgrp
