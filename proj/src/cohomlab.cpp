#include "covollab/cohomlab.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

namespace covollab::cohomlab {

FiniteGroupTable enumerate_group(const std::vector<TruncMat>& generators,
                                 uint64_t max_elements) {
    FiniteGroupTable t{localgrp::bfs_closure(generators, max_elements)};
    if (!t.table.complete)
        throw precondition_error("group closure exceeded the element bound " +
                                 std::to_string(max_elements));
    return t;
}

namespace {

FqMat to_fq(const TruncMat& m) {
    FqMat f(m.n, m.n);
    for (unsigned i = 0; i < m.n; ++i)
        for (unsigned j = 0; j < m.n; ++j) f.at(i, j) = m.at(i, j, 0);
    return f;
}

TruncMat embed_fq(const TruncRing& R, const FqMat& f) {
    TruncMat m(R, f.n);
    for (unsigned i = 0; i < f.n; ++i)
        for (unsigned j = 0; j < f.n; ++j) m.at(i, j, 0) = f.at(i, j);
    return m;
}

// c = a * b for row-major uint8 blocks, a: ra x ca, b: ca x cb
void matmul_u8(const FqField& F, const uint8_t* a, const uint8_t* b, uint8_t* c,
               unsigned ra, unsigned ca, unsigned cb) {
    if (F.prime_field()) {
        uint32_t p = F.p();
        for (unsigned i = 0; i < ra; ++i)
            for (unsigned j = 0; j < cb; ++j) {
                uint32_t acc = 0;
                for (unsigned k = 0; k < ca; ++k) acc += uint32_t(a[i * ca + k]) * b[k * cb + j];
                c[i * cb + j] = uint8_t(acc % p);
            }
    } else {
        for (unsigned i = 0; i < ra; ++i)
            for (unsigned j = 0; j < cb; ++j) {
                uint32_t acc = 0;
                for (unsigned k = 0; k < ca; ++k)
                    acc = F.add(acc, F.mul(a[i * ca + k], b[k * cb + j]));
                c[i * cb + j] = uint8_t(acc);
            }
    }
}

std::vector<uint32_t> module_coords(const FqField& F, const std::vector<FqMat>& basis,
                                    const FqMat& v) {
    unsigned n2 = v.n * v.n, d = unsigned(basis.size());
    std::vector<std::vector<uint32_t>> rows(n2, std::vector<uint32_t>(d, 0));
    std::vector<uint32_t> rhs(n2);
    for (unsigned r = 0; r < n2; ++r) {
        for (unsigned k = 0; k < d; ++k) rows[r][k] = basis[k].a[r];
        rhs[r] = v.a[r];
    }
    localgrp::LinearSolution sol = localgrp::fq_solve(F, std::move(rows), d, &rhs);
    if (!sol.consistent) throw std::logic_error("image left the module span");
    return sol.particular;
}

}  // namespace

ModuleAction adjoint_action(const FiniteGroupTable& t, AdjointModule which) {
    if (t.table.ring.L != 1)
        throw precondition_error("adjoint actions are defined over the residue field (L = 1)");
    const FqField& F = t.field();
    unsigned n = t.matrix_size();

    ModuleAction act;
    act.q = F.q();
    if (which == AdjointModule::GL) {
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b) {
                FqMat E(n, n);
                E.at(a, b) = 1;
                act.basis.push_back(E);
            }
    } else if (which == AdjointModule::SL) {
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b) {
                if (a == b) continue;
                FqMat E(n, n);
                E.at(a, b) = 1;
                act.basis.push_back(E);
            }
        for (unsigned k = 0; k + 1 < n; ++k) {
            FqMat H(n, n);
            H.at(k, k) = 1;
            H.at(k + 1, k + 1) = F.neg(1);
            act.basis.push_back(H);
        }
    } else {
        // Lie(Sp_n): solutions of m^T J + J m = 0 for the antidiagonal J
        if (n % 2) throw precondition_error("symplectic module needs even matrix size");
        FqMat J(n, n);
        for (unsigned i = 0; i < n; ++i) J.at(i, n - 1 - i) = i < n / 2 ? 1 : F.neg(1);
        std::vector<std::vector<uint32_t>> rows;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                // (m^T J + J m)_{ij} = m_{n-1-j, i} s_j + s_i m_{n-1-i, j}
                std::vector<uint32_t> row(size_t(n) * n, 0);
                uint32_t sj = J.at(n - 1 - j, j), si = J.at(i, n - 1 - i);
                row[size_t(n - 1 - j) * n + i] = F.add(row[size_t(n - 1 - j) * n + i], sj);
                row[size_t(n - 1 - i) * n + j] = F.add(row[size_t(n - 1 - i) * n + j], si);
                rows.push_back(std::move(row));
            }
        localgrp::LinearSolution sol = localgrp::fq_solve(F, std::move(rows), n * n);
        for (const auto& v : sol.kernel) {
            FqMat B(n, n);
            B.a.assign(v.begin(), v.end());
            act.basis.push_back(B);
        }
    }
    act.dim = unsigned(act.basis.size());
    if (act.q > 255) throw precondition_error("cocycle tables support q <= 255");

    for (const TruncMat& gen : t.table.generators) {
        FqMat s = to_fq(gen), si = localgrp::fq_inverse(F, s);
        FqMat r(act.dim, act.dim);
        for (unsigned k = 0; k < act.dim; ++k) {
            FqMat img = localgrp::fq_mul(F, localgrp::fq_mul(F, si, act.basis[k]), s);
            std::vector<uint32_t> co = module_coords(F, act.basis, img);
            for (unsigned i = 0; i < act.dim; ++i) r.at(i, k) = co[i];
        }
        act.rho.push_back(std::move(r));
    }
    return act;
}

CocycleSolver::CocycleSolver(const FiniteGroupTable& t, ModuleAction action)
    : table_(&t), action_(std::move(action)) {
    const FqField& F = t.field();
    const unsigned d = action_.dim;
    const unsigned k = unsigned(action_.rho.size());
    const unsigned D = d * k;
    if (k != t.ngens()) throw precondition_error("action and table generator counts differ");

    // dim M^G from the generators alone: fixed points of the generators
    // are fixed points of the group.
    {
        std::vector<std::vector<uint32_t>> rows;
        for (const FqMat& r : action_.rho)
            for (unsigned i = 0; i < d; ++i) {
                std::vector<uint32_t> row(d);
                for (unsigned j = 0; j < d; ++j)
                    row[j] = F.sub(r.at(i, j), i == j ? 1 : 0);
                rows.push_back(std::move(row));
            }
        localgrp::LinearSolution sol = localgrp::fq_solve(F, std::move(rows), d);
        dims_.dim_fixed = unsigned(sol.kernel.size());
    }
    dims_.dim_b1 = d - dims_.dim_fixed;
    const unsigned rank_cap = D - dims_.dim_b1;

    std::vector<uint8_t> rho_gen(size_t(k) * d * d);
    for (unsigned s = 0; s < k; ++s)
        for (unsigned i = 0; i < d; ++i)
            for (unsigned j = 0; j < d; ++j)
                rho_gen[(size_t(s) * d + i) * d + j] = uint8_t(action_.rho[s].at(i, j));

    const size_t nelem = t.size();
    transport_.assign(nelem * d * D, 0);
    rho_all_.assign(nelem * d * d, 0);
    for (unsigned i = 0; i < d; ++i) rho_all_[size_t(i) * d + i] = 1;  // identity

    localgrp::FqEchelon ech(F, D);
    std::vector<uint8_t> block(size_t(d) * D);
    std::vector<uint8_t> rho_probe(size_t(d) * d);
    std::vector<uint32_t> row32(D);
    bool capped = false;

    for (uint32_t gi = 0; gi < nelem; ++gi) {
        TruncMat g = t.element(gi);
        for (uint16_t s = 0; s < k; ++s) {
            uint64_t key = localgrp::tm_pack(localgrp::tm_mul(g, t.table.generators[s]));
            uint32_t hi = t.table.index.at(key);
            const uint8_t* rs = &rho_gen[size_t(s) * d * d];
            if (hi != 0 && t.table.parent[hi] == gi && t.table.parent_gen[hi] == s) {
                // tree edge: define transport and action at hi
                uint8_t* Ch = &transport_[size_t(hi) * d * D];
                matmul_u8(F, rs, transport_of(gi), Ch, d, d, D);
                for (unsigned r = 0; r < d; ++r) {
                    size_t col = size_t(s) * d + r;
                    Ch[size_t(r) * D + col] = uint8_t(F.add(Ch[size_t(r) * D + col], 1));
                }
                matmul_u8(F, rs, rho_of(gi), &rho_all_[size_t(hi) * d * d], d, d, d);
                continue;
            }
            ++dims_.nontree_edges;
            // action consistency along this cycle
            matmul_u8(F, rs, rho_of(gi), rho_probe.data(), d, d, d);
            if (std::memcmp(rho_probe.data(), rho_of(hi), size_t(d) * d) != 0) {
                std::ostringstream os;
                os << "module action violates the relation of cycle: element " << gi
                   << " * generator " << s << " = element " << hi;
                throw precondition_error(os.str());
            }
            if (capped) continue;
            // constraint block rho(s) C_g + E_s - C_h = 0
            matmul_u8(F, rs, transport_of(gi), block.data(), d, d, D);
            const uint8_t* Ch = transport_of(hi);
            for (unsigned r = 0; r < d; ++r) {
                size_t col = size_t(s) * d + r;
                block[size_t(r) * D + col] = uint8_t(F.add(block[size_t(r) * D + col], 1));
            }
            for (unsigned r = 0; r < d; ++r) {
                bool nonzero = false;
                for (unsigned c = 0; c < D; ++c) {
                    row32[c] = F.sub(block[size_t(r) * D + c], Ch[size_t(r) * D + c]);
                    nonzero = nonzero || row32[c];
                }
                if (nonzero) ech.add_row(std::vector<uint32_t>(row32.begin(), row32.end()));
            }
            capped = ech.rank() == rank_cap;
        }
    }

    dims_.dim_z1 = D - ech.rank();
    if (dims_.dim_z1 < dims_.dim_b1) throw std::logic_error("Z^1 smaller than B^1");
    dims_.dim_h1 = dims_.dim_z1 - dims_.dim_b1;
}

const uint8_t* CocycleSolver::transport_of(uint32_t g) const {
    return &transport_[size_t(g) * action_.dim * width()];
}

const uint8_t* CocycleSolver::rho_of(uint32_t g) const {
    return &rho_all_[size_t(g) * action_.dim * action_.dim];
}

std::vector<uint32_t> CocycleSolver::evaluate(const Cocycle& c, uint32_t element) const {
    const FqField& F = table_->field();
    unsigned d = action_.dim, D = width();
    if (c.size() != D) throw precondition_error("cocycle length mismatch");
    std::vector<uint32_t> v(d, 0);
    const uint8_t* C = transport_of(element);
    for (unsigned i = 0; i < d; ++i) {
        uint32_t acc = 0;
        for (unsigned j = 0; j < D; ++j)
            if (C[size_t(i) * D + j] && c[j]) acc = F.add(acc, F.mul(C[size_t(i) * D + j], c[j]));
        v[i] = acc;
    }
    return v;
}

bool CocycleSolver::is_cocycle(const Cocycle& c) const {
    const FqField& F = table_->field();
    unsigned d = action_.dim;
    std::vector<std::vector<uint32_t>> vals(table_->size());
    for (uint32_t i = 0; i < table_->size(); ++i) vals[i] = evaluate(c, i);
    for (uint32_t gi = 0; gi < table_->size(); ++gi) {
        TruncMat g = table_->element(gi);
        for (uint16_t s = 0; s < table_->ngens(); ++s) {
            uint64_t key = localgrp::tm_pack(localgrp::tm_mul(g, table_->table.generators[s]));
            uint32_t hi = table_->table.index.at(key);
            // delta(gs) = rho(s) delta(g) + delta(s)
            for (unsigned i = 0; i < d; ++i) {
                uint32_t acc = c[size_t(s) * d + i];
                for (unsigned j = 0; j < d; ++j)
                    acc = F.add(acc, F.mul(action_.rho[s].at(i, j), vals[gi][j]));
                if (acc != vals[hi][i]) return false;
            }
        }
    }
    return true;
}

Cocycle CocycleSolver::coboundary(const std::vector<uint32_t>& x) const {
    const FqField& F = table_->field();
    unsigned d = action_.dim;
    if (x.size() != d) throw precondition_error("module element length mismatch");
    Cocycle c(width(), 0);
    for (unsigned s = 0; s < table_->ngens(); ++s)
        for (unsigned i = 0; i < d; ++i) {
            uint32_t acc = 0;
            for (unsigned j = 0; j < d; ++j) acc = F.add(acc, F.mul(action_.rho[s].at(i, j), x[j]));
            c[size_t(s) * d + i] = F.sub(acc, x[i]);  // x^s - x
        }
    return c;
}

CocycleSolver::Normalized CocycleSolver::normalize_cocycle(
    const Cocycle& c, const std::vector<uint32_t>& torus) const {
    const FqField& F = table_->field();
    unsigned d = action_.dim;
    uint32_t count_mod_p = uint32_t(torus.size() % F.p());
    if (count_mod_p == 0)
        throw precondition_error("torus order divisible by p; averaging needs gcd(|T|, p) = 1");
    uint32_t scale = F.inv(count_mod_p);

    std::vector<uint32_t> x(d, 0);
    for (uint32_t t : torus) {
        std::vector<uint32_t> v = evaluate(c, t);
        for (unsigned i = 0; i < d; ++i) x[i] = F.add(x[i], v[i]);
    }
    for (unsigned i = 0; i < d; ++i) x[i] = F.mul(x[i], scale);

    Cocycle cb = coboundary(x);
    Normalized out;
    out.average = x;
    out.cocycle.resize(width());
    for (size_t i = 0; i < cb.size(); ++i) out.cocycle[i] = F.add(c[i], cb[i]);
    return out;
}

H1Dimensions h1_dimension(const FiniteGroupTable& t, const ModuleAction& a) {
    return CocycleSolver(t, a).dims();
}

LiftResult lift_conjugacy(const FiniteGroupTable& H, const localgrp::GroupModel& model,
                          bool allow_outside_hypotheses) {
    const TruncRing& R = model.ring();
    const FqField& F = model.field();
    unsigned n = model.msize(), L = R.L;
    LiftResult res;
    res.hypotheses_met = F.q() > 9 && F.p() > 3;
    if (!res.hypotheses_met && !allow_outside_hypotheses)
        throw precondition_error(
            "lifting theorem hypotheses need q > 9 and p > 3 (pass the override to explore)");
    if (!(H.table.ring == R))
        throw precondition_error("subgroup table does not live over the model ring");

    // Standard copy over the residue field, and the reduction indexing.
    std::vector<TruncMat> gens = model.field_group_generators();
    std::vector<TruncMat> gens1;
    for (const TruncMat& g : gens) gens1.push_back(tm_reduce(g, 1));
    FiniteGroupTable S = enumerate_group(gens1, localgrp::enumeration_bound_from_env());
    if (H.size() != S.size()) {
        res.detail = "reduction mod u is not onto: |H| = " + std::to_string(H.size()) +
                     ", |G(F_q)| = " + std::to_string(S.size());
        return res;
    }
    std::unordered_map<uint64_t, uint32_t> by_reduction;
    for (uint32_t i = 0; i < H.size(); ++i) {
        uint64_t key = localgrp::tm_pack(tm_reduce(H.element(i), 1));
        if (!S.table.index.count(key) || !by_reduction.emplace(key, i).second) {
            res.detail = "reduction mod u is not an isomorphism onto G(F_q)";
            return res;
        }
    }

    std::vector<TruncMat> hgen, sgen_inv;
    std::vector<FqMat> sF, sFinv;
    for (size_t j = 0; j < gens.size(); ++j) {
        hgen.push_back(H.element(by_reduction.at(localgrp::tm_pack(gens1[j]))));
        sgen_inv.push_back(localgrp::tm_inverse(gens[j]));
        sF.push_back(to_fq(gens1[j]));
        sFinv.push_back(localgrp::fq_inverse(F, sF.back()));
    }

    TruncMat g = tm_identity(R, n), ginv = g;
    for (unsigned m = 1; m < L; ++m) {
        std::vector<FqMat> defect;
        bool all_zero = true;
        for (size_t j = 0; j < gens.size(); ++j) {
            TruncMat c = tm_mul(tm_mul(g, hgen[j]), ginv);
            TruncMat D = tm_mul(c, sgen_inv[j]);
            if (localgrp::tm_congruence_level(D) < m) {
                res.detail = "conjugated generator " + std::to_string(j) +
                             " not trivial mod u^" + std::to_string(m);
                return res;
            }
            FqMat del(n, n);
            for (unsigned a = 0; a < n; ++a)
                for (unsigned b = 0; b < n; ++b) del.at(a, b) = D.at(a, b, m);
            all_zero = all_zero && std::all_of(del.a.begin(), del.a.end(),
                                               [](uint32_t v) { return v == 0; });
            defect.push_back(std::move(del));
        }
        if (all_zero) continue;

        // solve s X s^-1 - X = defect_s over gl_n(F_q), all generators at once
        std::vector<std::vector<uint32_t>> rows;
        std::vector<uint32_t> rhs;
        for (size_t j = 0; j < gens.size(); ++j)
            for (unsigned i = 0; i < n; ++i)
                for (unsigned jj = 0; jj < n; ++jj) {
                    std::vector<uint32_t> row(size_t(n) * n, 0);
                    for (unsigned a = 0; a < n; ++a)
                        for (unsigned b = 0; b < n; ++b) {
                            uint32_t coef = F.mul(sF[j].at(i, a), sFinv[j].at(b, jj));
                            if (a == i && b == jj) coef = F.sub(coef, 1);
                            row[size_t(a) * n + b] = coef;
                        }
                    rows.push_back(std::move(row));
                    rhs.push_back(defect[j].at(i, jj));
                }
        localgrp::LinearSolution sol = localgrp::fq_solve(F, std::move(rows), n * n, &rhs);
        if (!sol.consistent) {
            res.residual_level = m;
            res.residual_defect = defect;
            res.detail = "defect cocycle at level " + std::to_string(m) +
                         " is not a coboundary; residual class reported";
            return res;
        }
        TruncMat x = tm_identity(R, n);
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b) x.at(a, b, m) = sol.particular[size_t(a) * n + b];
        g = tm_mul(x, g);
        ginv = localgrp::tm_inverse(g);
    }

    // exact post-check g H g^-1 = G(F_q) before returning anything
    for (uint32_t i = 0; i < H.size(); ++i) {
        TruncMat h = H.element(i);
        TruncMat conj = tm_mul(tm_mul(g, h), ginv);
        if (!(conj == embed_fq(R, to_fq(tm_reduce(h, 1))))) {
            res.detail = "post-check failed: conjugate of element " + std::to_string(i) +
                         " is not the standard copy";
            return res;
        }
    }
    res.success = true;
    res.conjugator = g;
    res.detail = "conjugated onto the standard copy at truncation " + std::to_string(L);
    return res;
}

VanishCert poly_vanish_check(uint32_t q, const SparsePoly& poly, uint64_t max_points) {
    const FqField& F = FqField::get(q);
    unsigned n = poly.nvars;
    for (const Monomial& t : poly.terms) {
        if (t.exps.size() != n) throw precondition_error("monomial arity mismatch");
        if (t.coeff >= q) throw precondition_error("coefficient outside F_q");
        for (unsigned e : t.exps)
            if (e > q - 2)
                throw precondition_error("degree " + std::to_string(e) + " exceeds q-2 = " +
                                         std::to_string(q - 2) +
                                         ", outside the vanishing-lemma hypothesis");
    }
    uint64_t points = 1;
    for (unsigned i = 0; i < n; ++i) {
        points *= q - 1;
        if (points > max_points)
            throw precondition_error("(q-1)^n exceeds the exhaustion bound");
    }

    VanishCert cert;
    // combine like monomials; the lemma's conclusion is about this table
    std::map<std::vector<unsigned>, uint32_t> combined;
    for (const Monomial& t : poly.terms) {
        auto [it, fresh] = combined.emplace(t.exps, t.coeff);
        if (!fresh) it->second = F.add(it->second, t.coeff);
    }
    cert.zero_polynomial = std::all_of(combined.begin(), combined.end(),
                                       [](const auto& kv) { return kv.second == 0; });

    std::vector<std::vector<uint32_t>> pw(q, std::vector<uint32_t>(q, 1));
    for (uint32_t v = 0; v < q; ++v)
        for (uint32_t e = 1; e < q; ++e) pw[v][e] = F.mul(pw[v][e - 1], v);

    std::vector<uint32_t> point(n, 1);
    cert.vanishes_on_torus = true;
    for (uint64_t step = 0; step < points; ++step) {
        uint32_t value = 0;
        for (const auto& [exps, coeff] : combined) {
            if (!coeff) continue;
            uint32_t term = coeff;
            for (unsigned i = 0; i < n; ++i) term = F.mul(term, pw[point[i]][exps[i]]);
            value = F.add(value, term);
        }
        ++cert.points_checked;
        if (value != 0) {
            cert.vanishes_on_torus = false;
            cert.witness = point;
            break;
        }
        for (unsigned i = 0; i < n; ++i) {  // odometer over F_q^*
            if (++point[i] < q) break;
            point[i] = 1;
        }
    }
    cert.lemma_consistent = !cert.vanishes_on_torus || cert.zero_polynomial;
    return cert;
}

SpanRankResult root_span_rank(const rootsys::RootSystem& rs, uint32_t q, uint64_t max_rows) {
    const FqField& F = FqField::get(q);
    unsigned r = unsigned(rs.rank());
    uint64_t rows = 1;
    for (unsigned i = 0; i < r; ++i) {
        rows *= q - 1;
        if (rows > max_rows) throw precondition_error("(q-1)^r exceeds the exhaustion bound");
    }

    // primitive root of F_q^*
    uint32_t gen = 0;
    for (uint32_t c = 1; c < q && !gen; ++c) {
        uint32_t v = c, order = 1;
        while (v != 1) { v = F.mul(v, c); ++order; }
        if (order == q - 1) gen = c;
    }
    std::vector<uint32_t> power(q - 1);
    power[0] = 1;
    for (uint32_t e = 1; e < q - 1; ++e) power[e] = F.mul(power[e - 1], gen);

    const auto& roots = rs.roots();
    std::vector<std::vector<int>> w;
    for (const auto& b : roots) w.push_back(rs.weight_coords(b));

    SpanRankResult out;
    out.full = unsigned(roots.size()) + 1;
    out.rows = rows;
    localgrp::FqEchelon ech(F, out.full);
    std::vector<long> logs(r, 0);
    long modulus = long(q) - 1;
    for (uint64_t step = 0; step < rows; ++step) {
        std::vector<uint32_t> row(out.full);
        row[0] = 1;
        for (size_t b = 0; b < roots.size(); ++b) {
            long e = 0;
            for (unsigned i = 0; i < r; ++i) e += logs[i] * w[b][i];
            e %= modulus;
            if (e < 0) e += modulus;
            row[b + 1] = power[size_t(e)];
        }
        ech.add_row(std::move(row));
        if (ech.rank() == out.full) break;
        for (unsigned i = 0; i < r; ++i) {
            if (++logs[i] < modulus) break;
            logs[i] = 0;
        }
    }
    out.rank = ech.rank();
    return out;
}

}  // namespace covollab::cohomlab
