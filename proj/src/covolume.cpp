#include "covollab/covolume.hpp"

#include "covollab/fq.hpp"

#include <algorithm>
#include <sstream>

namespace covollab::covolume {

using chevorder::ExponentProfile;
using rootsys::RootSystemType;

namespace {

// ---- dense univariate polynomials over Q, lowest coefficient first ----

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return int(p.size()) - 1; }  // -1 for zero

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * long(i));
    trim(d);
    return d;
}

// remainder of a by b, b != 0
QPoly rem(QPoly a, const QPoly& b) {
    trim(a);
    while (degree(a) >= degree(b)) {
        mpq_class c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

QPoly divide_exact(QPoly a, const QPoly& b) {
    trim(a);
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    while (degree(a) >= degree(b)) {
        mpq_class c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("inexact polynomial division");
    return q;
}

QPoly monic_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

int sign_at(const QPoly& p, const mpq_class& x) {
    mpq_class v = 0;
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return sgn(v);
}

int sign_at_infinity(const QPoly& p, bool plus) {
    if (p.empty()) return 0;
    int s = sgn(p.back());
    if (!plus && (degree(p) % 2 == 1)) s = -s;
    return s;
}

std::vector<QPoly> sturm_chain(const QPoly& squarefree) {
    std::vector<QPoly> chain{squarefree, derivative(squarefree)};
    while (!chain.back().empty() && degree(chain.back()) > 0) {
        QPoly r = rem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

unsigned variations(const std::vector<int>& signs) {
    unsigned v = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

// distinct real roots of the squarefree polynomial in (a, b], both
// endpoints required to be non-roots
unsigned sturm_count_open(const std::vector<QPoly>& chain, const mpq_class& a,
                          const mpq_class& b) {
    std::vector<int> sa, sb;
    for (const auto& p : chain) {
        sa.push_back(sign_at(p, a));
        sb.push_back(sign_at(p, b));
    }
    return variations(sa) - variations(sb);
}

unsigned sturm_count_real(const std::vector<QPoly>& chain) {
    std::vector<int> sa, sb;
    for (const auto& p : chain) {
        sa.push_back(sign_at_infinity(p, false));
        sb.push_back(sign_at_infinity(p, true));
    }
    return variations(sa) - variations(sb);
}

}  // namespace

namespace detail {

std::vector<mpz_class> symmetric_transform(const ZetaPolynomial& z) {
    unsigned g = z.genus;
    // w_0 = 2, w_1 = y, w_{k+1} = y w_k - q w_{k-1}; then
    // P(T)/T^g = a_g + sum_{k=1..g} a_{g-k} w_k(y) at y = 1/T + qT.
    std::vector<std::vector<mpz_class>> w(g + 1);
    w[0] = {mpz_class(2)};
    if (g >= 1) w[1] = {mpz_class(0), mpz_class(1)};
    mpz_class q(static_cast<unsigned long>(z.q));
    for (unsigned k = 2; k <= g; ++k) {
        std::vector<mpz_class> next(k + 1, mpz_class(0));
        for (size_t i = 0; i < w[k - 1].size(); ++i) next[i + 1] += w[k - 1][i];
        for (size_t i = 0; i < w[k - 2].size(); ++i) next[i] -= q * w[k - 2][i];
        w[k] = std::move(next);
    }
    std::vector<mpz_class> S(g + 1, mpz_class(0));
    S[0] = z.coeffs[g];
    for (unsigned k = 1; k <= g; ++k)
        for (size_t i = 0; i < w[k].size(); ++i) S[i] += z.coeffs[g - k] * w[k][i];
    return S;
}

SturmVerdict roots_on_weil_interval(const std::vector<mpz_class>& S, uint64_t q) {
    SturmVerdict v{};
    QPoly s;
    for (const auto& c : S) s.push_back(mpq_class(c));
    trim(s);
    v.degree = s.empty() ? 0 : unsigned(degree(s));
    if (v.degree == 0) {
        v.all_roots_in_interval = true;
        return v;
    }
    QPoly sf = divide_exact(s, monic_gcd(s, derivative(s)));
    auto chain = sturm_chain(sf);
    unsigned real_roots = sturm_count_real(chain);
    v.distinct_real_roots_in_interval = real_roots;  // refined below
    if (real_roots != unsigned(degree(sf))) {
        v.all_roots_in_interval = false;
        return v;
    }

    // All roots real; it remains to bound them by 2 sqrt q, i.e. every
    // root w of W(w) = prod (w - s_i^2) satisfies w <= 4q.  W is the
    // even part of sf(x) sf(-x) up to sign; roots exactly at 4q are
    // admissible, so divide them out before counting above 4q.
    QPoly sf_neg = sf;
    for (size_t i = 1; i < sf_neg.size(); i += 2) sf_neg[i] = -sf_neg[i];
    QPoly prod(sf.size() + sf_neg.size() - 1, mpq_class(0));
    for (size_t i = 0; i < sf.size(); ++i)
        for (size_t j = 0; j < sf_neg.size(); ++j) prod[i + j] += sf[i] * sf_neg[j];
    QPoly W;
    for (size_t i = 0; i < prod.size(); i += 2) W.push_back(prod[i]);
    trim(W);
    if (sgn(W.back()) < 0)
        for (auto& c : W) c = -c;

    mpq_class fourq(static_cast<unsigned long>(4 * q));
    QPoly lin = {-fourq, mpq_class(1)};
    while (!W.empty() && degree(W) >= 1 && sign_at(W, fourq) == 0) W = divide_exact(W, lin);
    unsigned above = 0;
    if (degree(W) >= 1) {
        // Cauchy bound: all roots of W lie below 1 + max |c_i| / lead
        mpq_class bound = 0;
        for (size_t i = 0; i + 1 < W.size(); ++i) bound = std::max(bound, mpq_class(abs(W[i])));
        bound = bound / W.back() + 1 + fourq;
        QPoly Wsf = divide_exact(W, monic_gcd(W, derivative(W)));
        if (sign_at(Wsf, fourq) == 0) throw std::logic_error("unremoved endpoint root");
        above = sturm_count_open(sturm_chain(Wsf), fourq, bound);
    }
    v.all_roots_in_interval = above == 0;
    return v;
}

}  // namespace detail

ZetaReport validate_zeta(const ZetaPolynomial& z) {
    ZetaReport rep;
    auto check = [&](const std::string& name, bool pass, std::string detail) {
        rep.checks.push_back({name, pass, std::move(detail)});
    };

    bool qok = true;
    try {
        chevorder::factor_prime_power(z.q);
    } catch (const precondition_error& e) {
        qok = false;
        check("prime_power_q", false, e.what());
    }

    bool deg_ok = z.coeffs.size() == size_t(2 * z.genus + 1);
    check("degree_2g", deg_ok,
          "coefficient count " + std::to_string(z.coeffs.size()) + " for genus " +
              std::to_string(z.genus));
    bool a0_ok = deg_ok && z.coeffs[0] == 1;
    if (deg_ok) check("constant_term_1", a0_ok, "a_0 = " + z.coeffs[0].get_str());

    bool sym_ok = deg_ok;
    if (deg_ok) {
        mpz_class q(static_cast<unsigned long>(z.q));
        for (unsigned i = 0; i <= 2 * z.genus; ++i) {
            // a_{2g-i} = q^{g-i} a_i for i <= g
            if (i > z.genus) break;
            mpz_class qpow;
            mpz_pow_ui(qpow.get_mpz_t(), q.get_mpz_t(), z.genus - i);
            if (z.coeffs[2 * z.genus - i] != qpow * z.coeffs[i]) {
                sym_ok = false;
                check("functional_equation", false,
                      "a_" + std::to_string(2 * z.genus - i) + " != q^(g-" + std::to_string(i) +
                          ") a_" + std::to_string(i));
                break;
            }
        }
        if (sym_ok) check("functional_equation", true, "");
    }

    bool roots_ok = false;
    if (deg_ok && sym_ok && a0_ok && qok) {
        auto verdict = detail::roots_on_weil_interval(detail::symmetric_transform(z), z.q);
        roots_ok = verdict.all_roots_in_interval;
        std::ostringstream os;
        os << verdict.distinct_real_roots_in_interval << " of " << verdict.degree
           << " symmetric-transform roots real";
        check("root_modulus_sqrt_q", roots_ok, os.str());
    }

    rep.valid = qok && deg_ok && a0_ok && sym_ok && (z.genus == 0 || roots_ok);
    return rep;
}

CovolumeResult covol_rational(RootSystemType t, uint64_t q) {
    chevorder::factor_prime_power(q);
    ExponentProfile prof = chevorder::exponents(t);
    mpq_class v(1);
    mpz_class qz(static_cast<unsigned long>(q));
    for (long m : prof.exponents) {
        mpz_class qm;
        mpz_pow_ui(qm.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(m));
        // (1 - q^-m)^-1 = q^m / (q^m - 1)
        v *= mpq_class(qm) / mpq_class(qm - 1);
    }
    v.canonicalize();
    return {v, t, q, 0};
}

CovolumeResult covol_genus(RootSystemType t, const ZetaPolynomial& z) {
    ZetaReport rep = validate_zeta(z);
    if (!rep.valid) {
        std::string what = "invalid zeta numerator:";
        for (const auto& c : rep.checks)
            if (!c.pass) what += " [" + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "]";
        throw precondition_error(what);
    }
    ExponentProfile prof = chevorder::exponents(t);
    CovolumeResult base = covol_rational(t, z.q);

    mpz_class qz(static_cast<unsigned long>(z.q));
    mpq_class v = base.value;
    for (long m : prof.exponents) {
        // P(q^-(m+1))
        mpz_class qpow;
        mpz_pow_ui(qpow.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(m + 1));
        mpq_class x = mpq_class(1) / mpq_class(qpow), pv(0);
        for (size_t i = z.coeffs.size(); i-- > 0;) pv = pv * x + mpq_class(z.coeffs[i]);
        v *= pv;
    }
    mpz_class qg;
    mpz_pow_ui(qg.get_mpz_t(), qz.get_mpz_t(),
               static_cast<unsigned long>(uint64_t(z.genus) * uint64_t(prof.dim())));
    v *= mpq_class(qg);
    v.canonicalize();
    return {v, t, z.q, z.genus};
}

RationalInterval euler_enclosure(uint64_t x, unsigned depth) {
    if (x < 2) throw precondition_error("euler product needs x >= 2");
    if (depth < 1) throw precondition_error("depth must be >= 1");
    mpz_class xz(static_cast<unsigned long>(x));
    mpq_class partial(1);
    mpz_class xi(1);
    for (unsigned i = 1; i <= depth; ++i) {
        xi *= xz;
        partial *= mpq_class(xi) / mpq_class(xi - 1);
    }
    partial.canonicalize();
    // tail exponent bound t = 2 sum_{i>depth} x^-i = 2 / (x^depth (x-1))
    mpq_class t = mpq_class(2) / (mpq_class(xi) * mpq_class(xz - 1));
    mpq_class factor;
    if (t < 1) {
        factor = 1 / (1 - t);  // e^t <= 1/(1-t)
    } else {
        factor = 3;  // only reachable at x = 2, depth = 1, where t = 1 and e^t < 3
    }
    mpq_class hi = partial * factor;
    hi.canonicalize();
    return {partial, hi};
}

bool BoundReport::all_pass() const {
    for (const auto& c : certs)
        if (!c.pass) return false;
    return true;
}

BoundReport bound_audits(RootSystemType t, uint64_t q, const ZetaPolynomial* zeta) {
    BoundReport rep;
    rep.rational_value = covol_rational(t, q).value;

    bool is_spin4 = t.family == rootsys::Family::D && t.rank == 2;
    uint64_t threshold = is_spin4 ? 4 : 3;
    rep.certs.push_back({"q_threshold", q >= threshold,
                         "q = " + std::to_string(q) + ", the bound needs q >= " +
                             std::to_string(threshold) + " for " + t.name()});
    rep.certs.push_back({"covolume_lt_2", rep.rational_value < 2,
                         t.name() + " genus-0 covolume = " + rep.rational_value.get_str()});

    if (zeta) {
        ZetaReport zrep = validate_zeta(*zeta);
        std::string zdetail;
        for (const auto& c : zrep.checks)
            if (!c.pass) zdetail += c.name + " ";
        rep.certs.push_back({"zeta_valid", zrep.valid, zdetail});
        if (zrep.valid && zeta->genus > 0) {
            mpq_class v = covol_genus(t, *zeta).value;
            rep.genus_value = v;

            // (q - sqrt q)^(2gr) = sum C(e,k) q^(e-k) (-sqrt q)^k, split by
            // parity of k into A + B sqrt q with exact integer parts
            unsigned long e = 2ul * zeta->genus * unsigned(t.rank);
            mpq_class A(0), B(0);
            mpz_class binom, qz(static_cast<unsigned long>(q));
            for (unsigned long k = 0; k <= e; ++k) {
                mpz_class weight;
                mpz_bin_uiui(binom.get_mpz_t(), e, k);
                mpz_pow_ui(weight.get_mpz_t(), qz.get_mpz_t(),
                           static_cast<unsigned long>(e - k + k / 2));
                mpz_class term = binom * weight;
                if (k % 2 == 0) A += mpq_class(term);
                else B -= mpq_class(term);
            }
            bool ge = sign_with_sqrt(v - A, -B, mpq_class(static_cast<unsigned long>(q))) >= 0;
            RationalInterval sq = sqrt_enclosure(mpq_class(static_cast<unsigned long>(q)));
            rep.certs.push_back(
                {"genus_lower_bound", ge,
                 "covolume " + v.get_str() + " >= (q - sqrt q)^(2gr), sqrt q in " + sq.str()});
            rep.certs.push_back({"genus_gt_2", v > 2, "covolume " + v.get_str()});
        }
    }
    return rep;
}

mpq_class index_lower_bound(const mpz_class& group_order, const mpz_class& intersection_order) {
    if (group_order <= 0 || intersection_order <= 0)
        throw precondition_error("orders must be positive");
    if (intersection_order > group_order)
        throw precondition_error("intersection order exceeds the group order");
    mpq_class r(group_order);
    r /= mpq_class(intersection_order);
    r.canonicalize();
    return r;
}

}  // namespace covollab::covolume
