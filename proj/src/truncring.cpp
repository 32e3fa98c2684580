#include "covollab/truncring.hpp"

namespace covollab::localgrp {

TruncRing::Elem TruncRing::one() const {
    Elem e(L, 0);
    e[0] = 1;
    return e;
}

TruncRing::Elem TruncRing::from_fq(uint32_t c) const {
    Elem e(L, 0);
    e[0] = c;
    return e;
}

TruncRing::Elem TruncRing::u_times_fq(unsigned k, uint32_t c) const {
    if (k >= L) throw precondition_error("power exceeds truncation");
    Elem e(L, 0);
    e[k] = c;
    return e;
}

TruncRing::Elem TruncRing::add(const Elem& a, const Elem& b) const {
    Elem e(L);
    for (unsigned k = 0; k < L; ++k) e[k] = F->add(a[k], b[k]);
    return e;
}

TruncRing::Elem TruncRing::sub(const Elem& a, const Elem& b) const {
    Elem e(L);
    for (unsigned k = 0; k < L; ++k) e[k] = F->sub(a[k], b[k]);
    return e;
}

TruncRing::Elem TruncRing::neg(const Elem& a) const {
    Elem e(L);
    for (unsigned k = 0; k < L; ++k) e[k] = F->neg(a[k]);
    return e;
}

TruncRing::Elem TruncRing::mul(const Elem& a, const Elem& b) const {
    Elem e(L, 0);
    for (unsigned i = 0; i < L; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; i + j < L; ++j)
            if (b[j]) e[i + j] = F->add(e[i + j], F->mul(a[i], b[j]));
    }
    return e;
}

TruncRing::Elem TruncRing::inv(const Elem& a) const {
    if (!is_unit(a)) throw precondition_error("non-unit has no inverse in the truncated ring");
    // coefficientwise back-substitution against a * x = 1
    Elem x(L, 0);
    uint32_t c0 = F->inv(a[0]);
    x[0] = c0;
    for (unsigned k = 1; k < L; ++k) {
        uint32_t s = 0;
        for (unsigned j = 0; j < k; ++j) s = F->add(s, F->mul(a[k - j], x[j]));
        x[k] = F->mul(F->neg(s), c0);
    }
    return x;
}

unsigned TruncRing::val(const Elem& a) const {
    for (unsigned k = 0; k < L; ++k)
        if (a[k]) return k;
    return L;
}

TruncRing::Elem TruncMat::entry(unsigned i, unsigned j) const {
    TruncRing::Elem e(R.L);
    for (unsigned k = 0; k < R.L; ++k) e[k] = at(i, j, k);
    return e;
}

void TruncMat::set_entry(unsigned i, unsigned j, const TruncRing::Elem& e) {
    for (unsigned k = 0; k < R.L; ++k) at(i, j, k) = e[k];
}

TruncMat tm_identity(TruncRing R, unsigned n) {
    TruncMat m(R, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i, 0) = 1;
    return m;
}

TruncMat tm_scalar(TruncRing R, unsigned n, const TruncRing::Elem& c) {
    TruncMat m(R, n);
    for (unsigned i = 0; i < n; ++i) m.set_entry(i, i, c);
    return m;
}

TruncMat tm_mul(const TruncMat& x, const TruncMat& y) {
    const TruncRing& R = x.R;
    const FqField& F = *R.F;
    unsigned n = x.n, L = R.L;
    TruncMat z(R, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            const uint32_t* xe = &x.a[(size_t(i) * n + k) * L];
            bool nz = false;
            for (unsigned c = 0; c < L && !nz; ++c) nz = xe[c] != 0;
            if (!nz) continue;
            for (unsigned j = 0; j < n; ++j) {
                const uint32_t* ye = &y.a[(size_t(k) * n + j) * L];
                uint32_t* ze = &z.a[(size_t(i) * n + j) * L];
                for (unsigned c1 = 0; c1 < L; ++c1) {
                    if (!xe[c1]) continue;
                    for (unsigned c2 = 0; c1 + c2 < L; ++c2)
                        if (ye[c2]) ze[c1 + c2] = F.add(ze[c1 + c2], F.mul(xe[c1], ye[c2]));
                }
            }
        }
    return z;
}

TruncMat tm_transpose(const TruncMat& x) {
    TruncMat z(x.R, x.n);
    for (unsigned i = 0; i < x.n; ++i)
        for (unsigned j = 0; j < x.n; ++j)
            for (unsigned k = 0; k < x.R.L; ++k) z.at(j, i, k) = x.at(i, j, k);
    return z;
}

TruncMat tm_inverse(const TruncMat& x) {
    const TruncRing& R = x.R;
    unsigned n = x.n;
    TruncMat a = x, inv = tm_identity(R, n);
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = n;
        for (unsigned i = col; i < n; ++i)
            if (a.at(i, col, 0) != 0) { piv = i; break; }
        if (piv == n) throw precondition_error("matrix not invertible over the local ring");
        if (piv != col)
            for (unsigned j = 0; j < n; ++j)
                for (unsigned k = 0; k < R.L; ++k) {
                    std::swap(a.at(piv, j, k), a.at(col, j, k));
                    std::swap(inv.at(piv, j, k), inv.at(col, j, k));
                }
        TruncRing::Elem s = R.inv(a.entry(col, col));
        for (unsigned j = 0; j < n; ++j) {
            a.set_entry(col, j, R.mul(a.entry(col, j), s));
            inv.set_entry(col, j, R.mul(inv.entry(col, j), s));
        }
        for (unsigned i = 0; i < n; ++i) {
            if (i == col) continue;
            TruncRing::Elem c = a.entry(i, col);
            if (R.is_zero(c)) continue;
            for (unsigned j = 0; j < n; ++j) {
                a.set_entry(i, j, R.sub(a.entry(i, j), R.mul(c, a.entry(col, j))));
                inv.set_entry(i, j, R.sub(inv.entry(i, j), R.mul(c, inv.entry(col, j))));
            }
        }
    }
    return inv;
}

TruncRing::Elem tm_det(const TruncMat& x) {
    // expansion by minors; n <= 4 throughout this project
    const TruncRing& R = x.R;
    unsigned n = x.n;
    if (n == 1) return x.entry(0, 0);
    TruncRing::Elem det = R.zero();
    for (unsigned j = 0; j < n; ++j) {
        TruncMat minor(R, n - 1);
        for (unsigned i = 1; i < n; ++i) {
            unsigned cj = 0;
            for (unsigned c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.set_entry(i - 1, cj++, x.entry(i, c));
            }
        }
        TruncRing::Elem term = R.mul(x.entry(0, j), tm_det(minor));
        det = (j % 2 == 0) ? R.add(det, term) : R.sub(det, term);
    }
    return det;
}

TruncMat tm_reduce(const TruncMat& x, unsigned l) {
    if (l < 1 || l > x.R.L) throw precondition_error("reduction level out of range");
    TruncRing R2(*x.R.F, l);
    TruncMat z(R2, x.n);
    for (unsigned i = 0; i < x.n; ++i)
        for (unsigned j = 0; j < x.n; ++j)
            for (unsigned k = 0; k < l; ++k) z.at(i, j, k) = x.at(i, j, k);
    return z;
}

unsigned tm_congruence_level(const TruncMat& x) {
    const TruncRing& R = x.R;
    unsigned level = R.L;
    for (unsigned i = 0; i < x.n; ++i)
        for (unsigned j = 0; j < x.n; ++j) {
            TruncRing::Elem e = x.entry(i, j);
            if (i == j) e[0] = R.F->sub(e[0], 1);
            level = std::min(level, R.val(e));
        }
    return level;
}

namespace {
unsigned bits_for(uint32_t q) {
    unsigned b = 0;
    while ((1u << b) < q) ++b;
    return b;
}
}  // namespace

bool tm_packable(TruncRing R, unsigned n) {
    return size_t(n) * n * R.L * bits_for(R.F->q()) <= 64;
}

uint64_t tm_pack(const TruncMat& x) {
    unsigned b = bits_for(x.R.F->q());
    size_t total = size_t(x.n) * x.n * x.R.L;
    if (total * b > 64) throw precondition_error("matrix shape too large for 64-bit keys");
    uint64_t key = 0;
    for (size_t i = total; i-- > 0;) key = (key << b) | x.a[i];
    return key;
}

TruncMat tm_unpack(TruncRing R, unsigned n, uint64_t key) {
    unsigned b = bits_for(R.F->q());
    TruncMat x(R, n);
    uint64_t mask = (b == 64) ? ~0ull : ((1ull << b) - 1);
    for (size_t i = 0; i < x.a.size(); ++i) {
        x.a[i] = uint32_t(key & mask);
        key >>= b;
    }
    return x;
}

}  // namespace covollab::localgrp
