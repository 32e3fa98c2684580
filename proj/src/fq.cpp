#include "covollab/fq.hpp"

#include <map>
#include <mutex>

namespace covollab::localgrp {

namespace {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Built-in irreducible moduli, coefficients over F_p lowest first.
// 4: x^2+x+1   8: x^3+x+1   9: x^2+1   16: x^4+x+1
// 25: x^2+x+1  27: x^3+2x+1
struct ModEntry {
    uint32_t p, e;
    std::vector<uint32_t> mod;
};
const ModEntry* find_modulus(uint32_t q) {
    static const std::vector<ModEntry> table = {
        {2, 2, {1, 1, 1}},       {2, 3, {1, 1, 0, 1}}, {3, 2, {1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}}, {5, 2, {1, 1, 1}},    {3, 3, {1, 2, 0, 1}},
    };
    for (const auto& m : table) {
        uint32_t qq = 1;
        for (uint32_t i = 0; i < m.e; ++i) qq *= m.p;
        if (qq == q) return &m;
    }
    return nullptr;
}

using Poly = std::vector<uint32_t>;  // over F_p, lowest first, may have high zeros

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, uint32_t p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = uint32_t((prod[i + j] + uint64_t(a[i]) * b[j]) % p);
    // mod is monic of degree e
    size_t e = mod.size() - 1;
    for (size_t d = prod.size(); d-- > e;) {
        uint32_t c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (size_t k = 0; k < e; ++k) {
            uint64_t t = uint64_t(c) * mod[k] % p;
            prod[d - e + k] = uint32_t((prod[d - e + k] + p - t) % p);
        }
    }
    prod.resize(e, 0);
    return prod;
}

// Irreducibility by exhaustive monic-divisor check; only runs on the
// tiny built-in moduli.
bool poly_irreducible(const Poly& mod, uint32_t p) {
    size_t e = mod.size() - 1;
    for (size_t d = 1; 2 * d <= e; ++d) {
        // all monic polynomials of degree d
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            Poly div(d + 1, 0);
            uint64_t t = idx;
            for (size_t i = 0; i < d; ++i) { div[i] = uint32_t(t % p); t /= p; }
            div[d] = 1;
            // remainder of mod by div
            Poly rem = mod;
            for (size_t k = rem.size(); k-- > d;) {
                uint32_t c = rem[k];
                if (!c) continue;
                for (size_t j = 0; j <= d; ++j) {
                    uint64_t s = uint64_t(c) * div[j] % p;
                    rem[k - d + j] = uint32_t((rem[k - d + j] + p - s) % p);
                }
            }
            bool zero = true;
            for (size_t j = 0; j < d; ++j) zero = zero && rem[j] == 0;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

FqField::FqField(uint32_t p, uint32_t e, std::vector<uint32_t> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    q_ = 1;
    for (uint32_t i = 0; i < e_; ++i) q_ *= p_;
    if (e_ == 1) return;
    if (!poly_irreducible(modulus_, p_))
        throw std::logic_error("reducible field modulus");

    add_.resize(size_t(q_) * q_);
    mul_.resize(size_t(q_) * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    auto dig = [&](uint32_t a) {
        Poly d(e_, 0);
        for (uint32_t i = 0; i < e_; ++i) { d[i] = a % p_; a /= p_; }
        return d;
    };
    auto undig = [&](const Poly& d) {
        uint32_t v = 0;
        for (uint32_t i = e_; i-- > 0;) v = v * p_ + d[i];
        return v;
    };
    for (uint32_t a = 0; a < q_; ++a) {
        Poly da = dig(a), dn(e_);
        for (uint32_t i = 0; i < e_; ++i) dn[i] = (p_ - da[i]) % p_;
        neg_[a] = undig(dn);
        for (uint32_t b = 0; b < q_; ++b) {
            Poly db = dig(b), ds(e_);
            for (uint32_t i = 0; i < e_; ++i) ds[i] = (da[i] + db[i]) % p_;
            add_[size_t(a) * q_ + b] = undig(ds);
            mul_[size_t(a) * q_ + b] = undig(poly_mul_mod(da, db, modulus_, p_));
        }
    }
    for (uint32_t a = 1; a < q_; ++a)
        for (uint32_t b = 1; b < q_; ++b)
            if (mul_[size_t(a) * q_ + b] == 1) { inv_[a] = b; break; }
}

const FqField& FqField::get(uint32_t q) {
    static std::map<uint32_t, FqField> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    if (is_prime_u32(q)) {
        auto [jt, ok] = cache.emplace(q, FqField(q, 1, {}));
        return jt->second;
    }
    const ModEntry* m = find_modulus(q);
    if (!m)
        throw precondition_error(
            "unsupported field size " + std::to_string(q) +
            " (primes, or one of 4, 8, 9, 16, 25, 27)");
    auto [jt, ok] = cache.emplace(q, FqField(m->p, m->e, m->mod));
    return jt->second;
}

uint32_t FqField::inv(uint32_t a) const {
    if (a == 0) throw precondition_error("inverse of zero field element");
    if (e_ > 1) return inv_[a];
    // extended Euclid mod p
    int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
        int64_t qq = r / nr;
        t -= qq * nt; std::swap(t, nt);
        r -= qq * nr; std::swap(r, nr);
    }
    if (t < 0) t += p_;
    return uint32_t(t);
}

uint32_t FqField::pow(uint32_t a, long long e) const {
    if (e < 0) { a = inv(a); e = -e; }
    uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::vector<uint32_t> FqField::basis() const {
    std::vector<uint32_t> b(e_);
    uint32_t v = 1;
    for (uint32_t i = 0; i < e_; ++i) { b[i] = v; v *= p_; }
    return b;
}

std::vector<uint32_t> FqField::digits(uint32_t a) const {
    std::vector<uint32_t> d(e_);
    for (uint32_t i = 0; i < e_; ++i) { d[i] = a % p_; a /= p_; }
    return d;
}

FqMat FqMat::identity(uint32_t n) {
    FqMat m(n, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FqMat fq_mul(const FqField& F, const FqMat& x, const FqMat& y) {
    if (x.m != y.n) throw std::logic_error("fq_mul shape");
    FqMat z(x.n, y.m);
    for (uint32_t i = 0; i < x.n; ++i)
        for (uint32_t k = 0; k < x.m; ++k) {
            uint32_t v = x.at(i, k);
            if (!v) continue;
            for (uint32_t j = 0; j < y.m; ++j)
                z.at(i, j) = F.add(z.at(i, j), F.mul(v, y.at(k, j)));
        }
    return z;
}

FqMat fq_transpose(const FqMat& x) {
    FqMat z(x.m, x.n);
    for (uint32_t i = 0; i < x.n; ++i)
        for (uint32_t j = 0; j < x.m; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

FqMat fq_inverse(const FqField& F, const FqMat& x) {
    if (x.n != x.m) throw std::logic_error("fq_inverse shape");
    FqMat a = x, inv = FqMat::identity(x.n);
    for (uint32_t col = 0; col < x.n; ++col) {
        uint32_t piv = col;
        while (piv < x.n && a.at(piv, col) == 0) ++piv;
        if (piv == x.n) throw precondition_error("singular matrix");
        if (piv != col)
            for (uint32_t j = 0; j < x.n; ++j) {
                std::swap(a.a[size_t(piv) * x.n + j], a.a[size_t(col) * x.n + j]);
                std::swap(inv.a[size_t(piv) * x.n + j], inv.a[size_t(col) * x.n + j]);
            }
        uint32_t s = F.inv(a.at(col, col));
        for (uint32_t j = 0; j < x.n; ++j) {
            a.at(col, j) = F.mul(a.at(col, j), s);
            inv.at(col, j) = F.mul(inv.at(col, j), s);
        }
        for (uint32_t i = 0; i < x.n; ++i) {
            if (i == col) continue;
            uint32_t c = a.at(i, col);
            if (!c) continue;
            for (uint32_t j = 0; j < x.n; ++j) {
                a.at(i, j) = F.sub(a.at(i, j), F.mul(c, a.at(col, j)));
                inv.at(i, j) = F.sub(inv.at(i, j), F.mul(c, inv.at(col, j)));
            }
        }
    }
    return inv;
}

uint32_t fq_det(const FqField& F, FqMat x) {
    if (x.n != x.m) throw std::logic_error("fq_det shape");
    uint32_t det = 1;
    for (uint32_t col = 0; col < x.n; ++col) {
        uint32_t piv = col;
        while (piv < x.n && x.at(piv, col) == 0) ++piv;
        if (piv == x.n) return 0;
        if (piv != col) {
            for (uint32_t j = 0; j < x.n; ++j)
                std::swap(x.a[size_t(piv) * x.n + j], x.a[size_t(col) * x.n + j]);
            det = F.neg(det);
        }
        det = F.mul(det, x.at(col, col));
        uint32_t s = F.inv(x.at(col, col));
        for (uint32_t i = col + 1; i < x.n; ++i) {
            uint32_t c = F.mul(x.at(i, col), s);
            if (!c) continue;
            for (uint32_t j = col; j < x.n; ++j)
                x.at(i, j) = F.sub(x.at(i, j), F.mul(c, x.at(col, j)));
        }
    }
    return det;
}

void FqEchelon::reduce(std::span<uint32_t> row) const {
    const FqField& F = *F_;
    for (size_t k = 0; k < rows_.size(); ++k) {
        uint32_t c = row[pivot_col_[k]];
        if (!c) continue;
        const auto& pr = rows_[k];
        for (uint32_t j = uint32_t(pivot_col_[k]); j < width_; ++j)
            if (pr[j]) row[j] = F.sub(row[j], F.mul(c, pr[j]));
    }
}

bool FqEchelon::add_row(std::vector<uint32_t> row) {
    reduce(row);
    uint32_t lead = width_;
    for (uint32_t j = 0; j < width_; ++j)
        if (row[j]) { lead = j; break; }
    if (lead == width_) return false;
    const FqField& F = *F_;
    uint32_t s = F.inv(row[lead]);
    for (uint32_t j = lead; j < width_; ++j) row[j] = F.mul(row[j], s);
    rows_.push_back(std::move(row));
    pivot_col_.push_back(int(lead));
    return true;
}

LinearSolution fq_solve(const FqField& F, std::vector<std::vector<uint32_t>> rows,
                        uint32_t unknowns, const std::vector<uint32_t>* rhs) {
    // Augment with rhs as the last column when present.
    uint32_t width = unknowns + (rhs ? 1 : 0);
    if (rhs) {
        for (size_t i = 0; i < rows.size(); ++i) rows[i].push_back((*rhs)[i]);
    }
    FqEchelon ech(F, width);
    for (auto& r : rows) ech.add_row(std::move(r));

    LinearSolution sol;
    // Re-derive RREF: back-substitute pivot rows.
    std::vector<std::vector<uint32_t>> rref = ech.rows();
    std::vector<int> pivots;
    for (const auto& r : rref) {
        for (uint32_t j = 0; j < width; ++j)
            if (r[j]) { pivots.push_back(int(j)); break; }
    }
    for (size_t k = rref.size(); k-- > 0;) {
        for (size_t i = 0; i < k; ++i) {
            uint32_t c = rref[i][pivots[k]];
            if (!c) continue;
            for (uint32_t j = 0; j < width; ++j)
                if (rref[k][j]) rref[i][j] = F.sub(rref[i][j], F.mul(c, rref[k][j]));
        }
    }

    std::vector<bool> is_pivot(unknowns, false);
    for (size_t k = 0; k < rref.size(); ++k) {
        if (rhs && pivots[k] == int(unknowns)) {
            sol.consistent = false;  // row (0 ... 0 | c), c != 0
            continue;
        }
        is_pivot[pivots[k]] = true;
        ++sol.rank;
    }
    if (rhs && sol.consistent) {
        sol.particular.assign(unknowns, 0);
        for (size_t k = 0; k < rref.size(); ++k)
            if (pivots[k] < int(unknowns)) sol.particular[pivots[k]] = rref[k][unknowns];
    }
    for (uint32_t f = 0; f < unknowns; ++f) {
        if (is_pivot[f]) continue;
        std::vector<uint32_t> v(unknowns, 0);
        v[f] = 1;
        for (size_t k = 0; k < rref.size(); ++k)
            if (pivots[k] < int(unknowns)) v[pivots[k]] = F.neg(rref[k][f]);
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

}  // namespace covollab::localgrp
