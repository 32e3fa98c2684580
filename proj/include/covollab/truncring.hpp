// F_q[u]/(u^L), the truncated model of the valuation ring with
// uniformizer u = t^-1, and square matrices over it.  Ring elements are
// coefficient vectors of length L (lowest power first); units are
// exactly the elements with nonzero constant coefficient.

#pragma once

#include "covollab/fq.hpp"

#include <cstdint>
#include <vector>

namespace covollab::localgrp {

struct TruncRing {
    const FqField* F = nullptr;
    unsigned L = 0;

    TruncRing() = default;
    TruncRing(const FqField& field, unsigned level) : F(&field), L(level) {
        if (level < 1) throw precondition_error("truncation level must be >= 1");
    }
    bool operator==(const TruncRing& o) const { return F == o.F && L == o.L; }

    using Elem = std::vector<uint32_t>;

    Elem zero() const { return Elem(L, 0); }
    Elem one() const;
    Elem from_fq(uint32_t c) const;
    Elem u_times_fq(unsigned k, uint32_t c) const;  // c * u^k

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    bool is_unit(const Elem& a) const { return a[0] != 0; }
    Elem inv(const Elem& a) const;  // a must be a unit
    // largest k with u^k dividing a; L for zero
    unsigned val(const Elem& a) const;
    bool is_zero(const Elem& a) const { return val(a) == L; }
};

struct TruncMat {
    TruncRing R;
    unsigned n = 0;
    std::vector<uint32_t> a;  // n*n*L, coefficient-major within each entry

    TruncMat() = default;
    TruncMat(TruncRing ring, unsigned size)
        : R(ring), n(size), a(size_t(size) * size * ring.L, 0) {}

    uint32_t& at(unsigned i, unsigned j, unsigned k) { return a[(size_t(i) * n + j) * R.L + k]; }
    uint32_t at(unsigned i, unsigned j, unsigned k) const {
        return a[(size_t(i) * n + j) * R.L + k];
    }
    TruncRing::Elem entry(unsigned i, unsigned j) const;
    void set_entry(unsigned i, unsigned j, const TruncRing::Elem& e);

    bool operator==(const TruncMat& o) const { return n == o.n && R.L == o.R.L && a == o.a; }
};

TruncMat tm_identity(TruncRing R, unsigned n);
TruncMat tm_mul(const TruncMat& x, const TruncMat& y);
TruncMat tm_transpose(const TruncMat& x);
// Gauss-Jordan over the local ring; pivots are unit entries.  Throws
// precondition_error for non-invertible input.
TruncMat tm_inverse(const TruncMat& x);
TruncMat tm_scalar(TruncRing R, unsigned n, const TruncRing::Elem& c);
TruncRing::Elem tm_det(const TruncMat& x);
// reduction mod u^l (the map xi_l); 1 <= l <= L
TruncMat tm_reduce(const TruncMat& x, unsigned l);
// largest l <= L with x == identity mod u^l
unsigned tm_congruence_level(const TruncMat& x);

// 64-bit canonical key: ceil(log2 q) bits per coefficient.  Throws
// precondition_error when the shape does not fit (too coarse for the
// desk-scale tables this backs).
uint64_t tm_pack(const TruncMat& x);
TruncMat tm_unpack(TruncRing R, unsigned n, uint64_t key);
bool tm_packable(TruncRing R, unsigned n);

}  // namespace covollab::localgrp
