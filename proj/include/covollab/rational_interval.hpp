// Exact rational intervals used wherever an irrational quantity (sqrt q,
// an infinite product) has to enter a certified comparison.  Endpoints
// are exact rationals and every operation keeps the enclosure property.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace covollab::covolume {

struct RationalInterval {
    mpq_class lo, hi;

    RationalInterval() = default;
    RationalInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::logic_error("inverted interval");
    }
    static RationalInterval point(const mpq_class& v) { return {v, v}; }

    mpq_class width() const { return hi - lo; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
    bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    // Certified strict comparisons: true only when the whole interval is
    // on the claimed side.
    bool certainly_less(const mpq_class& v) const { return hi < v; }
    bool certainly_greater(const mpq_class& v) const { return lo > v; }

    RationalInterval operator+(const RationalInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RationalInterval operator-(const RationalInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RationalInterval operator*(const RationalInterval& o) const;

    std::string str() const;
};

// Enclosure of sqrt(x) for x >= 0, bisected until hi - lo <= rel_width * hi.
// Exact square roots of rationals collapse to point intervals.
RationalInterval sqrt_enclosure(const mpq_class& x,
                                const mpq_class& rel_width = mpq_class(1UL, 1000000000000UL));

// Exact sign of A + B*sqrt(q), q >= 0 rational; decided by squaring.
int sign_with_sqrt(const mpq_class& A, const mpq_class& B, const mpq_class& q);

}  // namespace covollab::covolume
