#include "covollab/rational_interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace covollab::covolume {

RationalInterval RationalInterval::operator*(const RationalInterval& o) const {
    mpq_class a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

std::string RationalInterval::str() const {
    return "[" + lo.get_str() + ", " + hi.get_str() + "]";
}

RationalInterval sqrt_enclosure(const mpq_class& x, const mpq_class& rel_width) {
    if (x < 0) throw std::invalid_argument("sqrt of negative rational");
    if (x == 0) return RationalInterval::point(0);

    // exact case: numerator and denominator both perfect squares
    mpz_class num = x.get_num(), den = x.get_den(), rn, rd;
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        return RationalInterval::point(mpq_class(rn) / mpq_class(rd));
    }

    // integer bracket from floor sqrt of num/den scaled
    mpz_class fl;
    mpz_class scaled = num / den;
    mpz_sqrt(fl.get_mpz_t(), scaled.get_mpz_t());
    mpq_class lo(fl), hi(fl + 1);
    while (lo * lo > x) lo -= 1;
    while (hi * hi < x) hi += 1;
    while (hi - lo > rel_width * hi) {
        mpq_class mid = (lo + hi) / 2;
        if (mid * mid <= x) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

int sign_with_sqrt(const mpq_class& A, const mpq_class& B, const mpq_class& q) {
    if (q < 0) throw std::invalid_argument("negative radicand");
    int sa = sgn(A), sb = sgn(B);
    if (q == 0 || sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: the term of larger square dominates
    mpq_class a2 = A * A, b2q = B * B * q;
    if (a2 == b2q) return 0;
    return a2 > b2q ? sa : sb;
}

}  // namespace covollab::covolume
