#include "covollab/chevorder.hpp"

#include "covollab/fq.hpp"

namespace covollab::chevorder {

using rootsys::Family;
using rootsys::RootSystemType;

long ExponentProfile::sum() const {
    long s = 0;
    for (long m : exponents) s += m;
    return s;
}

ExponentProfile exponents(RootSystemType t) {
    if (!rootsys::type_supported(t))
        throw precondition_error(t.name() + " has no exponent row");
    long r = t.rank;
    std::vector<long> m;
    switch (t.family) {
        case Family::A:
            for (long i = 1; i <= r; ++i) m.push_back(i);
            break;
        case Family::B:
        case Family::C:
            for (long i = 1; i <= r; ++i) m.push_back(2 * i - 1);
            break;
        case Family::D:
            // 1, 3, ..., 2r-3, r-1; at r = 2 this is (1, 1), the Spin_4 row
            for (long i = 1; i <= r - 1; ++i) m.push_back(2 * i - 1);
            m.push_back(r - 1);
            break;
        case Family::E:
            if (r == 6) m = {1, 4, 5, 7, 8, 11};
            else if (r == 7) m = {1, 5, 7, 9, 11, 13, 17};
            else m = {1, 7, 11, 13, 17, 19, 23, 29};
            break;
        case Family::F:
            m = {1, 5, 7, 11};
            break;
        case Family::G:
            m = {1, 5};
            break;
    }
    return {t, std::move(m)};
}

PrimePower factor_prime_power(uint64_t q) {
    if (q < 2 || q > (uint64_t(1) << 31))
        throw precondition_error("q must be a prime power in [2, 2^31]");
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    unsigned e = 0;
    uint64_t rest = q;
    while (rest % p == 0) { rest /= p; ++e; }
    if (rest != 1)
        throw precondition_error(std::to_string(q) + " is not a prime power");
    return {q, p, e};
}

mpz_class group_order(RootSystemType t, uint64_t q) {
    factor_prime_power(q);
    ExponentProfile prof = exponents(t);
    mpz_class qz(static_cast<unsigned long>(q));
    mpz_class order;
    mpz_pow_ui(order.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(prof.sum()));
    for (long m : prof.exponents) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(m + 1));
        order *= f - 1;
    }
    return order;
}

mpz_class ring_group_order(RootSystemType t, uint64_t q, unsigned L) {
    if (L < 1) throw precondition_error("truncation level must be >= 1");
    mpz_class order = group_order(t, q);
    ExponentProfile prof = exponents(t);
    mpz_class qz(static_cast<unsigned long>(q)), f;
    mpz_pow_ui(f.get_mpz_t(), qz.get_mpz_t(),
               static_cast<unsigned long>((L - 1) * uint64_t(prof.dim())));
    return order * f;
}

}  // namespace covollab::chevorder
