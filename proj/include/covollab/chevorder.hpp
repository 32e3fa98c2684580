// Orders of the finite Chevalley groups and of their points over
// truncated local rings, driven by the exponent table
//
//   |G(F_q)| = q^(sum m_i) * prod (q^(m_i+1) - 1),   dim G = r + 2 sum m_i,
//
// and, via smoothness of the reduction map,
//
//   |G(O/pi^L O)| = |G(F_q)| * q^((L-1) dim G).
//
// Everything is exact; orders are arbitrary-precision integers.

#pragma once

#include "covollab/rootsys.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace covollab::chevorder {

struct ExponentProfile {
    rootsys::RootSystemType type;
    std::vector<long> exponents;  // m_1 .. m_r

    long sum() const;
    long dim() const { return type.rank + 2 * sum(); }
};

ExponentProfile exponents(rootsys::RootSystemType t);

struct PrimePower {
    uint64_t q;
    uint64_t p;
    unsigned e;
};

// Throws precondition_error when q is not a prime power (or exceeds 2^31).
PrimePower factor_prime_power(uint64_t q);

mpz_class group_order(rootsys::RootSystemType t, uint64_t q);

// L >= 1; L == 1 is |G(F_q)|.
mpz_class ring_group_order(rootsys::RootSystemType t, uint64_t q, unsigned L);

}  // namespace covollab::chevorder
