// Exact covolumes of the integral lattice in a Chevalley group over
// F_q((t^-1)) and their certified bounds.
//
// With the Haar measure normalized so the first congruence subgroup has
// measure 1, the covolume over the rational function field is
//
//     prod_{i=1..r} (1 - q^(-m_i))^(-1),
//
// and for a genus-g global function field with numerator P it is
//
//     q^(g dim G) * prod P(q^(-m_i-1)) * prod (1 - q^(-m_i))^(-1).
//
// Validity of P (degree, functional equation, reciprocal roots of
// modulus sqrt q) is decided exactly; the root-modulus condition reduces
// to a real-rootedness-in-an-interval question settled by Sturm chains.

#pragma once

#include "covollab/chevorder.hpp"
#include "covollab/rational_interval.hpp"
#include "covollab/rootsys.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace covollab::covolume {

struct ZetaPolynomial {
    uint64_t q = 0;
    unsigned genus = 0;
    std::vector<mpz_class> coeffs;  // a_0 .. a_{2g}

    static ZetaPolynomial trivial(uint64_t q) { return {q, 0, {mpz_class(1)}}; }
};

struct ZetaCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct ZetaReport {
    std::vector<ZetaCheck> checks;
    bool valid = false;
};

ZetaReport validate_zeta(const ZetaPolynomial& z);

struct CovolumeResult {
    mpq_class value;
    rootsys::RootSystemType type;
    uint64_t q = 0;
    unsigned genus = 0;
};

CovolumeResult covol_rational(rootsys::RootSystemType t, uint64_t q);
// Throws precondition_error (naming the failed condition) when z is invalid.
CovolumeResult covol_genus(rootsys::RootSystemType t, const ZetaPolynomial& z);

// Enclosure of F(x) = prod_{i>=1} (1 - x^(-i))^(-1) for x >= 2.  Lower
// end is the depth-n partial product; the upper end multiplies it by a
// rational bound on the tail exp(sum_{i>n} -ln(1-x^-i)), dominated by
// exp(2 sum_{i>n} x^-i) for x >= 2 since -ln(1-y) <= 2y on (0, 1/2].
RationalInterval euler_enclosure(uint64_t x, unsigned depth);

struct BoundCert {
    std::string name;
    bool pass;
    std::string detail;
};

struct BoundReport {
    mpq_class rational_value;                 // genus-0 covolume
    std::optional<mpq_class> genus_value;     // when a zeta was supplied
    std::vector<BoundCert> certs;
    bool all_pass() const;
};

// Evaluates the "< 2" upper bound at its q-thresholds (q >= 4
// for the D_2 product group, q >= 3 otherwise), and, when a positive-
// genus zeta is given, certifies value >= (q - sqrt q)^(2 g r) and
// value > 2.
BoundReport bound_audits(rootsys::RootSystemType t, uint64_t q, const ZetaPolynomial* zeta);

// vol(G/Gamma) >= |G(F_q)| / |Gamma cap G_0|, as an exact ratio.
mpq_class index_lower_bound(const mpz_class& group_order, const mpz_class& intersection_order);

namespace detail {
// Number of real roots of the monic integer polynomial S (the symmetric
// transform of a self-reciprocal zeta numerator) inside [-2 sqrt q, 2 sqrt q],
// counted without multiplicity, plus a flag that all complex roots of S
// are real and lie in that interval.
struct SturmVerdict {
    bool all_roots_in_interval;
    unsigned distinct_real_roots_in_interval;
    unsigned degree;
};
SturmVerdict roots_on_weil_interval(const std::vector<mpz_class>& S, uint64_t q);
// Symmetric transform: P self-reciprocal of degree 2g over q maps to the
// monic degree-g integer polynomial S with P(T)/T^g = S(1/T + qT).
std::vector<mpz_class> symmetric_transform(const ZetaPolynomial& z);
}  // namespace detail

}  // namespace covollab::covolume
