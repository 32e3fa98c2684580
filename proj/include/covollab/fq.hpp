// Finite fields F_q for prime q and for the fixed extension fields
// q in {4, 8, 9, 16, 25, 27}, plus dense linear algebra over them.
//
// Elements are uint32_t indices in [0, q).  For an extension of degree e
// over F_p the index encodes the coefficient vector of a residue
// polynomial in base p, lowest coefficient first.  Extension arithmetic
// is table-driven; prime fields compute directly.

#pragma once

#include "covollab/errors.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace covollab {
namespace localgrp {

class FqField {
public:
    // Throws precondition_error for unsupported q (q not a prime power,
    // or an extension field without a modulus in the built-in table).
    static const FqField& get(uint32_t q);

    uint32_t p() const { return p_; }
    uint32_t degree() const { return e_; }
    uint32_t q() const { return q_; }
    bool prime_field() const { return e_ == 1; }

    uint32_t add(uint32_t a, uint32_t b) const {
        return e_ == 1 ? (a + b) % p_ : add_[a * q_ + b];
    }
    uint32_t neg(uint32_t a) const { return e_ == 1 ? (a ? p_ - a : 0) : neg_[a]; }
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return e_ == 1 ? uint32_t((uint64_t(a) * b) % p_) : mul_[a * q_ + b];
    }
    // a != 0
    uint32_t inv(uint32_t a) const;
    // e may be negative; a must be nonzero then
    uint32_t pow(uint32_t a, long long e) const;

    // The residue class of the generator polynomial x (prime fields: p
    // has no such element, returns 1).
    uint32_t gen() const { return e_ == 1 ? 1 : p_; }
    // F_p-basis 1, x, x^2, ..., x^(e-1)
    std::vector<uint32_t> basis() const;

    // digits of a in base p, lowest first, length e
    std::vector<uint32_t> digits(uint32_t a) const;

private:
    FqField(uint32_t p, uint32_t e, std::vector<uint32_t> modulus);

    uint32_t p_, e_, q_;
    std::vector<uint32_t> modulus_;           // length e+1, monic, over F_p
    std::vector<uint32_t> add_, mul_, neg_, inv_;  // extension-field tables
};

// Dense matrix over F_q.  Row-major, n rows, m cols.
struct FqMat {
    uint32_t n = 0, m = 0;
    std::vector<uint32_t> a;

    FqMat() = default;
    FqMat(uint32_t n_, uint32_t m_) : n(n_), m(m_), a(size_t(n_) * m_, 0) {}

    uint32_t& at(uint32_t i, uint32_t j) { return a[size_t(i) * m + j]; }
    uint32_t at(uint32_t i, uint32_t j) const { return a[size_t(i) * m + j]; }

    static FqMat identity(uint32_t n);
    bool operator==(const FqMat&) const = default;
};

FqMat fq_mul(const FqField& F, const FqMat& x, const FqMat& y);
FqMat fq_transpose(const FqMat& x);
// Throws precondition_error if x is singular.
FqMat fq_inverse(const FqField& F, const FqMat& x);
uint32_t fq_det(const FqField& F, FqMat x);

// Incremental row-echelon accumulator over F_q: feed rows one at a
// time, rank grows monotonically.  Used streaming, so pivot rows are
// kept normalized and applied to every incoming row.
class FqEchelon {
public:
    FqEchelon(const FqField& F, uint32_t width) : F_(&F), width_(width), pivot_col_() {}

    // Reduces row in place against the current basis.
    void reduce(std::span<uint32_t> row) const;
    // Returns true if the row was independent (rank grew).
    bool add_row(std::vector<uint32_t> row);
    uint32_t rank() const { return uint32_t(rows_.size()); }
    uint32_t width() const { return width_; }
    const std::vector<std::vector<uint32_t>>& rows() const { return rows_; }

private:
    const FqField* F_;
    uint32_t width_;
    std::vector<std::vector<uint32_t>> rows_;  // each normalized to pivot 1
    std::vector<int> pivot_col_;               // pivot column of rows_[k]
};

// Gauss-Jordan solver for small dense systems A x = b (A given as rows).
// Returns rank; if b != nullptr and the system is inconsistent, returns
// no particular solution.
struct LinearSolution {
    uint32_t rank = 0;
    bool consistent = true;
    std::vector<uint32_t> particular;               // size = unknowns (free vars 0)
    std::vector<std::vector<uint32_t>> kernel;      // basis of homogeneous solutions
};
LinearSolution fq_solve(const FqField& F, std::vector<std::vector<uint32_t>> rows,
                        uint32_t unknowns, const std::vector<uint32_t>* rhs = nullptr);

}  // namespace localgrp
}  // namespace covollab
