#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covollab/chevorder.hpp"
#include "covollab/localgrp.hpp"

#include <random>

using namespace covollab;
using namespace covollab::localgrp;
using rootsys::Root;

namespace {

TruncMat random_word(const GroupModel& model, const std::vector<TruncMat>& gens,
                     std::mt19937_64& rng, unsigned len) {
    TruncMat g = tm_identity(model.ring(), model.msize());
    for (unsigned i = 0; i < len; ++i) g = tm_mul(g, gens[rng() % gens.size()]);
    return g;
}

}  // namespace

TEST_CASE("field tables: extension arithmetic round-trips") {
    for (uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u}) {
        const FqField& F = FqField::get(q);
        CAPTURE(q);
        CHECK(F.q() == q);
        for (uint32_t a = 1; a < q; ++a) {
            CHECK(F.mul(a, F.inv(a)) == 1);
            CHECK(F.add(a, F.neg(a)) == 0);
            CHECK(F.pow(a, long(q) - 1) == 1);
        }
        // distributivity spot check across the whole table
        for (uint32_t a = 0; a < q; ++a)
            for (uint32_t b = 0; b < q; ++b) {
                CHECK(F.mul(a, b) == F.mul(b, a));
                CHECK(F.mul(a, F.add(b, 1)) == F.add(F.mul(a, b), a));
            }
    }
    const FqField& F13 = FqField::get(13);
    CHECK(F13.inv(5) == 8);  // 5 * 8 = 40 = 1 mod 13
    CHECK_THROWS_AS(FqField::get(49), precondition_error);
    CHECK_THROWS_AS(FqField::get(12), precondition_error);
}

TEST_CASE("truncated ring arithmetic") {
    TruncRing R(FqField::get(5), 3);
    auto a = R.one();
    a[1] = 2;  // 1 + 2u
    auto inv = R.inv(a);
    CHECK(R.mul(a, inv) == R.one());
    CHECK(R.val(R.u_times_fq(2, 3)) == 2);
    CHECK(R.val(R.zero()) == 3);
    CHECK(!R.is_unit(R.u_times_fq(1, 1)));
    CHECK_THROWS_AS(R.inv(R.u_times_fq(1, 1)), precondition_error);
}

TEST_CASE("root elements: defining matrix, membership, additivity") {
    auto sl2 = GroupModel::make_sl(2, 5, 2);
    Root alpha = sl2.roots().simple_root(0);
    TruncMat u = sl2.root_element_fq(alpha, 3);
    CHECK(u.at(0, 1, 0) == 3);
    CHECK(u.at(0, 0, 0) == 1);
    CHECK(u.at(1, 0, 0) == 0);
    CHECK(sl2.root_element_fq(alpha, 0) == tm_identity(sl2.ring(), 2));

    std::mt19937_64 rng(7);
    for (auto model : {GroupModel::make_sl(3, 5, 2), GroupModel::make_sp(2, 3, 2)}) {
        const auto& R = model.ring();
        for (const Root& b : model.roots().roots()) {
            for (unsigned trial = 0; trial < 4; ++trial) {
                TruncRing::Elem x(R.L), y(R.L);
                for (unsigned k = 0; k < R.L; ++k) {
                    x[k] = uint32_t(rng() % R.F->q());
                    y[k] = uint32_t(rng() % R.F->q());
                }
                TruncMat ux = model.root_element(b, x);
                CHECK(model.is_member(ux));
                CHECK(tm_mul(ux, model.root_element(b, y)) ==
                      model.root_element(b, R.add(x, y)));
            }
        }
    }
}

TEST_CASE("torus normalizes each root subgroup with the matching character") {
    for (auto model : {GroupModel::make_sl(3, 7, 2), GroupModel::make_sp(2, 5, 2)}) {
        const auto& R = model.ring();
        const auto& rs = model.roots();
        for (int i = 0; i < rs.rank(); ++i) {
            for (uint32_t s = 2; s < R.F->q(); ++s) {
                TruncMat t = model.coweight_element(unsigned(i), R.from_fq(s));
                CHECK(model.is_member(t));
                TruncMat ti = tm_inverse(t);
                for (const Root& b : rs.roots()) {
                    int pr = rs.pairing(b, rs.simple_root(i));
                    uint32_t scaled = R.F->pow(s, pr);
                    CHECK(tm_mul(tm_mul(t, model.root_element_fq(b, 1)), ti) ==
                          model.root_element_fq(b, scaled));
                }
            }
        }
    }
}

TEST_CASE("congruence levels") {
    auto sl2 = GroupModel::make_sl(2, 3, 3);
    const auto& R = sl2.ring();
    CHECK(sl2.congruence_level(tm_identity(R, 2)) == 3);
    Root alpha = sl2.roots().simple_root(0);
    CHECK(sl2.congruence_level(sl2.root_element(alpha, R.u_times_fq(1, 2))) == 1);
    // diag(1 + u^2, (1 + u^2)^-1)
    TruncRing::Elem s = R.one();
    s[2] = 1;
    CHECK(sl2.congruence_level(sl2.coweight_element(0, s)) == 2);
    // non-member rejected
    TruncMat bad = tm_identity(R, 2);
    bad.at(0, 0, 0) = 2;
    CHECK_THROWS_AS(sl2.congruence_level(bad), precondition_error);
}

TEST_CASE("filtration: products, inverses, commutators, reduction maps") {
    std::mt19937_64 rng(11);
    auto model = GroupModel::make_sl(2, 3, 4);
    auto g1 = model.congruence_generators(1);
    auto g2 = model.congruence_generators(2);

    for (unsigned trial = 0; trial < 30; ++trial) {
        TruncMat a = random_word(model, g1, rng, 3), b = random_word(model, g2, rng, 3);
        unsigned la = model.congruence_level(a), lb = model.congruence_level(b);
        TruncMat ab1 = tm_mul(a, tm_inverse(b));
        CHECK(model.congruence_level(ab1) >= std::min(la, lb));
        // [G_l, G_m] inside G_{l+m}
        TruncMat comm = tm_mul(tm_mul(a, b), tm_mul(tm_inverse(a), tm_inverse(b)));
        CHECK(model.congruence_level(comm) >= std::min(4u, la + lb));
        // xi_l is a homomorphism
        for (unsigned l = 1; l <= 3; ++l)
            CHECK(tm_reduce(tm_mul(a, b), l) == tm_mul(tm_reduce(a, l), tm_reduce(b, l)));
    }
}

TEST_CASE("theta conjugator scales root subgroups by the alpha coordinate") {
    auto sl3 = GroupModel::make_sl(3, 5, 4);
    const auto& R3 = sl3.ring();
    auto d = sl3.theta_conjugator(0);
    Root a1 = sl3.roots().simple_root(0), na1 = a1;
    for (auto& c : na1) c = -c;

    // u_{a1}(x) -> u_{a1}(u x)
    TruncMat img = d.apply(sl3.root_element_fq(a1, 2));
    CHECK(img == tm_reduce(sl3.root_element(a1, R3.u_times_fq(1, 2)), 3));
    // u_{-a1}(u^3 x) -> u_{-a1}(u^2 x)
    img = d.apply(sl3.root_element(na1, R3.u_times_fq(3, 2)));
    CHECK(img == tm_reduce(sl3.root_element(na1, R3.u_times_fq(2, 2)), 3));
    // applying to an element of too-low level errors out
    CHECK_THROWS_AS(d.apply(sl3.root_element_fq(na1, 1)), precondition_error);

    auto sp4 = GroupModel::make_sp(2, 3, 6);
    const auto& R4 = sp4.ring();
    auto dsp = sp4.theta_conjugator(0);
    CHECK(dsp.inside_group);  // symplectic choice exists for the short simple root
    // the long roots ±2e_1 carry alpha_1-coordinate ±2: the highest root
    // climbs by u^2, its negative drops u^3 x -> u x
    Root high = sp4.roots().highest_and_l().first, low = high;
    for (auto& c : low) c = -c;
    TruncMat sp_img = dsp.apply(sp4.root_element(high, R4.u_times_fq(3, 2)));
    CHECK(sp_img == tm_reduce(sp4.root_element(high, R4.u_times_fq(5, 2)), 4));
    sp_img = dsp.apply(sp4.root_element(low, R4.u_times_fq(3, 2)));
    CHECK(sp_img == tm_reduce(sp4.root_element(low, R4.u_times_fq(1, 2)), 4));
    // long simple root conjugator is a similitude, not symplectic
    CHECK(!sp4.theta_conjugator(1).inside_group);
}

TEST_CASE("P1-P3 reports") {
    auto sl3 = GroupModel::make_sl(3, 5, 5);
    auto rep = sl3.verify_p_properties(0, 3);
    CHECK(rep.ok());
    CHECK(rep.expected_drop == 1);
    CHECK(rep.max_drop_observed == 1);

    auto sp4 = GroupModel::make_sp(2, 3, 6);
    auto rep2 = sp4.verify_p_properties(0, 3);
    CHECK(rep2.ok());
    CHECK(rep2.expected_drop == 2);
    CHECK(rep2.max_drop_observed == 2);
    CHECK(rep2.conjugator_in_group);

    auto sl2 = GroupModel::make_sl(2, 3, 3);
    auto rep3 = sl2.verify_p_properties(0, 1);
    CHECK(rep3.ok());

    CHECK_THROWS_AS(sp4.verify_p_properties(0, 1), precondition_error);  // l < l(G)
}

TEST_CASE("P3 shape predicates pick out the opposite parabolic blocks") {
    auto sl3 = GroupModel::make_sl(3, 5, 2);
    const auto& R = sl3.ring();
    Root a1 = sl3.roots().simple_root(0), na1 = a1;
    for (auto& c : na1) c = -c;
    TruncMat lower = sl3.root_element_fq(na1, 2);
    CHECK(sl3.in_opposite_parabolic(lower, 0));
    CHECK(sl3.in_opposite_radical(lower, 0));
    TruncMat upper = sl3.root_element_fq(a1, 2);
    CHECK(!sl3.in_opposite_parabolic(upper, 0));
    // a torus element sits in the parabolic but not its unipotent radical
    TruncMat torus = sl3.coweight_element(0, R.from_fq(2));
    CHECK(sl3.in_opposite_parabolic(torus, 0));
    CHECK(!sl3.in_opposite_radical(torus, 0));
    // alpha_2-negative roots are allowed in P_{alpha_1}^- but not its radical
    Root na2 = sl3.roots().simple_root(1);
    for (auto& c : na2) c = -c;
    CHECK(sl3.in_opposite_parabolic(sl3.root_element_fq(na2, 1), 0));
    CHECK(!sl3.in_opposite_radical(sl3.root_element_fq(na2, 1), 0));
}

TEST_CASE("congruence generation closes to the exact kernel order") {
    auto a = GroupModel::make_sl(2, 3, 2).congruence_generation_audit(1, 1 << 20);
    CHECK(a.complete);
    CHECK(a.closure_order == 27);
    CHECK(a.match);

    auto b = GroupModel::make_sl(2, 3, 3).congruence_generation_audit(1, 1 << 20);
    CHECK(b.closure_order == 729);
    CHECK(b.match);

    auto c = GroupModel::make_sl(2, 5, 3).congruence_generation_audit(2, 1 << 20);
    CHECK(c.closure_order == 125);
    CHECK(c.match);

    // bound exceeded: partial report, no false claim
    auto d = GroupModel::make_sl(2, 3, 3).congruence_generation_audit(1, 100);
    CHECK(!d.complete);
    CHECK(!d.match);
}

TEST_CASE("symplectic group over F_3 closes to the exact order") {
    auto model = GroupModel::make_sp(2, 3, 1);
    auto table = bfs_closure(model.field_group_generators(), 1 << 20);
    CHECK(table.complete);
    CHECK(table.size() == 51840);
    CHECK(mpz_class(static_cast<unsigned long>(table.size())) ==
          chevorder::ring_group_order({rootsys::Family::C, 2}, 3, 1));
}

TEST_CASE("full group closure matches the ring order formula") {
    for (unsigned L : {1u, 2u}) {
        auto model = GroupModel::make_sl(2, 3, L);
        std::vector<TruncMat> gens;
        const auto& R = model.ring();
        Root a = model.roots().simple_root(0), na = a;
        for (auto& c : na) c = -c;
        for (unsigned j = 0; j < L; ++j)
            for (uint32_t c : R.F->basis()) {
                gens.push_back(model.root_element(a, R.u_times_fq(j, c)));
                gens.push_back(model.root_element(na, R.u_times_fq(j, c)));
            }
        auto table = bfs_closure(gens, 1 << 20);
        CHECK(table.complete);
        mpz_class expect = chevorder::ring_group_order({rootsys::Family::A, 1}, 3, L);
        CHECK(mpz_class(static_cast<unsigned long>(table.size())) == expect);
    }
}

TEST_CASE("centralizer of the field points in the truncated group") {
    auto rep = GroupModel::make_sl(2, 5, 3).centralizer_audit();
    CHECK(rep.commutant_is_scalars);
    CHECK(rep.centralizer_equals_center);
    CHECK(rep.center_scalars.size() == 2);  // ±I
    CHECK(rep.expected_center_size == 2);

    auto rep3 = GroupModel::make_sl(3, 7, 2).centralizer_audit();
    CHECK(rep3.commutant_is_scalars);
    CHECK(rep3.center_scalars.size() == 3);  // cube roots of unity in F_7
    CHECK(rep3.expected_center_size == 3);

    auto sp = GroupModel::make_sp(2, 5, 2).centralizer_audit();
    CHECK(sp.commutant_is_scalars);
    CHECK(sp.center_scalars.size() == 2);

    CHECK_THROWS_AS(GroupModel::make_sl(2, 3, 2).centralizer_audit(), precondition_error);
}
