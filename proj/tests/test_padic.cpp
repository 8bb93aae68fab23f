#include <random>

#include "doctest.h"
#include "wittsen/json_io.hpp"
#include "wittsen/padic.hpp"

using namespace wittsen;

namespace {
PAdic rnd(unsigned long p, int N, std::mt19937_64& rng) {
    mpz_class acc = 0;
    for (int i = 0; i < N; ++i) acc = acc * p + static_cast<unsigned long>(rng() % p);
    return PAdic(p, N, acc);
}
}  // namespace

TEST_CASE("addition wraps at the modulus") {
    PAdic a(3, 4, 5), b(3, 4, 76);
    PAdic s = a + b;
    CHECK(s.residue() == 0);
    CHECK(s.val() == 4);
}

TEST_CASE("one is a multiplicative identity") {
    std::mt19937_64 rng(7);
    PAdic one(3, 4, 1);
    for (int i = 0; i < 50; ++i) {
        PAdic x = rnd(3, 4, rng);
        CHECK((one * x).same_value(x));
    }
}

TEST_CASE("3 * 27 vanishes mod 81") {
    PAdic a(3, 4, 3), b(3, 4, 27);
    PAdic m = a * b;
    CHECK(m.is_zero());
    CHECK(m.val() == 4);
}

TEST_CASE("division by powers of p") {
    PAdic a(3, 5, 54);
    PAdic q = a.div_ppow(2);
    CHECK(q.prec() == 3);
    CHECK(q.residue() == 6);

    PAdic z(3, 5, 0);
    PAdic qz = z.div_ppow(1);
    CHECK(qz.prec() == 4);
    CHECK(qz.is_zero());

    PAdic u(3, 5, 5);
    CHECK_THROWS_AS(u.div_ppow(1), InsufficientValuation);
}

TEST_CASE("inversion lifts the mod-p inverse") {
    CHECK(PAdic(3, 4, 2).inv().residue() == 41);
    CHECK(PAdic(3, 4, 1).inv().residue() == 1);
    CHECK_THROWS_AS(PAdic(3, 4, 3).inv(), NotAUnit);
}

TEST_CASE("inverse times self is one, random units") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        PAdic x = rnd(5, 6, rng);
        if (!x.is_unit()) continue;
        CHECK((x.inv() * x).residue() == 1);
    }
}

TEST_CASE("div_ppow undoes multiplication by p^k") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        PAdic x = rnd(3, 7, rng);
        PAdic pk(3, 7, 9);  // p^2 as an ordinary element
        PAdic y = (pk * x).div_ppow(2);
        CHECK(y.prec() == 5);
        CHECK(y.same_value(x.truncated(5)));
    }
}

TEST_CASE("valuation is multiplicative, capped at N") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        PAdic a = rnd(3, 6, rng), b = rnd(3, 6, rng);
        int expect = std::min(a.val() + b.val(), 6);
        CHECK((a * b).val() == expect);
    }
}

TEST_CASE("prime mismatch is rejected") {
    PAdic a(3, 4, 1), b(5, 4, 1);
    CHECK_THROWS_AS(a + b, RingMismatch);
}

TEST_CASE("mul_ppow gains absolute precision") {
    PAdic a(3, 4, 2);
    PAdic b = a.mul_ppow(3);
    CHECK(b.prec() == 7);
    CHECK(b.residue() == 54);
    CHECK(b.val() == 3);
}

TEST_CASE("JSON round trip with decimal-string residues") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 20; ++t) {
        PAdic x = rnd(5, 40, rng);  // residues well past 64 bits
        PAdic y = padic_from_json(to_json(x));
        CHECK(y.prec() == x.prec());
        CHECK(y.residue() == x.residue());
        CHECK(y.val() == x.val());
    }
}
