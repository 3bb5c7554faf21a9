#include <doctest.h>

#include <complex>
#include <stdexcept>

#include "mubcert/bentset.hpp"
#include "mubcert/mub.hpp"

using namespace mubcert;

namespace {

// Float copy of an exact set, for exercising tolerance mode.
MubSet to_float(const MubSet& s) {
    MubSet out;
    out.d = s.d;
    out.field = FieldTag::complex_float;
    for (const auto& basis : s.bases) {
        std::vector<std::vector<std::complex<double>>> fb;
        for (const auto& vec : basis) {
            std::vector<std::complex<double>> fv;
            for (const GaussInt& e : vec)
                fv.emplace_back(static_cast<double>(e.re), static_cast<double>(e.im));
            fb.push_back(std::move(fv));
        }
        out.fbases.push_back(std::move(fb));
    }
    return out;
}

}  // namespace

TEST_CASE("from_bent_set h=1: 3 bases of C^4, exact pass at the real bound") {
    MubSet set = from_bent_set(kerdock_construct(1));
    CHECK(set.d == 4);
    CHECK(set.field == FieldTag::real_pm1);
    REQUIRE(set.num_bases() == 3);  // d/2 + 1
    CHECK(set.bases[0][2][2] == GaussInt{2, 0});  // 2^h times the standard basis
    CHECK(set.bases[0][2][1] == GaussInt{0, 0});
    CHECK(verify_mub_set(set, VerifyMode::exact).pass());
}

TEST_CASE("from_bent_set h=2 from the published family: 9 bases of C^16") {
    MubSet set = from_bent_set(reference_bent_set_h2(), 2);
    CHECK(set.d == 16);
    CHECK(set.num_bases() == 9);
    MubReport r = verify_mub_set(set, VerifyMode::exact, 1e-9, 2);
    CHECK(r.pass());
    CHECK(r.summary() == "pass");
}

TEST_CASE("from_bent_set sign convention: basis j+1 rows are (-1)^{g_j(x) + u.x}") {
    BentSet bs = kerdock_construct(1);  // {0, x1x2}
    MubSet set = from_bent_set(bs);
    const BooleanFunction& g = bs.functions[1];
    for (std::size_t u = 0; u < 4; ++u)
        for (std::size_t x = 0; x < 4; ++x) {
            int want = (g.at(x) ^ dot(u, x)) ? -1 : 1;
            CHECK(set.bases[2][u][x] == GaussInt{want, 0});
        }
}

TEST_CASE("from_bent_set demands normal form") {
    BentSet bad = kerdock_construct(1);
    std::swap(bad.functions[0], bad.functions[1]);  // zero function no longer first
    CHECK_THROWS_AS(from_bent_set(bad), std::invalid_argument);
}

TEST_CASE("C^4 fixture: five mutually unbiased bases, complex bound attained") {
    MubSet set = fixture_c4_5mubs();
    CHECK(set.d == 4);
    CHECK(set.field == FieldTag::gauss_int);
    REQUIRE(set.num_bases() == 5);  // d + 1
    CHECK(verify_mub_set(set, VerifyMode::exact).pass());
}

TEST_CASE("fixture inner product spot value: |<(1,1,1,1),(1,1,i,-i)>|^2 = 4") {
    MubSet set = fixture_c4_5mubs();
    const auto& a = set.bases[1][0];  // (1, 1, 1, 1)
    const auto& b = set.bases[2][0];  // (1, 1, i, -i)
    REQUIRE(a == std::vector<GaussInt>{{1, 0}, {1, 0}, {1, 0}, {1, 0}});
    REQUIRE(b == std::vector<GaussInt>{{1, 0}, {1, 0}, {0, 1}, {0, -1}});
    GaussInt ip{0, 0};
    for (int k = 0; k < 4; ++k) {
        GaussInt t = gmul(a[k], gconj(b[k]));
        ip.re += t.re;
        ip.im += t.im;
    }
    CHECK(ip.re * ip.re + ip.im * ip.im == 4);
}

TEST_CASE("verifier flags a single corrupted entry in exact and tolerance mode") {
    MubSet set = fixture_c4_5mubs();
    set.bases[3][2][1].re += 1;
    MubReport exact = verify_mub_set(set, VerifyMode::exact);
    CHECK_FALSE(exact.pass());
    MubReport tol = verify_mub_set(to_float(set), VerifyMode::tolerance, 1e-9);
    CHECK_FALSE(tol.pass());
    // The float copy of the uncorrupted set is exactly representable, so
    // tolerance mode accepts it.
    CHECK(verify_mub_set(to_float(fixture_c4_5mubs()), VerifyMode::tolerance, 1e-9).pass());
}

TEST_CASE("verifier reports the real basis-count bound") {
    MubSet set = from_bent_set(kerdock_construct(1));  // 3 bases, bound d/2 + 1 = 3
    set.bases.push_back(set.bases[1]);                 // 4th basis breaks the bound
    MubReport r = verify_mub_set(set, VerifyMode::exact);
    REQUIRE_FALSE(r.pass());
    CHECK(r.violations.front().kind == MubViolation::Kind::basis_count_bound);
    CHECK(r.violations.front().lhs == 4);
    CHECK(r.violations.front().rhs == 3);
}

TEST_CASE("verifier rejects zero vectors") {
    MubSet set = fixture_c4_5mubs();
    set.bases[2][3] = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
    MubReport r = verify_mub_set(set, VerifyMode::exact);
    bool saw_zero = false;
    for (const MubViolation& v : r.violations)
        if (v.kind == MubViolation::Kind::zero_vector) {
            saw_zero = true;
            CHECK(v.basis_a == 2);
            CHECK(v.vec_a == 3);
        }
    CHECK(saw_zero);
}

TEST_CASE("verification report is independent of the thread count") {
    MubSet set = from_bent_set(reference_bent_set_h2());
    set.bases[4][7][11].re = -set.bases[4][7][11].re;  // seed some violations
    MubReport r1 = verify_mub_set(set, VerifyMode::exact, 1e-9, 1);
    MubReport r4 = verify_mub_set(set, VerifyMode::exact, 1e-9, 4);
    REQUIRE_FALSE(r1.pass());
    REQUIRE(r1.violations.size() == r4.violations.size());
    for (std::size_t i = 0; i < r1.violations.size(); ++i)
        CHECK(r1.violations[i].describe() == r4.violations[i].describe());
}

TEST_CASE("verify_mub_set argument validation") {
    MubSet fx = fixture_c4_5mubs();
    CHECK_THROWS_AS(verify_mub_set(to_float(fx), VerifyMode::exact), std::invalid_argument);
    CHECK_THROWS_AS(verify_mub_set(fx, VerifyMode::tolerance, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(verify_mub_set(fx, VerifyMode::tolerance, -1.0), std::invalid_argument);
    MubSet ragged = fx;
    ragged.bases[1][2].pop_back();
    CHECK_THROWS_AS(verify_mub_set(ragged, VerifyMode::exact), std::invalid_argument);
    MubSet big = fx;
    big.bases[0][0][0].re = 70000;
    CHECK_THROWS_AS(verify_mub_set(big, VerifyMode::exact), std::invalid_argument);
}

TEST_CASE("tolerance mode measures absolute defects of the unnormalized identities") {
    MubSet set = to_float(fixture_c4_5mubs());
    set.fbases[1][0][0] += 1e-7;  // perturb one entry of an all-ones vector
    // |<A,B>|^2 d - |A|^2 |B|^2 now spreads defects of order 1e-6, far above
    // 1e-9 but below a loose 1e-3: the same set passes or fails on tau alone.
    CHECK_FALSE(verify_mub_set(set, VerifyMode::tolerance, 1e-9).pass());
    CHECK(verify_mub_set(set, VerifyMode::tolerance, 1e-3).pass());
}

TEST_CASE("product of the h=1 family with itself: 3 bases of C^16") {
    MubSet base = from_bent_set(kerdock_construct(1));
    MubSet prod = product(base, base);
    CHECK(prod.d == 16);
    CHECK(prod.field == FieldTag::real_pm1);
    CHECK(prod.num_bases() == 3);
    CHECK(verify_mub_set(prod, VerifyMode::exact).pass());
}

TEST_CASE("product promotes the field and keeps min(b1, b2) bases") {
    MubSet real4 = from_bent_set(kerdock_construct(1));  // 3 real bases of C^4
    MubSet gauss4 = fixture_c4_5mubs();                  // 5 gauss_int bases of C^4
    MubSet prod = product(real4, gauss4);
    CHECK(prod.d == 16);
    CHECK(prod.field == FieldTag::gauss_int);
    CHECK(prod.num_bases() == 3);
    CHECK(verify_mub_set(prod, VerifyMode::exact).pass());

    MubSet fprod = product(to_float(real4), gauss4);
    CHECK(fprod.field == FieldTag::complex_float);
    CHECK(verify_mub_set(fprod, VerifyMode::tolerance, 1e-9).pass());
}

TEST_CASE("product rejects factors that fail verification") {
    MubSet good = fixture_c4_5mubs();
    MubSet bad = fixture_c4_5mubs();
    bad.bases[0][0][1].re = 1;
    CHECK_THROWS_AS(product(bad, good), std::invalid_argument);
    CHECK_THROWS_AS(product(good, bad), std::invalid_argument);
}

TEST_CASE("MUB JSON round-trips byte-exactly for every field") {
    for (MubSet set : {fixture_c4_5mubs(), from_bent_set(kerdock_construct(1))}) {
        std::string text = to_json(set);
        MubSet back = mub_from_json(text);
        CHECK(back.d == set.d);
        CHECK(back.field == set.field);
        CHECK(back.bases == set.bases);
        CHECK(to_json(back) == text);
    }
    MubSet f = to_float(fixture_c4_5mubs());
    std::string text = to_json(f);
    MubSet back = mub_from_json(text);
    CHECK(back.fbases == f.fbases);
    CHECK(to_json(back) == text);
}

TEST_CASE("mub_from_json rejects malformed documents") {
    CHECK_THROWS_AS(mub_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(mub_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(mub_from_json(R"({"dimension":4,"field":"real_pm1","bases":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(mub_from_json(R"({"dimension":2,"field":"real_pm1","bases":[[[1,1]]]})"),
                    std::invalid_argument);  // basis holds 1 vector, needs 2
    CHECK_THROWS_AS(
        mub_from_json(R"({"dimension":1,"field":"real_pm1","bases":[[[70000]]]})"),
        std::invalid_argument);  // entry beyond the exact-range cap
    CHECK_THROWS_AS(mub_from_json(R"({"dimension":1,"field":"maybe","bases":[[[1]]]})"),
                    std::invalid_argument);
}
