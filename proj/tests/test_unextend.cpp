#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "mubcert/bentset.hpp"
#include "mubcert/mub.hpp"
#include "mubcert/unextend.hpp"
#include "oracles.hpp"

using namespace mubcert;

namespace {

// Sign entries as +-1 ints, for feeding matrices back through the
// vector-of-vectors constructor.
std::vector<std::vector<int>> entries_of(const SignMatrix& m) {
    std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.sign(r, c);
    return out;
}

}  // namespace

TEST_CASE("SignMatrix round-trips entries and validates input") {
    SignMatrix m(std::vector<std::vector<int>>{{1, -1, 1}, {-1, -1, 1}});
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.sign(0, 1) == -1);
    CHECK(m.sign(1, 2) == 1);
    m.set_negative(1, 2, true);
    CHECK(m.sign(1, 2) == -1);
    m.set_negative(1, 2, false);
    CHECK(m.sign(1, 2) == 1);
    CHECK_THROWS_AS(SignMatrix(std::vector<std::vector<int>>{{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(SignMatrix(std::vector<std::vector<int>>{{1, 1}, {1}}),
                    std::invalid_argument);
}

TEST_CASE("constraint matrix shape: 2^{4h-1} rows by 2^{2h-1}(2^{2h}-1) columns") {
    ConstraintMatrix m1 = build_constraint_matrix(kerdock_construct(1));
    CHECK(m1.signs.rows() == 8);
    CHECK(m1.signs.cols() == 6);
    ConstraintMatrix m2 = build_constraint_matrix(reference_bent_set_h2());
    CHECK(m2.signs.rows() == 128);
    CHECK(m2.signs.cols() == 120);
    // Columns enumerate pairs x < y lexicographically.
    CHECK(m1.col_x[0] == 0);
    CHECK(m1.col_y[0] == 1);
    CHECK(m1.col_x[5] == 2);
    CHECK(m1.col_y[5] == 3);
    BentSet denorm = kerdock_construct(1);
    std::swap(denorm.functions[0], denorm.functions[1]);
    CHECK_THROWS_AS(build_constraint_matrix(denorm), std::invalid_argument);
}

TEST_CASE("constraint matrix entries match the sign formula, h <= 2 exhaustively") {
    for (int h : {1, 2}) {
        BentSet set = h == 1 ? kerdock_construct(1) : reference_bent_set_h2();
        ConstraintMatrix m = build_constraint_matrix(set, 2);
        const std::size_t d = std::size_t{1} << (2 * h);
        for (std::size_t j = 0; j < set.size(); ++j)
            for (std::size_t u = 0; u < d; ++u)
                for (std::size_t c = 0; c < m.signs.cols(); ++c) {
                    const BooleanFunction& g = set.functions[j];
                    int want = (g.at(m.col_x[c]) ^ g.at(m.col_y[c]) ^
                                dot(u, m.col_x[c] ^ m.col_y[c]))
                                   ? -1
                                   : 1;
                    CHECK(m.signs.sign(j * d + u, c) == want);
                }
    }
}

TEST_CASE("zero-function rows restricted to a class equal its tag signs, h <= 3") {
    for (int h : {1, 2, 3}) {
        ConstraintMatrix m = build_constraint_matrix(kerdock_construct(h, 2), 2);
        const std::size_t d = std::size_t{1} << (2 * h);
        for (std::size_t u = 0; u < d; ++u)
            for (std::size_t c = 0; c < m.signs.cols(); ++c) {
                int tag = dot(u, m.col_x[c] ^ m.col_y[c]) ? -1 : 1;
                CHECK(m.signs.sign(u, c) == tag);  // rows of functions[0] come first
            }
    }
}

TEST_CASE("blocks partition the columns by difference class") {
    for (int h : {1, 2}) {
        BentSet set = h == 1 ? kerdock_construct(1) : reference_bent_set_h2();
        ConstraintMatrix m = build_constraint_matrix(set);
        std::vector<SubmatrixBlock> bs = blocks(m);
        const std::size_t d = std::size_t{1} << (2 * h);
        REQUIRE(bs.size() == d - 1);
        std::vector<std::uint32_t> seen;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            CHECK(bs[i].ell == i + 1);
            CHECK(bs[i].columns.size() == d / 2);
            std::uint32_t prev_x = 0;
            for (std::size_t c = 0; c < bs[i].columns.size(); ++c) {
                std::uint32_t col = bs[i].columns[c];
                CHECK((m.col_x[col] ^ m.col_y[col]) == bs[i].ell);
                if (c > 0) CHECK(m.col_x[col] > prev_x);  // increasing x within the block
                prev_x = m.col_x[col];
                seen.push_back(col);
                // The slice is a verbatim copy of the parent columns.
                for (std::size_t r = 0; r < m.signs.rows(); ++r)
                    CHECK(bs[i].slice.sign(r, c) == m.signs.sign(r, col));
            }
        }
        std::sort(seen.begin(), seen.end());
        REQUIRE(seen.size() == m.signs.cols());
        for (std::size_t c = 0; c < seen.size(); ++c) CHECK(seen[c] == c);
    }
}

TEST_CASE("h=1 class l=1: u=0 rows are (+1,+1) and (+1,-1) with Gram 2I") {
    ConstraintMatrix m = build_constraint_matrix(kerdock_construct(1));
    SubmatrixBlock blk = blocks(m)[0];
    REQUIRE(blk.ell == 1);
    REQUIRE(blk.columns.size() == 2);
    // Function 0 (zero) at u = 0 is row 0; function 1 (x1x2) at u = 0 is row 4.
    CHECK(blk.slice.sign(0, 0) == 1);
    CHECK(blk.slice.sign(0, 1) == 1);
    CHECK(blk.slice.sign(4, 0) == 1);
    CHECK(blk.slice.sign(4, 1) == -1);
    int g00 = blk.slice.sign(0, 0) * blk.slice.sign(0, 0) +
              blk.slice.sign(0, 1) * blk.slice.sign(0, 1);
    int g01 = blk.slice.sign(0, 0) * blk.slice.sign(4, 0) +
              blk.slice.sign(0, 1) * blk.slice.sign(4, 1);
    int g11 = blk.slice.sign(4, 0) * blk.slice.sign(4, 0) +
              blk.slice.sign(4, 1) * blk.slice.sign(4, 1);
    CHECK(g00 == 2);
    CHECK(g01 == 0);
    CHECK(g11 == 2);
}

TEST_CASE("rank_mod_p validates the modulus") {
    SignMatrix m(std::vector<std::vector<int>>{{1, -1}, {1, 1}});
    CHECK_THROWS_AS(rank_mod_p(m, 1), std::invalid_argument);
    CHECK_THROWS_AS(rank_mod_p(m, 2), std::invalid_argument);
    CHECK_THROWS_AS(rank_mod_p(m, 4), std::invalid_argument);
    CHECK_THROWS_AS(rank_mod_p(m, 9), std::invalid_argument);
    CHECK_THROWS_AS(rank_mod_p(m, kMersenne31 + 2), std::invalid_argument);  // composite
    CHECK_THROWS_AS(rank_mod_p(m, std::uint64_t{1} << 62), std::invalid_argument);
    CHECK(rank_mod_p(m, 3) == 2);
    CHECK(rank_mod_p(SignMatrix(), kMersenne31) == 0);
}

TEST_CASE("rank_mod_p on hand-built matrices") {
    // Rank 1: outer product of +-1 vectors.
    SignMatrix ones(std::vector<std::vector<int>>(5, std::vector<int>(7, 1)));
    CHECK(rank_mod_p(ones, kMersenne31) == 1);
    std::vector<int> col{1, -1, 1, -1};
    std::vector<int> row{1, 1, -1};
    std::vector<std::vector<int>> outer(4, std::vector<int>(3));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 3; ++c) outer[r][c] = col[r] * row[c];
    CHECK(rank_mod_p(SignMatrix(outer), kMersenne31) == 1);
    // A 4x4 Hadamard-type matrix has full rank.
    SignMatrix had(std::vector<std::vector<int>>{
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}});
    CHECK(rank_mod_p(had, kMersenne31) == 4);
}

TEST_CASE("rank_mod_p agrees with exact fraction-free elimination") {
    // Deterministic random +-1 matrices, plus planted rank deficiencies made
    // by repeating columns.
    std::mt19937_64 rng(4242);
    for (int rep = 0; rep < 25; ++rep) {
        std::size_t R = 3 + rng() % 10, C = 3 + rng() % 10;
        std::vector<std::vector<int>> e(R, std::vector<int>(C));
        for (auto& rw : e)
            for (int& v : rw) v = (rng() & 1) ? 1 : -1;
        if (rep % 3 == 0 && C >= 2)
            for (auto& rw : e) rw[C - 1] = rw[0];  // duplicate first column
        SignMatrix m(e);
        std::size_t exact = oracle::rank_exact(m);
        CHECK(rank_mod_p(m, kMersenne31) == exact);
        CHECK(rank_mod_p(m, kMersenne61) == exact);
        CHECK(rank_mod_p(m, 1000003) == exact);
    }
}

TEST_CASE("h=1 constraint matrix: full column rank 6, block ranks 2+2+2, exact") {
    ConstraintMatrix m = build_constraint_matrix(kerdock_construct(1));
    CHECK(oracle::rank_exact(m.signs) == 6);
    CHECK(rank_mod_p(m.signs, kMersenne31) == 6);
    CHECK(rank_mod_p(m.signs, kMersenne61) == 6);
    std::size_t sum = 0;
    for (const SubmatrixBlock& blk : blocks(m)) {
        std::size_t rk = rank_mod_p(blk.slice, kMersenne31);
        CHECK(rk == 2);
        CHECK(oracle::rank_exact(blk.slice) == rk);
        sum += rk;
    }
    CHECK(sum == 6);
}

TEST_CASE("h=2 constraint matrix: rank 120 modularly and exactly, additive over blocks") {
    ConstraintMatrix m = build_constraint_matrix(reference_bent_set_h2(), 2);
    CHECK(rank_mod_p(m.signs, kMersenne31) == 120);
    CHECK(oracle::rank_exact(m.signs) == 120);
    std::size_t sum = 0;
    for (const SubmatrixBlock& blk : blocks(m)) {
        std::size_t rk = rank_mod_p(blk.slice, kMersenne31);
        CHECK(rk == 8);
        sum += rk;
    }
    CHECK(sum == 120);
}

TEST_CASE("structural certificate passes for the constructed families, h = 1..4") {
    for (int h = 1; h <= 4; ++h) {
        BentSet set = kerdock_construct(h, 2);
        StructuralEvidence ev = structural_certificate(set, 2);
        CHECK(ev.h == h);
        CHECK(ev.blocks_checked == (std::size_t{1} << (2 * h)) - 1);
        CHECK(ev.block_defects.empty());
        CHECK(ev.tag_defects.empty());
        CHECK(ev.pass());
        CHECK(ev.summary().substr(0, 4) == "pass");
    }
    StructuralEvidence ref = structural_certificate(reference_bent_set_h2());
    CHECK(ref.pass());
}

TEST_CASE("structural certificate reports Gram defects for a non-bent family") {
    BentSet fake;
    fake.h = 1;
    fake.functions = {from_anf("0", 2), from_anf("x1", 2)};  // normal form, not bent
    StructuralEvidence ev = structural_certificate(fake);
    CHECK_FALSE(ev.pass());
    CHECK_FALSE(ev.block_defects.empty());
    CHECK(ev.tag_defects.empty());  // tag identities hold regardless of the family
    const GramDefect& d0 = ev.block_defects.front();
    CHECK(d0.value != d0.expected);
    CHECK(ev.summary().substr(0, 4) == "fail");
}

TEST_CASE("certify h=1: modular and structural agree, block ranks recomputed") {
    RankCertificate cert = certify_strongly_unextendible(kerdock_construct(1));
    CHECK(cert.h == 1);
    CHECK(cert.method == CertifyMethod::both);
    CHECK(cert.rank == 6);
    CHECK(cert.target == 6);
    CHECK(cert.certified);
    CHECK(cert.verdict() == "certified");
    CHECK(cert.primes == std::vector<std::uint64_t>{kMersenne31});
    REQUIRE(cert.block_ranks.has_value());
    CHECK(*cert.block_ranks == std::vector<std::uint64_t>{2, 2, 2});
    CHECK(cert.rank_additivity == "recomputed");
    CHECK(cert.summary().find("inference:") != std::string::npos);
}

TEST_CASE("certify h=2: 120/120 for both the published and constructed families") {
    for (BentSet set : {reference_bent_set_h2(), kerdock_construct(2)}) {
        CertifyOptions opt;
        opt.threads = 2;
        RankCertificate cert = certify_strongly_unextendible(set, opt);
        CHECK(cert.rank == 120);
        CHECK(cert.target == 120);
        CHECK(cert.certified);
        REQUIRE(cert.block_ranks.has_value());
        CHECK(cert.block_ranks->size() == 15);
        for (std::uint64_t rk : *cert.block_ranks) CHECK(rk == 8);
        CHECK(cert.rank_additivity == "recomputed");
    }
}

TEST_CASE("certify h=3 structurally: proof-backed additivity, no elimination") {
    CertifyOptions opt;
    opt.method = CertifyMethod::structural;
    opt.threads = 2;
    RankCertificate cert = certify_strongly_unextendible(kerdock_construct(3, 2), opt);
    CHECK(cert.rank == 2016);
    CHECK(cert.target == 2016);
    CHECK(cert.certified);
    CHECK(cert.primes.empty());
    REQUIRE(cert.block_ranks.has_value());
    CHECK(cert.block_ranks->size() == 63);
    for (std::uint64_t rk : *cert.block_ranks) CHECK(rk == 32);
    CHECK(cert.rank_additivity == "proof-backed");
}

TEST_CASE("certify h=4 structurally passes; full elimination needs explicit opt-in") {
    BentSet set = kerdock_construct(4, 2);
    CertifyOptions structural;
    structural.method = CertifyMethod::structural;
    structural.threads = 2;
    RankCertificate cert = certify_strongly_unextendible(set, structural);
    CHECK(cert.certified);
    CHECK(cert.target == 32640);
    CHECK(cert.rank_additivity == "proof-backed");

    CertifyOptions modular;
    modular.method = CertifyMethod::modular;
    CHECK_THROWS_AS(certify_strongly_unextendible(set, modular), std::invalid_argument);
    CertifyOptions both;
    CHECK_THROWS_AS(certify_strongly_unextendible(set, both), std::invalid_argument);
}

TEST_CASE("certification never claims extendibility: mutant stays inconclusive") {
    // Append a duplicate of column 0, then ask for full column rank: the rank
    // cannot reach the new column count, at either Mersenne modulus.
    ConstraintMatrix m = build_constraint_matrix(kerdock_construct(1));
    std::vector<std::vector<int>> e = entries_of(m.signs);
    for (auto& row : e) row.push_back(row[0]);
    SignMatrix mutant(e);
    RankCertificate cert = modular_rank_certificate(mutant, 1, mutant.cols(), kMersenne31);
    CHECK_FALSE(cert.certified);
    CHECK(cert.verdict() == "inconclusive");
    CHECK(cert.rank == 6);
    CHECK(cert.primes == std::vector<std::uint64_t>{kMersenne31, kMersenne61});
    nlohmann::json j = nlohmann::json::parse(to_json(cert));
    CHECK(j.at("verdict").get<std::string>() == "inconclusive");
    CHECK(cert.summary().find("inference:") == std::string::npos);
}

TEST_CASE("certificate JSON carries the full schema") {
    RankCertificate cert = certify_strongly_unextendible(kerdock_construct(1));
    nlohmann::json j = nlohmann::json::parse(to_json(cert));
    CHECK(j.at("h") == 1);
    CHECK(j.at("method") == "both");
    CHECK(j.at("primes") == nlohmann::json::array({kMersenne31}));
    CHECK(j.at("rank") == 6);
    CHECK(j.at("target") == 6);
    CHECK(j.at("block_ranks") == nlohmann::json::array({2, 2, 2}));
    CHECK(j.at("verdict") == "certified");
    CHECK(j.at("rank_additivity") == "recomputed");
    CHECK(j.at("ordering_version") == 1);

    CertifyOptions modular;
    modular.method = CertifyMethod::modular;
    nlohmann::json jm = nlohmann::json::parse(
        to_json(certify_strongly_unextendible(kerdock_construct(1), modular)));
    CHECK(jm.at("method") == "modular");
    CHECK(jm.at("block_ranks").is_null());
    CHECK(jm.at("rank_additivity").is_null());
}

TEST_CASE("certification output is byte-identical across thread counts") {
    BentSet set = kerdock_construct(2);
    CertifyOptions o1, o4;
    o1.threads = 1;
    o4.threads = 4;
    CHECK(to_json(certify_strongly_unextendible(set, o1)) ==
          to_json(certify_strongly_unextendible(set, o4)));
    ConstraintMatrix m1 = build_constraint_matrix(set, 1);
    ConstraintMatrix m4 = build_constraint_matrix(set, 4);
    for (std::size_t r = 0; r < m1.signs.rows(); ++r)
        for (std::size_t w = 0; w < m1.signs.words_per_row(); ++w)
            CHECK(m1.signs.row_words(r)[w] == m4.signs.row_words(r)[w]);
}

TEST_CASE("UnbiasedCandidate exposes unit entries and cosine coefficients") {
    UnbiasedCandidate cand;
    cand.phases = {0.0, std::numbers::pi / 2, std::numbers::pi};
    std::vector<std::complex<double>> e = cand.entries();
    REQUIRE(e.size() == 3);
    for (const auto& z : e) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
    CHECK(e[0].real() == doctest::Approx(1.0));
    CHECK(e[1].imag() == doctest::Approx(1.0));
    CHECK(cand.coefficient(0, 1) == doctest::Approx(0.0));
    CHECK(cand.coefficient(0, 2) == doctest::Approx(-1.0));
    CHECK(cand.coefficient(1, 2) == doctest::Approx(0.0));
}

TEST_CASE("search floors well above zero on a certified family") {
    MubSet mubs = from_bent_set(kerdock_construct(1));
    SearchResult res = search_unbiased_vector(mubs, 3, 60, 12345);
    CHECK(res.restart_residuals.size() == 3);
    CHECK(res.best_residual ==
          *std::min_element(res.restart_residuals.begin(), res.restart_residuals.end()));
    CHECK(res.best_residual > 1.0);  // observed floor is 64 exactly
    CHECK(res.best.phases.size() == 4);
    // The reported best is self-consistent.
    CHECK(unbiased_residual(mubs, res.best.phases) ==
          doctest::Approx(res.best_residual).epsilon(1e-12));
}

TEST_CASE("search drives the residual to zero for an extendible subfamily") {
    MubSet fx = fixture_c4_5mubs();
    MubSet sub;
    sub.d = 4;
    sub.field = FieldTag::gauss_int;
    sub.bases = {fx.bases[0], fx.bases[1]};  // basis 2 of the fixture extends these
    SearchResult res = search_unbiased_vector(sub, 4, 80, 777);
    CHECK(res.best_residual < 1e-12);
}

TEST_CASE("search is deterministic for a fixed seed") {
    MubSet mubs = from_bent_set(kerdock_construct(1));
    SearchResult a = search_unbiased_vector(mubs, 2, 40, 99);
    SearchResult b = search_unbiased_vector(mubs, 2, 40, 99);
    CHECK(a.best_residual == b.best_residual);
    CHECK(a.restart_residuals == b.restart_residuals);
    CHECK(a.best.phases == b.best.phases);
}

TEST_CASE("unbiased_residual is invariant under a global phase shift") {
    MubSet mubs = from_bent_set(kerdock_construct(1));
    std::vector<double> phases{0.3, 1.1, 2.7, 4.0};
    double base = unbiased_residual(mubs, phases);
    for (double& p : phases) p += 1.234;
    CHECK(unbiased_residual(mubs, phases) == doctest::Approx(base).epsilon(1e-9));
    CHECK_THROWS_AS(unbiased_residual(mubs, std::vector<double>{0.0, 1.0}),
                    std::invalid_argument);
}
