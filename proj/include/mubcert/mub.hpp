#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "mubcert/bentset.hpp"

namespace mubcert {

struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;
    friend bool operator==(GaussInt, GaussInt) = default;
};

inline GaussInt gmul(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GaussInt gconj(GaussInt a) { return {a.re, -a.im}; }

enum class FieldTag { real_pm1, gauss_int, complex_float };

// A collection of proposed mutually unbiased bases of C^d, stored
// unnormalized: bases are mutually unbiased when every cross-basis pair
// satisfies |<A,B>|^2 * d = |A|^2 |B|^2 and each basis is orthogonal.
// Exact fields (real_pm1, gauss_int) use `bases`; complex_float uses
// `fbases`. Every basis holds exactly d vectors of d entries.
struct MubSet {
    int d = 0;
    FieldTag field = FieldTag::real_pm1;
    std::vector<std::vector<std::vector<GaussInt>>> bases;
    std::vector<std::vector<std::vector<std::complex<double>>>> fbases;

    std::size_t num_bases() const {
        return field == FieldTag::complex_float ? fbases.size() : bases.size();
    }
};

enum class VerifyMode { exact, tolerance };

struct MubViolation {
    enum class Kind { basis_count_bound, zero_vector, orthogonality, unbiasedness };
    Kind kind = Kind::orthogonality;
    std::size_t basis_a = 0, vec_a = 0;
    std::size_t basis_b = 0, vec_b = 0;
    // Compared quantities: |<A,B>|^2 vs 0 (orthogonality), |<A,B>|^2 d vs
    // |A|^2 |B|^2 (unbiasedness), basis count vs bound, |A|^2 vs 0.
    double lhs = 0, rhs = 0;

    std::string describe() const;
};

struct MubReport {
    VerifyMode mode = VerifyMode::exact;
    double tolerance = 0;
    std::vector<MubViolation> violations;  // sorted by (kind group, indices)

    bool pass() const { return violations.empty(); }
    std::string summary() const;
};

// Checks the basis-count bound (b <= d/2 + 1 for real sets, b <= d + 1
// otherwise), per-basis orthogonality with nonzero vectors, and pairwise
// unbiasedness. Exact mode demands integer equality and rejects
// complex_float sets; tolerance mode compares normalized quantities to
// within `tolerance`. Thread count never changes the report.
MubReport verify_mub_set(const MubSet& set, VerifyMode mode, double tolerance = 1e-9,
                         int threads = 1);

// The bent-set MUB family in C^d, d = 2^{2h}: basis 0 is 2^h times the
// standard basis; basis j+1 has vectors (+-1)^{g_j(x) + u.x} indexed by u.
// The result is verified exactly before being returned.
MubSet from_bent_set(const BentSet& set, int threads = 1);

// Tensor product: bases i of both inputs combine vectorwise, keeping
// min(b1, b2) bases in dimension d1*d2. Both inputs and the output must
// pass verification.
MubSet product(const MubSet& a, const MubSet& b, int threads = 1);

// The classical five mutually unbiased bases of C^4 with entries in
// {0, 1, -1, i, -i} (basis 0 scaled by 2), bundled as a reference set.
MubSet fixture_c4_5mubs();

std::string to_json(const MubSet& set);
MubSet mub_from_json(const std::string& text);

}  // namespace mubcert
