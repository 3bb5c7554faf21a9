#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mubcert/bentset.hpp"
#include "mubcert/mub.hpp"

namespace mubcert {

// Dense +-1 matrix storing one sign bit per entry (set bit = negative).
class SignMatrix {
public:
    SignMatrix() = default;
    SignMatrix(std::size_t rows, std::size_t cols);
    explicit SignMatrix(const std::vector<std::vector<int>>& entries);  // +-1 entries

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool negative(std::size_t r, std::size_t c) const {
        return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    int sign(std::size_t r, std::size_t c) const { return negative(r, c) ? -1 : 1; }
    void set_negative(std::size_t r, std::size_t c, bool neg);

    const std::uint64_t* row_words(std::size_t r) const { return bits_.data() + r * wpr_; }
    std::uint64_t* row_words(std::size_t r) { return bits_.data() + r * wpr_; }

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

// The linear system whose full column rank certifies that no vector can be
// unbiased to the whole bent-set MUB family. Rows are indexed by (j, u):
// row j * 2^{2h} + u has entry (-1)^{g_j(x) + g_j(y) + u.(x+y)} at column
// (x, y). Columns enumerate unordered pairs x < y in lexicographic order;
// for a normal-form set of 2^{2h-1} functions the matrix is
// 2^{4h-1} x 2^{2h-1}(2^{2h} - 1).
struct ConstraintMatrix {
    int h = 0;
    SignMatrix signs;
    std::vector<std::uint32_t> col_x, col_y;  // column -> pair (x, y)
};

// Columns of one difference class l = x + y, in increasing x, together with
// a standalone copy of their sign entries (all rows).
struct SubmatrixBlock {
    std::uint32_t ell = 0;
    std::vector<std::uint32_t> columns;  // global column indices
    SignMatrix slice;
};

// Builds the constraint matrix for a normal-form bent set (functions[0]
// must be the zero function).
ConstraintMatrix build_constraint_matrix(const BentSet& set, int threads = 1);

// Partition of the columns by difference class l = 1 .. 2^{2h}-1; the
// column sets are disjoint and cover the matrix.
std::vector<SubmatrixBlock> blocks(const ConstraintMatrix& matrix);

// Column rank of the sign matrix over GF(p) by row elimination with partial
// pivoting. p must be an odd prime below 2^62; 2^31 - 1 and 2^61 - 1 take a
// fast Mersenne reduction. A full-rank result certifies full rank over the
// rationals (reduction mod p can only lose rank).
std::size_t rank_mod_p(const SignMatrix& matrix, std::uint64_t p);

struct GramDefect {
    std::uint32_t ell = 0;   // difference class, 0 for the tag-vector check
    std::uint32_t j = 0, k = 0;
    std::int64_t value = 0, expected = 0;
};

// Block-diagonal structure evidence. For each difference class l, the u = 0
// rows restricted to that block must have Gram matrix 2^{2h-1} I (their
// pairwise sign agreements cancel exactly); the per-row tag vectors
// ((-1)^{u.l})_u across classes must have Gram 2^{2h} I. Together these
// force every block to full column rank, with ranks adding across blocks.
struct StructuralEvidence {
    int h = 0;
    std::size_t blocks_checked = 0;
    std::vector<GramDefect> block_defects;
    std::vector<GramDefect> tag_defects;

    bool pass() const;
    std::string summary() const;
};

StructuralEvidence structural_certificate(const BentSet& set, int threads = 1);

enum class CertifyMethod { modular, structural, both };

std::string method_name(CertifyMethod m);

// Outcome of a certification run. `certified` means the constraint matrix
// was shown to have full column rank (rank == target), so the family admits
// no unbiased vector and is strongly unextendible. The only other verdict
// is "inconclusive": this tool never claims extendibility.
struct RankCertificate {
    int h = 0;
    CertifyMethod method = CertifyMethod::both;
    std::vector<std::uint64_t> primes;  // moduli used, in order
    std::uint64_t rank = 0, target = 0;
    std::optional<std::vector<std::uint64_t>> block_ranks;  // per class l = 1..2^{2h}-1
    // "recomputed" when block-rank additivity was re-established by modular
    // elimination (h <= 2), "proof-backed" when it rests on the structural
    // Gram evidence alone, empty for purely modular runs.
    std::string rank_additivity;
    bool certified = false;
    int ordering_version = 1;  // column enumeration convention

    std::string verdict() const { return certified ? "certified" : "inconclusive"; }
    std::string summary() const;
};

inline constexpr std::uint64_t kMersenne31 = (std::uint64_t{1} << 31) - 1;
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

struct CertifyOptions {
    CertifyMethod method = CertifyMethod::both;
    std::uint64_t prime = kMersenne31;
    // Full-matrix elimination is budgeted for h <= 3; larger h requires
    // explicit opt-in (the structural method has no such limit).
    bool allow_large = false;
    int threads = 1;
};

// Assembles a modular certificate for an explicit matrix: rank at `prime`,
// with an automatic second attempt at 2^61 - 1 when the first falls short.
RankCertificate modular_rank_certificate(const SignMatrix& matrix, int h,
                                         std::uint64_t target, std::uint64_t prime);

// End-to-end certification of strong unextendibility for a normal-form
// bent set, by the requested method(s). Byte-identical output for equal
// inputs and options, regardless of thread count.
RankCertificate certify_strongly_unextendible(const BentSet& set,
                                              const CertifyOptions& options = {});

std::string to_json(const RankCertificate& cert);

// Unit-modulus candidate A(x) = e^{i theta(x)}, parameterized by phases.
struct UnbiasedCandidate {
    std::vector<double> phases;

    std::vector<std::complex<double>> entries() const;
    // a_{x,y} = Re(A(x) conj(A(y))) = cos(theta(x) - theta(y)); these are the
    // coefficients the constraint matrix forces to zero.
    double coefficient(std::size_t x, std::size_t y) const;
};

// Best-effort numeric search for a vector unbiased to every basis of the
// set: random-restart coordinate descent over the phases of a unit-modulus
// candidate. Returns the residual sum of squared unbiasedness defects; a
// residual bounded away from zero is diagnostic evidence only, never a
// certificate. Deterministic for a fixed seed.
struct SearchResult {
    double best_residual = 0;
    std::vector<double> restart_residuals;
    UnbiasedCandidate best;
};

SearchResult search_unbiased_vector(const MubSet& set, int restarts, int iterations,
                                    std::uint64_t seed);

// Residual the search minimizes, evaluated at an explicit phase vector.
double unbiased_residual(const MubSet& set, const std::vector<double>& phases);

}  // namespace mubcert
