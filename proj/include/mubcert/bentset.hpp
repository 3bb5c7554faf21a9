#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mubcert/boolfun.hpp"

namespace mubcert {

// An ordered family of Boolean functions on Z_2^{2h} whose pairwise sums are
// all bent. The normal form used throughout puts the zero function first.
struct BentSet {
    int h = 0;
    std::vector<BooleanFunction> functions;

    int vars() const { return 2 * h; }
    std::size_t size() const { return functions.size(); }
};

struct BentPairWitness {
    std::size_t j = 0, k = 0;   // offending pair, j < k
    std::uint32_t u = 0;        // spectrum index where |value| != 2^h
    std::int32_t value = 0;
};

struct BentVerdict {
    bool pass = true;
    std::optional<BentPairWitness> witness;  // first failure in (j, k, u) order

    std::string describe() const;
};

// Checks that every pairwise sum g_j + g_k (j < k) is bent. All functions
// must share one even variable count. The verdict is independent of input
// order and of the thread count.
BentVerdict verify_bent_set(std::span<const BooleanFunction> functions, int threads = 1);

// Translates a verified family into normal form by adding the first element
// to every member, so the result starts with the zero function. Throws
// std::invalid_argument if the family fails verify_bent_set.
BentSet normalize(std::span<const BooleanFunction> functions, int threads = 1);

// The Kerdock-type bent set on Z_2^{2h}: 2^{2h-1} quadratics built from the
// trace form Q(z) = sum_{i=1}^{(n-1)/2} Tr(z^{2^i + 1}) over GF(2^{2h-1}),
// with points (x, eps) in F x Z_2 packed as index (x << 1) | eps. The result
// is re-verified before being returned; 1 <= h <= 7.
BentSet kerdock_construct(int h, int threads = 1);

// The classical published size-8 bent set on Z_2^4, bundled as a reference
// input for the h = 2 pipeline.
BentSet reference_bent_set_h2();

std::string to_json(const BentSet& set);
BentSet bentset_from_json(const std::string& text);

}  // namespace mubcert
