#include "mubcert/bentset.hpp"

#include <cstdlib>
#include <stdexcept>

#include "mubcert/gf2.hpp"
#include "mubcert/parallel.hpp"

namespace mubcert {

std::string BentVerdict::describe() const {
    if (pass) return "pass";
    return "fail: sum of functions " + std::to_string(witness->j) + " and " +
           std::to_string(witness->k) + " is not bent (spectrum value " +
           std::to_string(witness->value) + " at u=" + std::to_string(witness->u) + ")";
}

BentVerdict verify_bent_set(std::span<const BooleanFunction> functions, int threads) {
    if (functions.empty()) throw std::invalid_argument("empty function family");
    const int m = functions[0].vars();
    if (m % 2 != 0)
        throw std::invalid_argument("bent sets require an even variable count");
    for (const BooleanFunction& f : functions)
        if (f.vars() != m)
            throw std::invalid_argument("all functions must share one variable count");

    const std::size_t r = functions.size();
    const std::int32_t want = std::int32_t{1} << (m / 2);

    struct Hit {
        bool found = false;
        BentPairWitness w;
    };
    // One slot per j; each worker scans its j-range in order and keeps only
    // the first failure, so the merged result is order- and thread-independent.
    std::vector<Hit> hits(r);
    detail::parallel_chunks(r, threads, [&](std::size_t j0, std::size_t j1) {
        for (std::size_t j = j0; j < j1; ++j) {
            for (std::size_t k = j + 1; k < r; ++k) {
                WalshSpectrum sp = walsh_spectrum(add(functions[j], functions[k]));
                for (std::uint32_t u = 0; u < sp.values.size(); ++u) {
                    std::int32_t v = sp.values[u];
                    if (v != want && v != -want) {
                        hits[j] = {true, {j, k, u, v}};
                        break;
                    }
                }
                if (hits[j].found) break;
            }
            if (hits[j].found) break;
        }
    });
    for (const Hit& h : hits)
        if (h.found) return {false, h.w};
    return {true, std::nullopt};
}

BentSet normalize(std::span<const BooleanFunction> functions, int threads) {
    BentVerdict v = verify_bent_set(functions, threads);
    if (!v.pass)
        throw std::invalid_argument("family is not a bent set: " + v.describe());
    BentSet out;
    out.h = functions[0].vars() / 2;
    out.functions.reserve(functions.size());
    for (const BooleanFunction& f : functions) out.functions.push_back(add(f, functions[0]));
    return out;
}

// Kerdock-type construction. Points of Z_2^{2h} are pairs (x, eps) in
// F x Z_2 with F = GF(2^{2h-1}), packed as index (x << 1) | eps; the field
// uses the lexicographically smallest irreducible modulus. With
// Q(z) = sum_{i=1}^{(n-1)/2} Tr(z^{2^i + 1}), the family is the zero
// function together with f_a(x, eps) = Q(ax) + eps Tr(ax) for a != 0.
BentSet kerdock_construct(int h, int threads) {
    if (h < 1 || h > 7)
        throw std::invalid_argument("kerdock_construct supports 1 <= h <= 7");
    const int n = 2 * h - 1;
    const FieldSpec spec = find_irreducible(n);
    const std::uint32_t fsize = std::uint32_t{1} << n;

    // Tables of Q and Tr over all of F, one field multiplication per point
    // afterwards.
    std::vector<std::uint8_t> qtab(fsize), trtab(fsize);
    for (std::uint32_t z = 0; z < fsize; ++z) {
        FieldElement zz{z};
        trtab[z] = static_cast<std::uint8_t>(trace(zz, spec));
        std::uint8_t q = 0;
        FieldElement w = zz;  // w = z^{2^i} as i advances
        for (int i = 1; i <= (n - 1) / 2; ++i) {
            w = mul(w, w, spec);
            q ^= static_cast<std::uint8_t>(trace(mul(w, zz, spec), spec));
        }
        qtab[z] = q;
    }

    BentSet out;
    out.h = h;
    out.functions.resize(fsize, BooleanFunction(2 * h));
    detail::parallel_chunks(fsize - 1, threads, [&](std::size_t a0, std::size_t a1) {
        for (std::size_t t = a0; t < a1; ++t) {
            FieldElement a{static_cast<std::uint32_t>(t + 1)};
            BooleanFunction f(2 * h);
            for (std::uint32_t x = 0; x < fsize; ++x) {
                std::uint32_t ax = mul(a, FieldElement{x}, spec).bits;
                std::uint32_t base = x << 1;
                if (qtab[ax]) f.set(base, true);
                if (qtab[ax] ^ trtab[ax]) f.set(base | 1, true);
            }
            out.functions[t + 1] = std::move(f);
        }
    });

    BentVerdict v = verify_bent_set(out.functions, threads);
    if (!v.pass)
        throw std::runtime_error("kerdock_construct produced an invalid family: " +
                                 v.describe());
    return out;
}

BentSet reference_bent_set_h2() {
    static const char* kAnfs[8] = {
        "0",
        "x1x2 + x3x4",
        "x1x2 + x1x3 + x1x4 + x2x3",
        "x1x2 + x1x3 + x2x4",
        "x1x2 + x1x4 + x2x3 + x2x4",
        "x1x3 + x1x4 + x2x4 + x3x4",
        "x1x3 + x2x3 + x2x4 + x3x4",
        "x1x4 + x2x3 + x3x4",
    };
    BentSet out;
    out.h = 2;
    for (const char* anf : kAnfs) out.functions.push_back(from_anf(anf, 4));
    BentVerdict v = verify_bent_set(out.functions);
    if (!v.pass)
        throw std::runtime_error("reference bent set failed verification: " + v.describe());
    return out;
}

}  // namespace mubcert
