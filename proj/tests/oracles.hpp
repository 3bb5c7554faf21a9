#pragma once

// Independent test oracles. These deliberately avoid the library's own code
// paths: the spectrum oracle is the O(4^m) definition sum, and the exact
// rank oracle is fraction-free Bareiss elimination over arbitrary-precision
// integers, so rational ranks are computed with no modular arithmetic.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "mubcert/boolfun.hpp"
#include "mubcert/unextend.hpp"

namespace oracle {

// Direct double-loop Walsh-Hadamard spectrum from the definition.
inline std::vector<std::int32_t> walsh_direct(const mubcert::BooleanFunction& f) {
    const std::size_t n = f.size();
    std::vector<std::int32_t> out(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        std::int32_t s = 0;
        for (std::size_t x = 0; x < n; ++x)
            s += ((f.at(x) + mubcert::dot(u, x)) & 1) ? -1 : 1;
        out[u] = s;
    }
    return out;
}

// Exact rank over the rationals by Bareiss fraction-free elimination.
inline std::size_t rank_exact(const mubcert::SignMatrix& m) {
    using Int = boost::multiprecision::cpp_int;
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Int>> a(R, std::vector<Int>(C));
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) a[r][c] = m.sign(r, c);

    Int prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t piv = rank;
        while (piv < R && a[piv][c] == 0) ++piv;
        if (piv == R) continue;
        if (piv != rank) std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < R; ++r) {
            for (std::size_t k = c + 1; k < C; ++k)
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

}  // namespace oracle
