#include "mubcert/gf2.hpp"

#include <stdexcept>
#include <string>

namespace mubcert {

namespace {

int degree(std::uint64_t poly) {
    int d = -1;
    while (poly) {
        ++d;
        poly >>= 1;
    }
    return d;
}

// Remainder of f modulo d over GF(2).
std::uint64_t poly_mod(std::uint64_t f, std::uint64_t d) {
    int dd = degree(d);
    for (int shift = degree(f) - dd; shift >= 0; --shift)
        if ((f >> (shift + dd)) & 1) f ^= d << shift;
    return f;
}

void check_spec(const FieldSpec& spec) {
    if (spec.n < 1 || spec.n > 31 || degree(spec.modulus) != spec.n)
        throw std::invalid_argument("field spec requires a degree-n modulus with 1 <= n <= 31");
}

void check_element(FieldElement a, const FieldSpec& spec) {
    if (spec.n < 32 && (a.bits >> spec.n) != 0)
        throw std::invalid_argument("element does not fit in GF(2^" + std::to_string(spec.n) +
                                    ")");
}

}  // namespace

bool is_irreducible(std::uint64_t poly, int n) {
    if (n < 1 || n > 31) throw std::invalid_argument("degree must be in [1, 31]");
    if (degree(poly) != n) throw std::invalid_argument("polynomial must have degree n");
    if ((poly & 1) == 0) return n == 1 && poly == 2;  // divisible by z
    for (int dd = 1; dd <= n / 2; ++dd)
        for (std::uint64_t d = (std::uint64_t{1} << dd); d < (std::uint64_t{1} << (dd + 1)); ++d)
            if (poly_mod(poly, d) == 0) return false;
    return true;
}

FieldSpec find_irreducible(int n) {
    if (n < 1 || n > 31) throw std::invalid_argument("degree must be in [1, 31]");
    for (std::uint64_t p = (std::uint64_t{1} << n); p < (std::uint64_t{1} << (n + 1)); ++p)
        if (is_irreducible(p, n)) return {n, p};
    throw std::runtime_error("no irreducible polynomial found");  // unreachable
}

FieldElement mul(FieldElement a, FieldElement b, const FieldSpec& spec) {
    check_spec(spec);
    check_element(a, spec);
    check_element(b, spec);
    std::uint64_t r = 0, x = a.bits, y = b.bits;
    while (y) {
        if (y & 1) r ^= x;
        y >>= 1;
        x <<= 1;
    }
    for (int d = 2 * spec.n - 2; d >= spec.n; --d)
        if ((r >> d) & 1) r ^= spec.modulus << (d - spec.n);
    return {static_cast<std::uint32_t>(r)};
}

FieldElement pow(FieldElement a, std::uint64_t e, const FieldSpec& spec) {
    check_spec(spec);
    check_element(a, spec);
    FieldElement r{1}, base = a;
    while (e) {
        if (e & 1) r = mul(r, base, spec);
        base = mul(base, base, spec);
        e >>= 1;
    }
    return r;
}

int trace(FieldElement a, const FieldSpec& spec) {
    check_spec(spec);
    check_element(a, spec);
    std::uint32_t s = 0;
    FieldElement x = a;
    for (int i = 0; i < spec.n; ++i) {
        s ^= x.bits;
        x = mul(x, x, spec);
    }
    if (s > 1)
        throw std::runtime_error("trace landed outside GF(2); modulus is not irreducible");
    return static_cast<int>(s);
}

}  // namespace mubcert
