#pragma once

#include <cstdint>

namespace mubcert {

// GF(2^n) in the polynomial basis: bit i of an element is the coefficient
// of z^i, reduction is modulo a fixed irreducible polynomial of degree n.
struct FieldSpec {
    int n = 0;
    std::uint64_t modulus = 0;  // bit n set; e.g. 0b111 is z^2 + z + 1
};

struct FieldElement {
    std::uint32_t bits = 0;
    friend bool operator==(FieldElement, FieldElement) = default;
};

// True iff poly (degree n, bit n set) is irreducible over GF(2); decided by
// trial division, which is exact and fast enough for n <= 31.
bool is_irreducible(std::uint64_t poly, int n);

// FieldSpec for the lexicographically smallest irreducible of degree n,
// smallest meaning minimal as an integer bit pattern. 1 <= n <= 31.
FieldSpec find_irreducible(int n);

FieldElement mul(FieldElement a, FieldElement b, const FieldSpec& spec);
FieldElement pow(FieldElement a, std::uint64_t e, const FieldSpec& spec);

// Absolute trace to GF(2): a + a^2 + a^4 + ... + a^{2^{n-1}}, returned as
// 0 or 1. A result outside {0,1} means the modulus was not irreducible and
// raises std::runtime_error.
int trace(FieldElement a, const FieldSpec& spec);

}  // namespace mubcert
