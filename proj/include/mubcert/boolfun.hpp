#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mubcert {

// Boolean functions g : Z_2^m -> Z_2 as packed truth tables. The point with
// index i assigns variable x_1 the most significant of the low m bits of i,
// so table order is lexicographic in (x_1, ..., x_m).
class BooleanFunction {
public:
    static constexpr int kMaxVars = 20;

    BooleanFunction() = default;
    explicit BooleanFunction(int m);  // the zero function on m variables

    int vars() const { return m_; }
    std::size_t size() const { return std::size_t{1} << m_; }

    bool at(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v);
    // (-1)^{g(i)}
    int sign(std::size_t i) const { return at(i) ? -1 : 1; }

    bool is_zero() const;
    std::string table_string() const;
    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;
    friend BooleanFunction add(const BooleanFunction&, const BooleanFunction&);

private:
    int m_ = 0;
    std::vector<std::uint64_t> words_;
};

// Parses an algebraic normal form like "x1x2 + x3x4 + 1" over m variables.
// Terms are monomials in distinct variables (or the constants "0"/"1"),
// joined by '+'; duplicate terms are rejected. Throws std::invalid_argument
// on malformed input and std::out_of_range when a variable index exceeds m.
BooleanFunction from_anf(const std::string& anf, int m);

// Parses a truth-table bitstring of length 2^m ("0110..." with index 0 first).
BooleanFunction from_table_string(const std::string& bits);

// Pointwise sum (XOR) of two functions on the same variable count.
BooleanFunction add(const BooleanFunction& f, const BooleanFunction& g);

struct WalshSpectrum {
    int m = 0;
    std::vector<std::int32_t> values;  // values[u] = sum_x (-1)^{g(x) + u.x}
};

// Full Walsh-Hadamard spectrum via the in-place butterfly, O(m 2^m).
WalshSpectrum walsh_spectrum(const BooleanFunction& f);

// True iff every spectrum value has magnitude 2^{m/2}. Throws
// std::invalid_argument for odd m, where bentness is undefined.
bool is_bent(const BooleanFunction& f);

// sum_x (-1)^{g(x) + g(x + a)}; bent functions give 0 for every a != 0.
std::int64_t derivative_sum(const BooleanFunction& f, std::uint32_t a);

// Parity of the bitwise AND of two point/mask indices (the inner product
// on Z_2^m once both sides use the lexicographic index convention).
int dot(std::uint64_t u, std::uint64_t x);

}  // namespace mubcert
