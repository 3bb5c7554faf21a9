#include "mubcert/boolfun.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace mubcert {

namespace {

void check_vars(int m) {
    if (m < 1 || m > BooleanFunction::kMaxVars)
        throw std::invalid_argument("variable count must be in [1, " +
                                    std::to_string(BooleanFunction::kMaxVars) + "], got " +
                                    std::to_string(m));
}

}  // namespace

BooleanFunction::BooleanFunction(int m) : m_(m) {
    check_vars(m);
    words_.assign((size() + 63) / 64, 0);
}

void BooleanFunction::set(std::size_t i, bool v) {
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v)
        words_[i >> 6] |= bit;
    else
        words_[i >> 6] &= ~bit;
}

bool BooleanFunction::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::string BooleanFunction::table_string() const {
    std::string s(size(), '0');
    for (std::size_t i = 0; i < size(); ++i)
        if (at(i)) s[i] = '1';
    return s;
}

BooleanFunction from_anf(const std::string& anf, int m) {
    check_vars(m);
    std::string s;
    s.reserve(anf.size());
    for (char c : anf)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty ANF expression");

    std::vector<std::string> terms;
    std::size_t start = 0;
    while (true) {
        std::size_t plus = s.find('+', start);
        terms.push_back(s.substr(start, plus == std::string::npos ? plus : plus - start));
        if (plus == std::string::npos) break;
        start = plus + 1;
    }

    int constant = 0;
    bool seen_zero = false, seen_one = false;
    std::vector<std::uint32_t> masks;
    for (const std::string& term : terms) {
        if (term.empty()) throw std::invalid_argument("malformed ANF: empty term");
        if (term == "0") {
            if (seen_zero) throw std::invalid_argument("duplicate term '0'");
            seen_zero = true;
            continue;
        }
        if (term == "1") {
            if (seen_one) throw std::invalid_argument("duplicate term '1'");
            seen_one = true;
            constant ^= 1;
            continue;
        }
        std::uint32_t mask = 0;
        std::size_t i = 0;
        while (i < term.size()) {
            if (term[i] != 'x')
                throw std::invalid_argument("malformed ANF term '" + term + "'");
            ++i;
            std::size_t j = i;
            while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) ++j;
            if (j == i)
                throw std::invalid_argument("missing variable index in term '" + term + "'");
            if (j - i > 3 || std::stol(term.substr(i, j - i)) > m)
                throw std::out_of_range("variable x" + term.substr(i, j - i) +
                                        " out of range for m=" + std::to_string(m));
            long k = std::stol(term.substr(i, j - i));
            if (k < 1)
                throw std::out_of_range("variable index must be at least 1 in term '" + term +
                                        "'");
            std::uint32_t bit = std::uint32_t{1} << (m - static_cast<int>(k));
            if (mask & bit)
                throw std::invalid_argument("repeated variable in monomial '" + term + "'");
            mask |= bit;
            i = j;
        }
        if (std::find(masks.begin(), masks.end(), mask) != masks.end())
            throw std::invalid_argument("duplicate monomial '" + term + "'");
        masks.push_back(mask);
    }

    BooleanFunction f(m);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        int v = constant;
        for (std::uint32_t mk : masks) v ^= ((idx & mk) == mk);
        if (v) f.set(idx, true);
    }
    return f;
}

BooleanFunction from_table_string(const std::string& bits) {
    std::size_t n = bits.size();
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("truth table length must be a power of two, got " +
                                    std::to_string(n));
    int m = std::countr_zero(n);
    check_vars(m);
    BooleanFunction f(m);
    for (std::size_t i = 0; i < n; ++i) {
        if (bits[i] == '1')
            f.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("truth table must contain only '0'/'1'");
    }
    return f;
}

BooleanFunction add(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.vars() != g.vars())
        throw std::invalid_argument("cannot add functions on different variable counts");
    BooleanFunction r = f;
    for (std::size_t w = 0; w < r.words_.size(); ++w) r.words_[w] ^= g.words_[w];
    return r;
}

WalshSpectrum walsh_spectrum(const BooleanFunction& f) {
    const std::size_t n = f.size();
    std::vector<std::int32_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int32_t>(f.sign(i));
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                std::int32_t a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
    return {f.vars(), std::move(v)};
}

bool is_bent(const BooleanFunction& f) {
    if (f.vars() % 2 != 0)
        throw std::invalid_argument("bentness is undefined for odd variable counts");
    const std::int32_t want = std::int32_t{1} << (f.vars() / 2);
    WalshSpectrum sp = walsh_spectrum(f);
    return std::all_of(sp.values.begin(), sp.values.end(),
                       [want](std::int32_t v) { return v == want || v == -want; });
}

std::int64_t derivative_sum(const BooleanFunction& f, std::uint32_t a) {
    if (a >= f.size())
        throw std::invalid_argument("direction index out of range");
    std::int64_t s = 0;
    for (std::size_t x = 0; x < f.size(); ++x) s += (f.at(x) == f.at(x ^ a)) ? 1 : -1;
    return s;
}

int dot(std::uint64_t u, std::uint64_t x) { return std::popcount(u & x) & 1; }

}  // namespace mubcert
