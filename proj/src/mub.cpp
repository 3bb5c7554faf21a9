#include "mubcert/mub.hpp"

#include <cmath>
#include <stdexcept>

#include "mubcert/parallel.hpp"

namespace mubcert {

namespace {

constexpr std::int64_t kMaxEntry = 65536;   // keeps exact arithmetic inside __int128
constexpr int kMaxDim = 65536;

void check_shape(const MubSet& set) {
    if (set.d < 1 || set.d > kMaxDim)
        throw std::invalid_argument("dimension must be in [1, " + std::to_string(kMaxDim) +
                                    "]");
    const std::size_t d = static_cast<std::size_t>(set.d);
    if (set.field == FieldTag::complex_float) {
        if (set.fbases.empty() || !set.bases.empty())
            throw std::invalid_argument("complex_float sets must populate fbases only");
        for (const auto& basis : set.fbases) {
            if (basis.size() != d)
                throw std::invalid_argument("each basis must hold exactly d vectors");
            for (const auto& vec : basis)
                if (vec.size() != d)
                    throw std::invalid_argument("each vector must hold exactly d entries");
        }
        return;
    }
    if (set.bases.empty() || !set.fbases.empty())
        throw std::invalid_argument("exact sets must populate bases only");
    for (const auto& basis : set.bases) {
        if (basis.size() != d)
            throw std::invalid_argument("each basis must hold exactly d vectors");
        for (const auto& vec : basis) {
            if (vec.size() != d)
                throw std::invalid_argument("each vector must hold exactly d entries");
            for (const GaussInt& e : vec)
                if (e.re < -kMaxEntry || e.re > kMaxEntry || e.im < -kMaxEntry ||
                    e.im > kMaxEntry)
                    throw std::invalid_argument("exact entries must have magnitude <= " +
                                                std::to_string(kMaxEntry));
        }
    }
}

GaussInt inner_exact(const std::vector<GaussInt>& a, const std::vector<GaussInt>& b) {
    std::int64_t re = 0, im = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        re += a[k].re * b[k].re + a[k].im * b[k].im;
        im += a[k].im * b[k].re - a[k].re * b[k].im;
    }
    return {re, im};
}

std::complex<double> inner_float(const std::vector<std::complex<double>>& a,
                                 const std::vector<std::complex<double>>& b) {
    std::complex<double> s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::conj(b[k]);
    return s;
}

double abs2(std::complex<double> z) { return z.real() * z.real() + z.imag() * z.imag(); }

using Wide = __int128;

Wide abs2_wide(GaussInt z) {
    return static_cast<Wide>(z.re) * z.re + static_cast<Wide>(z.im) * z.im;
}

std::vector<std::vector<std::complex<double>>> to_float_basis(
    const std::vector<std::vector<GaussInt>>& basis) {
    std::vector<std::vector<std::complex<double>>> out(basis.size());
    for (std::size_t v = 0; v < basis.size(); ++v) {
        out[v].reserve(basis[v].size());
        for (const GaussInt& e : basis[v])
            out[v].emplace_back(static_cast<double>(e.re), static_cast<double>(e.im));
    }
    return out;
}

}  // namespace

std::string MubViolation::describe() const {
    switch (kind) {
        case Kind::basis_count_bound:
            return "basis count " + std::to_string(static_cast<long long>(lhs)) +
                   " exceeds the bound " + std::to_string(static_cast<long long>(rhs));
        case Kind::zero_vector:
            return "basis " + std::to_string(basis_a) + " vector " + std::to_string(vec_a) +
                   " has zero norm";
        case Kind::orthogonality:
            return "basis " + std::to_string(basis_a) + " vectors " + std::to_string(vec_a) +
                   "," + std::to_string(vec_b) + ": |<A,B>|^2 = " + std::to_string(lhs) +
                   " != 0";
        case Kind::unbiasedness:
            return "bases " + std::to_string(basis_a) + "," + std::to_string(basis_b) +
                   " vectors " + std::to_string(vec_a) + "," + std::to_string(vec_b) +
                   ": |<A,B>|^2 d = " + std::to_string(lhs) +
                   " vs |A|^2 |B|^2 = " + std::to_string(rhs);
    }
    return "?";
}

std::string MubReport::summary() const {
    if (pass()) return "pass";
    std::string s = std::to_string(violations.size()) + " violation(s)";
    for (const MubViolation& v : violations) s += "\n  " + v.describe();
    return s;
}

MubReport verify_mub_set(const MubSet& set, VerifyMode mode, double tolerance, int threads) {
    check_shape(set);
    if (mode == VerifyMode::exact && set.field == FieldTag::complex_float)
        throw std::invalid_argument("exact verification requires an exact field");
    if (mode == VerifyMode::tolerance && !(tolerance > 0))
        throw std::invalid_argument("tolerance must be positive");

    MubReport report;
    report.mode = mode;
    report.tolerance = mode == VerifyMode::tolerance ? tolerance : 0;

    const std::size_t b = set.num_bases();
    const std::size_t d = static_cast<std::size_t>(set.d);
    const std::size_t bound =
        set.field == FieldTag::real_pm1 ? d / 2 + 1 : d + 1;
    if (b > bound) {
        MubViolation v;
        v.kind = MubViolation::Kind::basis_count_bound;
        v.lhs = static_cast<double>(b);
        v.rhs = static_cast<double>(bound);
        report.violations.push_back(v);
    }

    // Float view for tolerance mode, regardless of storage field.
    std::vector<std::vector<std::vector<std::complex<double>>>> fview;
    const auto* fb = &set.fbases;
    if (mode == VerifyMode::tolerance && set.field != FieldTag::complex_float) {
        fview.reserve(b);
        for (const auto& basis : set.bases) fview.push_back(to_float_basis(basis));
        fb = &fview;
    }

    // Tasks: within-basis checks first, then cross pairs; one result slot per
    // task keeps the report independent of scheduling.
    struct Task {
        std::size_t b1, b2;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < b; ++i) tasks.push_back({i, i});
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = i + 1; j < b; ++j) tasks.push_back({i, j});
    std::vector<std::vector<MubViolation>> slots(tasks.size());

    if (mode == VerifyMode::exact) {
        std::vector<std::vector<std::int64_t>> norm2(b, std::vector<std::int64_t>(d));
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t v = 0; v < d; ++v)
                norm2[i][v] = inner_exact(set.bases[i][v], set.bases[i][v]).re;

        detail::parallel_chunks(tasks.size(), threads, [&](std::size_t t0, std::size_t t1) {
            for (std::size_t t = t0; t < t1; ++t) {
                const auto [i, j] = tasks[t];
                auto& out = slots[t];
                if (i == j) {
                    for (std::size_t v = 0; v < d; ++v)
                        if (norm2[i][v] == 0)
                            out.push_back({MubViolation::Kind::zero_vector, i, v, i, v, 0, 0});
                    for (std::size_t v = 0; v < d; ++v)
                        for (std::size_t w = v + 1; w < d; ++w) {
                            GaussInt ip = inner_exact(set.bases[i][v], set.bases[i][w]);
                            if (ip.re != 0 || ip.im != 0)
                                out.push_back({MubViolation::Kind::orthogonality, i, v, i, w,
                                               static_cast<double>(abs2_wide(ip)), 0});
                        }
                } else {
                    for (std::size_t v = 0; v < d; ++v)
                        for (std::size_t w = 0; w < d; ++w) {
                            GaussInt ip = inner_exact(set.bases[i][v], set.bases[j][w]);
                            Wide lhs = abs2_wide(ip) * static_cast<Wide>(d);
                            Wide rhs = static_cast<Wide>(norm2[i][v]) * norm2[j][w];
                            if (lhs != rhs)
                                out.push_back({MubViolation::Kind::unbiasedness, i, v, j, w,
                                               static_cast<double>(lhs),
                                               static_cast<double>(rhs)});
                        }
                }
            }
        });
    } else {
        std::vector<std::vector<double>> norm2(b, std::vector<double>(d));
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t v = 0; v < d; ++v) norm2[i][v] = inner_float((*fb)[i][v], (*fb)[i][v]).real();

        detail::parallel_chunks(tasks.size(), threads, [&](std::size_t t0, std::size_t t1) {
            for (std::size_t t = t0; t < t1; ++t) {
                const auto [i, j] = tasks[t];
                auto& out = slots[t];
                if (i == j) {
                    for (std::size_t v = 0; v < d; ++v)
                        if (norm2[i][v] == 0)
                            out.push_back({MubViolation::Kind::zero_vector, i, v, i, v, 0, 0});
                    for (std::size_t v = 0; v < d; ++v)
                        for (std::size_t w = v + 1; w < d; ++w) {
                            double ip2 = abs2(inner_float((*fb)[i][v], (*fb)[i][w]));
                            if (ip2 > tolerance)
                                out.push_back({MubViolation::Kind::orthogonality, i, v, i, w,
                                               ip2, 0});
                        }
                } else {
                    for (std::size_t v = 0; v < d; ++v)
                        for (std::size_t w = 0; w < d; ++w) {
                            double ip2 = abs2(inner_float((*fb)[i][v], (*fb)[j][w]));
                            double lhs = ip2 * static_cast<double>(d);
                            double rhs = norm2[i][v] * norm2[j][w];
                            if (std::abs(lhs - rhs) > tolerance)
                                out.push_back({MubViolation::Kind::unbiasedness, i, v, j, w,
                                               lhs, rhs});
                        }
                }
            }
        });
    }

    for (auto& slot : slots)
        report.violations.insert(report.violations.end(), slot.begin(), slot.end());
    return report;
}

MubSet from_bent_set(const BentSet& set, int threads) {
    if (set.functions.empty() || !set.functions[0].is_zero())
        throw std::invalid_argument("bent set must be in normal form (zero function first)");
    const int m = 2 * set.h;
    const std::size_t d = std::size_t{1} << m;
    const std::int64_t scale = std::int64_t{1} << set.h;

    MubSet out;
    out.d = static_cast<int>(d);
    out.field = FieldTag::real_pm1;
    out.bases.resize(set.size() + 1);

    auto& b0 = out.bases[0];
    b0.assign(d, std::vector<GaussInt>(d));
    for (std::size_t k = 0; k < d; ++k) b0[k][k] = {scale, 0};

    detail::parallel_chunks(set.size(), threads, [&](std::size_t j0, std::size_t j1) {
        for (std::size_t j = j0; j < j1; ++j) {
            auto& basis = out.bases[j + 1];
            basis.assign(d, std::vector<GaussInt>(d));
            const BooleanFunction& g = set.functions[j];
            for (std::size_t u = 0; u < d; ++u)
                for (std::size_t x = 0; x < d; ++x)
                    basis[u][x] = {(g.at(x) ^ dot(u, x)) ? -1 : 1, 0};
        }
    });

    MubReport gate = verify_mub_set(out, VerifyMode::exact, 0 /*unused*/, threads);
    if (!gate.pass())
        throw std::runtime_error("constructed set failed exact verification: " +
                                 gate.violations.front().describe());
    return out;
}

MubSet product(const MubSet& a, const MubSet& b, int threads) {
    auto gate = [&](const MubSet& s, const char* side) {
        VerifyMode mode = s.field == FieldTag::complex_float ? VerifyMode::tolerance
                                                             : VerifyMode::exact;
        MubReport r = verify_mub_set(s, mode, 1e-9, threads);
        if (!r.pass())
            throw std::invalid_argument(std::string(side) + " factor fails verification: " +
                                        r.violations.front().describe());
    };
    gate(a, "left");
    gate(b, "right");

    if (static_cast<long long>(a.d) * b.d > kMaxDim)
        throw std::invalid_argument("product dimension exceeds the supported maximum " +
                                    std::to_string(kMaxDim));

    MubSet out;
    out.d = a.d * b.d;
    const std::size_t nb = std::min(a.num_bases(), b.num_bases());
    const bool as_float =
        a.field == FieldTag::complex_float || b.field == FieldTag::complex_float;
    if (as_float) {
        out.field = FieldTag::complex_float;
        auto fbasis = [](const MubSet& s, std::size_t i) {
            return s.field == FieldTag::complex_float ? s.fbases[i]
                                                      : to_float_basis(s.bases[i]);
        };
        out.fbases.resize(nb);
        for (std::size_t i = 0; i < nb; ++i) {
            auto ba = fbasis(a, i), bb = fbasis(b, i);
            auto& dst = out.fbases[i];
            dst.reserve(static_cast<std::size_t>(out.d));
            for (const auto& va : ba)
                for (const auto& vb : bb) {
                    std::vector<std::complex<double>> v;
                    v.reserve(va.size() * vb.size());
                    for (const auto& ea : va)
                        for (const auto& eb : vb) v.push_back(ea * eb);
                    dst.push_back(std::move(v));
                }
        }
    } else {
        out.field = (a.field == FieldTag::gauss_int || b.field == FieldTag::gauss_int)
                        ? FieldTag::gauss_int
                        : FieldTag::real_pm1;
        out.bases.resize(nb);
        for (std::size_t i = 0; i < nb; ++i) {
            auto& dst = out.bases[i];
            dst.reserve(static_cast<std::size_t>(out.d));
            for (const auto& va : a.bases[i])
                for (const auto& vb : b.bases[i]) {
                    std::vector<GaussInt> v;
                    v.reserve(va.size() * vb.size());
                    for (const GaussInt& ea : va)
                        for (const GaussInt& eb : vb) {
                            GaussInt e = gmul(ea, eb);
                            if (e.re < -kMaxEntry || e.re > kMaxEntry || e.im < -kMaxEntry ||
                                e.im > kMaxEntry)
                                throw std::invalid_argument(
                                    "product entries exceed the supported exact range");
                            v.push_back(e);
                        }
                    dst.push_back(std::move(v));
                }
        }
    }

    VerifyMode mode = as_float ? VerifyMode::tolerance : VerifyMode::exact;
    MubReport r = verify_mub_set(out, mode, 1e-9, threads);
    if (!r.pass())
        throw std::runtime_error("product failed verification: " +
                                 r.violations.front().describe());
    return out;
}

MubSet fixture_c4_5mubs() {
    // Entry alphabet: '0' -> 0, '1' -> 1, '2' -> 2, '-' -> -1, 'i' -> i, 'j' -> -i.
    static const char* kRows[5][4] = {
        {"2000", "0200", "0020", "0002"},
        {"1111", "11--", "1-1-", "1--1"},
        {"11ij", "11ji", "1-ii", "1-jj"},
        {"1i1j", "1i-i", "1j1i", "1j-j"},
        {"1ii-", "1ij1", "1ji1", "1jj-"},
    };
    MubSet out;
    out.d = 4;
    out.field = FieldTag::gauss_int;
    out.bases.resize(5);
    for (int bi = 0; bi < 5; ++bi) {
        out.bases[bi].resize(4);
        for (int v = 0; v < 4; ++v) {
            auto& vec = out.bases[bi][v];
            vec.resize(4);
            for (int k = 0; k < 4; ++k) {
                switch (kRows[bi][v][k]) {
                    case '0': vec[k] = {0, 0}; break;
                    case '1': vec[k] = {1, 0}; break;
                    case '2': vec[k] = {2, 0}; break;
                    case '-': vec[k] = {-1, 0}; break;
                    case 'i': vec[k] = {0, 1}; break;
                    case 'j': vec[k] = {0, -1}; break;
                }
            }
        }
    }
    return out;
}

}  // namespace mubcert
