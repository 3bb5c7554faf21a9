#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mubcert/unextend.hpp"

namespace mubcert {

namespace {

struct FlatSet {
    std::size_t d = 0;
    std::vector<std::vector<std::complex<double>>> vectors;  // all bases flattened
    std::vector<double> norm2;
};

FlatSet flatten(const MubSet& set) {
    if (set.d < 1) throw std::invalid_argument("set dimension must be positive");
    if (set.num_bases() == 0) throw std::invalid_argument("set has no bases");
    FlatSet flat;
    flat.d = static_cast<std::size_t>(set.d);
    auto push = [&](const std::vector<std::complex<double>>& v) {
        if (v.size() != flat.d)
            throw std::invalid_argument("each vector must hold exactly d entries");
        double n2 = 0;
        for (const auto& e : v) n2 += e.real() * e.real() + e.imag() * e.imag();
        flat.vectors.push_back(v);
        flat.norm2.push_back(n2);
    };
    if (set.field == FieldTag::complex_float) {
        for (const auto& basis : set.fbases)
            for (const auto& v : basis) push(v);
    } else {
        for (const auto& basis : set.bases)
            for (const auto& v : basis) {
                std::vector<std::complex<double>> fv;
                fv.reserve(v.size());
                for (const GaussInt& e : v)
                    fv.emplace_back(static_cast<double>(e.re), static_cast<double>(e.im));
                push(fv);
            }
    }
    return flat;
}

double residual_of(const FlatSet& flat, const std::vector<std::complex<double>>& cand) {
    double res = 0;
    for (std::size_t v = 0; v < flat.vectors.size(); ++v) {
        std::complex<double> ip = 0;
        for (std::size_t k = 0; k < flat.d; ++k) ip += cand[k] * std::conj(flat.vectors[v][k]);
        double defect = ip.real() * ip.real() + ip.imag() * ip.imag() - flat.norm2[v];
        res += defect * defect;
    }
    return res;
}

// Minimizes f over [lo, hi] by golden-section; f must be unimodal on the
// interval for an exact answer, otherwise this still returns a point no
// worse than both endpoints' interior probes.
template <class F>
double golden_min(F&& f, double lo, double hi) {
    constexpr double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 48; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

}  // namespace

std::vector<std::complex<double>> UnbiasedCandidate::entries() const {
    std::vector<std::complex<double>> out(phases.size());
    for (std::size_t x = 0; x < phases.size(); ++x)
        out[x] = {std::cos(phases[x]), std::sin(phases[x])};
    return out;
}

double UnbiasedCandidate::coefficient(std::size_t x, std::size_t y) const {
    return std::cos(phases.at(x) - phases.at(y));
}

double unbiased_residual(const MubSet& set, const std::vector<double>& phases) {
    FlatSet flat = flatten(set);
    if (phases.size() != flat.d)
        throw std::invalid_argument("phase vector must hold exactly d angles");
    std::vector<std::complex<double>> cand(flat.d);
    for (std::size_t k = 0; k < flat.d; ++k)
        cand[k] = {std::cos(phases[k]), std::sin(phases[k])};
    return residual_of(flat, cand);
}

SearchResult search_unbiased_vector(const MubSet& set, int restarts, int iterations,
                                    std::uint64_t seed) {
    if (restarts < 1 || iterations < 1)
        throw std::invalid_argument("restarts and iterations must be positive");
    FlatSet flat = flatten(set);
    const std::size_t d = flat.d;
    const std::size_t nv = flat.vectors.size();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::mt19937_64 rng(seed);
    // Uniform angle from the top 53 bits; pinned here so results do not
    // depend on the standard library's distribution implementation.
    auto draw_angle = [&rng] { return (rng() >> 11) * (two_pi / 9007199254740992.0); };

    SearchResult result;
    result.best_residual = std::numeric_limits<double>::infinity();

    std::vector<double> phases(d);
    std::vector<std::complex<double>> cand(d);
    std::vector<std::complex<double>> inner(nv);

    for (int rs = 0; rs < restarts; ++rs) {
        for (std::size_t k = 0; k < d; ++k) phases[k] = draw_angle();
        double prev = std::numeric_limits<double>::infinity();
        for (int sweep = 0; sweep < iterations; ++sweep) {
            for (std::size_t k = 0; k < d; ++k)
                cand[k] = {std::cos(phases[k]), std::sin(phases[k])};
            for (std::size_t v = 0; v < nv; ++v) {
                std::complex<double> ip = 0;
                for (std::size_t k = 0; k < d; ++k)
                    ip += cand[k] * std::conj(flat.vectors[v][k]);
                inner[v] = ip;
            }
            for (std::size_t x = 0; x < d; ++x) {
                // Per vector v: |<A,B_v>|^2 = alpha_v + 2 Re(e^{i t} z_v) as
                // the phase t of A[x] varies, all else fixed.
                struct Coef {
                    double base, zr, zi;
                };
                std::vector<Coef> coefs(nv);
                for (std::size_t v = 0; v < nv; ++v) {
                    std::complex<double> bx = std::conj(flat.vectors[v][x]);
                    std::complex<double> c = inner[v] - cand[x] * bx;
                    std::complex<double> z = std::conj(c) * bx;
                    double alpha = c.real() * c.real() + c.imag() * c.imag() +
                                   bx.real() * bx.real() + bx.imag() * bx.imag();
                    coefs[v] = {alpha - flat.norm2[v], z.real(), z.imag()};
                }
                auto eval = [&](double t) {
                    double ct = std::cos(t), st = std::sin(t);
                    double r = 0;
                    for (const Coef& co : coefs) {
                        double defect = co.base + 2 * (co.zr * ct - co.zi * st);
                        r += defect * defect;
                    }
                    return r;
                };
                constexpr int kGrid = 64;
                double best_t = phases[x], best_f = eval(best_t);
                for (int g = 0; g < kGrid; ++g) {
                    double t = g * (two_pi / kGrid);
                    double f = eval(t);
                    if (f < best_f) {
                        best_f = f;
                        best_t = t;
                    }
                }
                double window = two_pi / kGrid;
                double refined = golden_min(eval, best_t - window, best_t + window);
                if (eval(refined) < best_f) best_t = refined;
                phases[x] = best_t;
                std::complex<double> updated{std::cos(best_t), std::sin(best_t)};
                for (std::size_t v = 0; v < nv; ++v)
                    inner[v] += (updated - cand[x]) * std::conj(flat.vectors[v][x]);
                cand[x] = updated;
            }
            double now = residual_of(flat, cand);
            if (now < 1e-22 || prev - now < 1e-15 * (1.0 + now)) {
                prev = now;
                break;
            }
            prev = now;
        }
        for (std::size_t k = 0; k < d; ++k)
            cand[k] = {std::cos(phases[k]), std::sin(phases[k])};
        double res = residual_of(flat, cand);
        result.restart_residuals.push_back(res);
        if (res < result.best_residual) {
            result.best_residual = res;
            result.best.phases = phases;
        }
    }
    return result;
}

}  // namespace mubcert
