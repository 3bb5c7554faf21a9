// JSON formats for the on-disk interchange of bent sets, MUB sets, and rank
// certificates. All writers use a fixed key order so equal inputs serialize
// to identical bytes.

#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "mubcert/bentset.hpp"
#include "mubcert/mub.hpp"
#include "mubcert/unextend.hpp"

namespace mubcert {

namespace {

using ojson = nlohmann::ordered_json;
using njson = nlohmann::json;

njson parse(const std::string& text) {
    try {
        return njson::parse(text);
    } catch (const njson::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const njson& field_of(const njson& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::int64_t int_of(const njson& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

const char* field_tag_name(FieldTag f) {
    switch (f) {
        case FieldTag::real_pm1: return "real_pm1";
        case FieldTag::gauss_int: return "gauss_int";
        case FieldTag::complex_float: return "complex";
    }
    return "?";
}

FieldTag field_tag_of(const std::string& s) {
    if (s == "real_pm1") return FieldTag::real_pm1;
    if (s == "gauss_int") return FieldTag::gauss_int;
    if (s == "complex") return FieldTag::complex_float;
    bad("unknown field \"" + s + "\" (expected real_pm1, gauss_int, or complex)");
}

}  // namespace

std::string to_json(const BentSet& set) {
    ojson j;
    j["h"] = set.h;
    ojson fns = ojson::array();
    for (const BooleanFunction& f : set.functions) fns.push_back(f.table_string());
    j["functions"] = std::move(fns);
    return j.dump() + "\n";
}

BentSet bentset_from_json(const std::string& text) {
    njson j = parse(text);
    BentSet out;
    std::int64_t h = int_of(field_of(j, "h"), "h");
    if (h < 1 || h > 10) bad("h must be in [1, 10]");
    out.h = static_cast<int>(h);
    const njson& fns = field_of(j, "functions");
    if (!fns.is_array() || fns.empty()) bad("functions must be a non-empty array");
    const std::size_t table_len = std::size_t{1} << (2 * out.h);
    for (const njson& f : fns) {
        if (!f.is_string()) bad("functions entries must be strings");
        const std::string s = f.get<std::string>();
        // Either a truth table of the right length, or an ANF expression.
        bool bits = s.size() == table_len &&
                    s.find_first_not_of("01") == std::string::npos;
        out.functions.push_back(bits ? from_table_string(s) : from_anf(s, 2 * out.h));
    }
    return out;
}

std::string to_json(const MubSet& set) {
    ojson j;
    j["dimension"] = set.d;
    j["field"] = field_tag_name(set.field);
    ojson bases = ojson::array();
    if (set.field == FieldTag::complex_float) {
        for (const auto& basis : set.fbases) {
            ojson jb = ojson::array();
            for (const auto& vec : basis) {
                ojson jv = ojson::array();
                for (const auto& e : vec) jv.push_back({e.real(), e.imag()});
                jb.push_back(std::move(jv));
            }
            bases.push_back(std::move(jb));
        }
    } else {
        const bool pairs = set.field == FieldTag::gauss_int;
        for (const auto& basis : set.bases) {
            ojson jb = ojson::array();
            for (const auto& vec : basis) {
                ojson jv = ojson::array();
                for (const GaussInt& e : vec) {
                    if (pairs)
                        jv.push_back({e.re, e.im});
                    else
                        jv.push_back(e.re);
                }
                jb.push_back(std::move(jv));
            }
            bases.push_back(std::move(jb));
        }
    }
    j["bases"] = std::move(bases);
    return j.dump() + "\n";
}

MubSet mub_from_json(const std::string& text) {
    njson j = parse(text);
    MubSet out;
    std::int64_t d = int_of(field_of(j, "dimension"), "dimension");
    if (d < 1 || d > 65536) bad("dimension must be in [1, 65536]");
    out.d = static_cast<int>(d);
    const njson& jf = field_of(j, "field");
    if (!jf.is_string()) bad("field must be a string");
    out.field = field_tag_of(jf.get<std::string>());
    const njson& jb = field_of(j, "bases");
    if (!jb.is_array() || jb.empty()) bad("bases must be a non-empty array");

    auto check_len = [&](const njson& arr, const char* what) {
        if (!arr.is_array() || arr.size() != static_cast<std::size_t>(d))
            bad(std::string(what) + " must be an array of exactly " + std::to_string(d) +
                " elements");
    };
    auto int_entry = [&](const njson& e, const char* what) {
        std::int64_t v = int_of(e, what);
        if (v < -65536 || v > 65536) bad(std::string(what) + " magnitude exceeds 65536");
        return v;
    };

    for (const njson& basis : jb) {
        check_len(basis, "each basis");
        if (out.field == FieldTag::complex_float) {
            std::vector<std::vector<std::complex<double>>> bs;
            for (const njson& vec : basis) {
                check_len(vec, "each vector");
                std::vector<std::complex<double>> v;
                v.reserve(vec.size());
                for (const njson& e : vec) {
                    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
                        !e[1].is_number())
                        bad("complex entries must be [re, im] number pairs");
                    double re = e[0].get<double>(), im = e[1].get<double>();
                    if (!std::isfinite(re) || !std::isfinite(im))
                        bad("complex entries must be finite");
                    v.emplace_back(re, im);
                }
                bs.push_back(std::move(v));
            }
            out.fbases.push_back(std::move(bs));
        } else {
            std::vector<std::vector<GaussInt>> bs;
            for (const njson& vec : basis) {
                check_len(vec, "each vector");
                std::vector<GaussInt> v;
                v.reserve(vec.size());
                for (const njson& e : vec) {
                    if (out.field == FieldTag::real_pm1) {
                        v.push_back({int_entry(e, "real entries"), 0});
                    } else {
                        if (!e.is_array() || e.size() != 2)
                            bad("gauss_int entries must be [re, im] integer pairs");
                        v.push_back({int_entry(e[0], "gauss_int entries"),
                                     int_entry(e[1], "gauss_int entries")});
                    }
                }
                bs.push_back(std::move(v));
            }
            out.bases.push_back(std::move(bs));
        }
    }
    return out;
}

std::string to_json(const RankCertificate& cert) {
    ojson j;
    j["h"] = cert.h;
    j["method"] = method_name(cert.method);
    j["primes"] = cert.primes;
    j["rank"] = cert.rank;
    j["target"] = cert.target;
    if (cert.block_ranks)
        j["block_ranks"] = *cert.block_ranks;
    else
        j["block_ranks"] = nullptr;
    j["verdict"] = cert.verdict();
    if (cert.rank_additivity.empty())
        j["rank_additivity"] = nullptr;
    else
        j["rank_additivity"] = cert.rank_additivity;
    j["ordering_version"] = cert.ordering_version;
    return j.dump() + "\n";
}

}  // namespace mubcert
