// Command-line front end: construct bent-set MUB families, verify sets from
// disk, and issue machine-checkable certificates of strong unextendibility.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "mubcert/bentset.hpp"
#include "mubcert/mub.hpp"
#include "mubcert/unextend.hpp"

namespace {

using mubcert::BentSet;
using mubcert::CertifyMethod;
using mubcert::CertifyOptions;
using mubcert::FieldTag;
using mubcert::MubReport;
using mubcert::MubSet;
using mubcert::RankCertificate;
using mubcert::VerifyMode;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
    if (!out) throw std::invalid_argument("write failed for " + path);
}

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

BentSet bent_source(const std::string& source, int h, int threads) {
    if (source == "kerdock") return mubcert::kerdock_construct(h, threads);
    if (source == "paper-h2") {
        if (h != 2)
            throw std::invalid_argument("bent source paper-h2 is defined only for h = 2");
        return mubcert::reference_bent_set_h2();
    }
    throw std::invalid_argument("unknown bent source \"" + source +
                                "\" (expected kerdock or paper-h2)");
}

struct Config {
    int threads = 1;
    bool json = false;

    int h = 1;
    std::string source = "kerdock";
    std::string out_path;
    std::string in_path, in_path_b;
    std::string mode = "auto";
    double tolerance = 1e-9;
    std::string method = "auto";
    std::uint64_t prime = mubcert::kMersenne31;
    bool allow_large = false;
    std::string anf;
    int m = 0;
    int restarts = 8;
    int iterations = 200;
    std::uint64_t seed = 12345;
};

void add_common(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--threads", cfg.threads,
                    "Worker threads (0 = hardware); never changes results");
    cmd->add_flag("--json", cfg.json, "Machine-readable output");
}

int cmd_construct(const Config& cfg) {
    BentSet set = bent_source(cfg.source, cfg.h, cfg.threads);
    MubSet mubs = mubcert::from_bent_set(set, cfg.threads);
    write_file(cfg.out_path, mubcert::to_json(mubs));
    if (cfg.json) {
        nlohmann::ordered_json j{{"dimension", mubs.d},
                                 {"bases", mubs.num_bases()},
                                 {"verification", "pass"},
                                 {"out", cfg.out_path}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "constructed " << mubs.num_bases() << " mutually unbiased bases of C^"
                  << mubs.d << " (exact verification: pass) -> " << cfg.out_path << "\n";
    }
    return 0;
}

int cmd_verify(const Config& cfg) {
    MubSet set = mubcert::mub_from_json(read_file(cfg.in_path));
    VerifyMode mode;
    if (cfg.mode == "exact")
        mode = VerifyMode::exact;
    else if (cfg.mode == "tolerance")
        mode = VerifyMode::tolerance;
    else if (cfg.mode == "auto")
        mode = set.field == FieldTag::complex_float ? VerifyMode::tolerance
                                                    : VerifyMode::exact;
    else
        throw std::invalid_argument("unknown mode \"" + cfg.mode +
                                    "\" (expected exact, tolerance, or auto)");
    MubReport report = mubcert::verify_mub_set(set, mode, cfg.tolerance, cfg.threads);
    if (cfg.json) {
        nlohmann::ordered_json j;
        j["pass"] = report.pass();
        j["mode"] = mode == VerifyMode::exact ? "exact" : "tolerance";
        j["dimension"] = set.d;
        j["bases"] = set.num_bases();
        nlohmann::ordered_json v = nlohmann::ordered_json::array();
        for (const auto& viol : report.violations) v.push_back(viol.describe());
        j["violations"] = std::move(v);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << set.num_bases() << " bases of C^" << set.d << ", "
                  << (mode == VerifyMode::exact ? "exact" : "tolerance") << " mode: "
                  << report.summary() << "\n";
    }
    return report.pass() ? 0 : 1;
}

int cmd_certify(const Config& cfg) {
    BentSet set = bent_source(cfg.source, cfg.h, cfg.threads);
    CertifyOptions opts;
    opts.prime = cfg.prime;
    opts.allow_large = cfg.allow_large;
    opts.threads = cfg.threads;
    if (cfg.method == "modular")
        opts.method = CertifyMethod::modular;
    else if (cfg.method == "structural")
        opts.method = CertifyMethod::structural;
    else if (cfg.method == "both")
        opts.method = CertifyMethod::both;
    else if (cfg.method == "auto")
        opts.method = cfg.h <= 3 ? CertifyMethod::both : CertifyMethod::structural;
    else
        throw std::invalid_argument("unknown method \"" + cfg.method +
                                    "\" (expected modular, structural, both, or auto)");
    RankCertificate cert = mubcert::certify_strongly_unextendible(set, opts);
    std::string doc = mubcert::to_json(cert);
    if (!cfg.out_path.empty()) write_file(cfg.out_path, doc);
    if (cfg.json)
        std::cout << doc;
    else
        std::cout << cert.summary() << "\n";
    return cert.certified ? 0 : 1;
}

int cmd_wht(const Config& cfg) {
    if (cfg.m % 2 != 0)
        throw std::invalid_argument("bentness is undefined for odd m; pass an even --m");
    mubcert::BooleanFunction f = mubcert::from_anf(cfg.anf, cfg.m);
    mubcert::WalshSpectrum sp = mubcert::walsh_spectrum(f);
    bool bent = mubcert::is_bent(f);
    if (cfg.json) {
        nlohmann::ordered_json j{
            {"m", cfg.m}, {"spectrum", sp.values}, {"bent", bent}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "spectrum:";
        for (std::int32_t v : sp.values) std::cout << " " << v;
        std::cout << "\nbent: " << (bent ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_bentset_construct(const Config& cfg) {
    BentSet set = bent_source(cfg.source, cfg.h, cfg.threads);
    write_file(cfg.out_path, mubcert::to_json(set));
    if (cfg.json) {
        nlohmann::ordered_json j{
            {"h", set.h}, {"functions", set.size()}, {"out", cfg.out_path}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "bent set with " << set.size() << " functions on Z_2^" << set.vars()
                  << " -> " << cfg.out_path << "\n";
    }
    return 0;
}

int cmd_bentset_verify(const Config& cfg) {
    BentSet set = mubcert::bentset_from_json(read_file(cfg.in_path));
    mubcert::BentVerdict v = mubcert::verify_bent_set(set.functions, cfg.threads);
    if (cfg.json) {
        nlohmann::ordered_json j;
        j["pass"] = v.pass;
        j["functions"] = set.size();
        if (v.witness) {
            j["witness"] = {{"j", v.witness->j},
                            {"k", v.witness->k},
                            {"u", v.witness->u},
                            {"value", v.witness->value}};
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << set.size() << " functions on Z_2^" << 2 * set.h << ": " << v.describe()
                  << "\n";
    }
    return v.pass ? 0 : 1;
}

int cmd_product(const Config& cfg) {
    MubSet a = mubcert::mub_from_json(read_file(cfg.in_path));
    MubSet b = mubcert::mub_from_json(read_file(cfg.in_path_b));
    MubSet c = mubcert::product(a, b, cfg.threads);
    write_file(cfg.out_path, mubcert::to_json(c));
    if (cfg.json) {
        nlohmann::ordered_json j{
            {"dimension", c.d}, {"bases", c.num_bases()}, {"out", cfg.out_path}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "product: " << c.num_bases() << " bases of C^" << c.d << " -> "
                  << cfg.out_path << "\n";
    }
    return 0;
}

int cmd_search(const Config& cfg) {
    MubSet set = mubcert::mub_from_json(read_file(cfg.in_path));
    mubcert::SearchResult res =
        mubcert::search_unbiased_vector(set, cfg.restarts, cfg.iterations, cfg.seed);
    if (cfg.json) {
        nlohmann::ordered_json j{{"best_residual", res.best_residual},
                                 {"restart_residuals", res.restart_residuals}};
        std::cout << j.dump() << "\n";
    } else {
        for (std::size_t i = 0; i < res.restart_residuals.size(); ++i)
            std::cout << "restart " << i << ": residual " << fmt_sci(res.restart_residuals[i])
                      << "\n";
        std::cout << "best residual: " << fmt_sci(res.best_residual) << "\n";
        std::cout << "note: a large residual is diagnostic only, not a certificate\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "mubcert: bent-set families of real mutually unbiased bases with "
        "machine-checkable certificates of strong unextendibility"};
    app.require_subcommand(1);
    Config cfg;

    CLI::App* construct = app.add_subcommand(
        "construct", "Build the MUB family of a bent set and write it as JSON");
    construct->set_help_flag("--help", "Print help");
    construct->add_option("--h", cfg.h, "Half log-dimension; d = 2^(2h)")
        ->required()
        ->check(CLI::Range(1, 7));
    construct->add_option("--bent-source", cfg.source, "kerdock (default) or paper-h2");
    construct->add_option("--out", cfg.out_path, "Output path")->required();
    add_common(construct, cfg);

    CLI::App* verify =
        app.add_subcommand("verify", "Check a MUB-set JSON file and report violations");
    verify->add_option("file", cfg.in_path, "MUB-set JSON path")->required();
    verify->add_option("--mode", cfg.mode, "exact, tolerance, or auto (default)");
    verify->add_option("--tolerance", cfg.tolerance, "Tolerance for tolerance mode");
    add_common(verify, cfg);

    CLI::App* certify = app.add_subcommand(
        "certify", "Certify strong unextendibility of a bent-set family");
    certify->set_help_flag("--help", "Print help");
    certify->add_option("--h", cfg.h, "Half log-dimension; d = 2^(2h)")
        ->required()
        ->check(CLI::Range(1, 7));
    certify->add_option("--bent-source", cfg.source, "kerdock (default) or paper-h2");
    certify->add_option("--method", cfg.method,
                        "modular, structural, both, or auto (default: both for h <= 3, "
                        "structural above)");
    certify->add_option("--prime", cfg.prime, "Odd prime modulus for elimination");
    certify->add_flag("--allow-large", cfg.allow_large,
                      "Permit full-matrix elimination beyond h = 3");
    certify->add_option("--out", cfg.out_path, "Also write the certificate JSON here");
    add_common(certify, cfg);

    CLI::App* wht = app.add_subcommand(
        "wht", "Walsh-Hadamard spectrum and bent verdict of an ANF expression");
    wht->add_option("--anf", cfg.anf, "e.g. \"x1x2 + x3x4\"")->required();
    wht->add_option("--m", cfg.m, "Variable count (even)")->required()->check(CLI::Range(1, 20));
    add_common(wht, cfg);

    CLI::App* bentset =
        app.add_subcommand("bentset", "Construct or verify bent sets as JSON");
    bentset->require_subcommand(1);
    CLI::App* bs_construct =
        bentset->add_subcommand("construct", "Write a bent set as JSON");
    bs_construct->set_help_flag("--help", "Print help");
    bs_construct->add_option("--h", cfg.h, "Half log-dimension")->required()->check(
        CLI::Range(1, 7));
    bs_construct->add_option("--source", cfg.source, "kerdock (default) or paper-h2");
    bs_construct->add_option("--out", cfg.out_path, "Output path")->required();
    add_common(bs_construct, cfg);
    CLI::App* bs_verify = bentset->add_subcommand(
        "verify", "Check that all pairwise sums in a bent-set JSON file are bent");
    bs_verify->add_option("file", cfg.in_path, "Bent-set JSON path")->required();
    add_common(bs_verify, cfg);

    CLI::App* prod = app.add_subcommand(
        "product", "Tensor product of two verified MUB-set JSON files");
    prod->add_option("a", cfg.in_path, "Left factor path")->required();
    prod->add_option("b", cfg.in_path_b, "Right factor path")->required();
    prod->add_option("--out", cfg.out_path, "Output path")->required();
    add_common(prod, cfg);

    CLI::App* search = app.add_subcommand(
        "search", "Numeric search for a vector unbiased to every basis (diagnostic)");
    search->add_option("file", cfg.in_path, "MUB-set JSON path")->required();
    search->add_option("--restarts", cfg.restarts, "Random restarts")->check(CLI::Range(1, 10000));
    search->add_option("--iterations", cfg.iterations, "Coordinate sweeps per restart")
        ->check(CLI::Range(1, 100000));
    search->add_option("--seed", cfg.seed, "RNG seed");
    add_common(search, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(construct)) return cmd_construct(cfg);
        if (app.got_subcommand(verify)) return cmd_verify(cfg);
        if (app.got_subcommand(certify)) return cmd_certify(cfg);
        if (app.got_subcommand(wht)) return cmd_wht(cfg);
        if (app.got_subcommand(bentset)) {
            if (bentset->got_subcommand(bs_construct)) return cmd_bentset_construct(cfg);
            return cmd_bentset_verify(cfg);
        }
        if (app.got_subcommand(prod)) return cmd_product(cfg);
        if (app.got_subcommand(search)) return cmd_search(cfg);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;  // unreachable with require_subcommand
}
