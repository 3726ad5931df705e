// Command-line front end: evaluate F2, 2F1, 3F2 and F1, verify closed forms,
// and lint formula corpus files.
//
// Exit codes: 0 success / all pass, 1 failure, 2 suspected misprint, 3 usage
// or domain error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <appellf2/appellf2.hpp>

namespace {

using namespace appellf2;

constexpr int exit_usage = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvalConfig {
    std::string function;
    std::string method = "auto";
    std::string format = "text";
    std::map<std::string, std::string> raw;  // flag name -> literal
    double tol = 1e-12;
};

double param(const EvalConfig& cfg, const std::string& name) {
    const auto it = cfg.raw.find(name);
    if (it == cfg.raw.end() || it->second.empty())
        throw UsageError("eval " + cfg.function + ": missing " + name);
    try {
        return parse_real(it->second);
    } catch (const std::invalid_argument& e) {
        throw UsageError(name + ": " + e.what());
    }
}

struct Evaluation {
    double value = 0.0;
    std::string method;
    double est_error = 0.0;
    std::size_t terms = 0;
    std::size_t panels = 0;
    std::string detail;
};

Evaluation from_result(const F2Result& r) {
    return {r.value, to_string(r.method), r.est_error, r.terms, r.panels, {}};
}

std::optional<std::pair<Family, std::vector<double>>> match_family(const F2Params& p) {
    const bool tail = p.alpha2 == 1.0 && p.beta2 == 2.0;
    if (!tail) return std::nullopt;
    const double a = p.sigma - 1.0;
    if (p.alpha1 == p.beta1 && a != 0.0) return {{Family::PowerDifference, {a, p.alpha1}}};
    if (p.beta1 == a && !is_nonpositive_integer(a)) return {{Family::MixedPower, {a, p.alpha1}}};
    if (p.alpha1 == 1.0 && p.beta1 == 2.0 && a != 0.0 && a != 1.0)
        return {{Family::FourTerm, {a}}};
    if (p.sigma == 1.0 && p.alpha1 == p.beta1) return {{Family::LogRatio, {p.alpha1}}};
    if (p.sigma == 1.0 && p.alpha1 == 0.0) return {{Family::LogOneMinusY, {p.beta1}}};
    if (p.sigma == 2.0 && p.beta1 == 2.0 && p.alpha1 != 1.0) return {{Family::PowerRatio, {p.alpha1}}};
    return std::nullopt;
}

Evaluation closed_f2(const F2Params& p, const EvalPoint& pt, double tol, bool allow_series) {
    if (const auto fam = match_family(p); fam && pt.x > 0.0 && pt.y > 0.0 && pt.x + pt.y < 1.0) {
        const double v = f2_family_closed(fam->first, fam->second, pt, tol);
        return {v, "closed", 0.0, 0, 0, "family " + to_string(fam->first)};
    }
    if (p.alpha2 == 1.0 && p.beta2 == 2.0) {
        if (p.sigma == 1.0)
            return {f2_theorem1_log(p.alpha1, p.beta1, pt, tol), "closed", 0.0, 0, 0,
                    "3F2 and logarithm"};
        return {f2_theorem1_shift(p.sigma - 1.0, p.alpha1, p.beta1, pt, tol), "closed", 0.0, 0, 0,
                "two-term 2F1"};
    }
    if (!allow_series)
        throw UsageError("no closed form applies to these parameters; use --method series");
    return from_result(f2_series(p, pt, tol));
}

Evaluation evaluate(const EvalConfig& cfg) {
    const auto& m = cfg.method;
    if (cfg.function == "f2") {
        const F2Params p{param(cfg, "--sigma"), param(cfg, "--a1"), param(cfg, "--a2"),
                         param(cfg, "--b1"), param(cfg, "--b2")};
        const EvalPoint pt{param(cfg, "-x"), param(cfg, "-y")};
        if (m == "series") return from_result(f2_series(p, pt, cfg.tol));
        if (m == "single-integral") return from_result(f2_single_integral(p, pt, cfg.tol));
        if (m == "double-integral") return from_result(f2_double_integral(p, pt));
        return closed_f2(p, pt, cfg.tol, m == "auto");
    }
    if (cfg.function == "2f1") {
        const HypParams2F1 h{param(cfg, "--a"), param(cfg, "--b"), param(cfg, "--c")};
        const double z = param(cfg, "-z");
        if (m == "series" || m == "auto") {
            const auto r = gauss2f1_series(h, z, cfg.tol);
            return {r.value, "series", r.est_error, r.terms_used, 0, r.converged ? "" : "not converged"};
        }
        if (m == "single-integral") return {gauss2f1_euler(h, z, cfg.tol), "single-integral", 0.0, 0, 0, {}};
        throw UsageError("2f1 supports --method series, single-integral or auto");
    }
    if (cfg.function == "3f2") {
        const HypParams3F2 h{param(cfg, "--a1"), param(cfg, "--a2"), param(cfg, "--a3"),
                             param(cfg, "--b1"), param(cfg, "--b2")};
        const double z = param(cfg, "-z");
        if (m == "series" || m == "auto") {
            const auto r = clausen3f2_series(h, z, cfg.tol);
            return {r.value, "series", r.est_error, r.terms_used, 0, r.converged ? "" : "not converged"};
        }
        const auto t = table2_params();
        if (m == "closed" && h.a1 == t.a1 && h.a2 == t.a2 && h.a3 == t.a3 && h.b1 == t.b1 &&
            h.b2 == t.b2)
            return {table2_closed_form(z), "closed", 0.0, 0, 0, {}};
        throw UsageError("3f2 supports --method series or auto, and closed for (1/4,1,1;5/4,2)");
    }
    if (cfg.function == "f1") {
        if (m != "series" && m != "auto") throw UsageError("f1 supports --method series or auto");
        const EvalPoint pt{param(cfg, "-x"), param(cfg, "-y")};
        return {f1_series(param(cfg, "--alpha"), param(cfg, "--beta"), param(cfg, "--beta-prime"),
                          param(cfg, "--gamma"), pt, cfg.tol),
                "series", 0.0, 0, 0, {}};
    }
    throw UsageError("unknown function '" + cfg.function + "'");
}

int run_eval(const EvalConfig& cfg) {
    const auto ev = evaluate(cfg);
    if (cfg.format == "json") {
        nlohmann::ordered_json j{{"function", cfg.function}, {"value", ev.value},
                                 {"method", ev.method},      {"est_error", ev.est_error},
                                 {"terms", ev.terms},        {"panels", ev.panels}};
        if (!ev.detail.empty()) j["detail"] = ev.detail;
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::cout << "value      " << format_double(ev.value) << '\n'
              << "method     " << ev.method << (ev.detail.empty() ? "" : " (" + ev.detail + ")")
              << '\n'
              << "est_error  " << format_double(ev.est_error) << '\n'
              << "terms      " << ev.terms << '\n'
              << "panels     " << ev.panels << '\n';
    return 0;
}

struct VerifyConfig {
    bool builtins = false;
    std::string corpus;
    std::string format = "text";
    std::string out;
    bool no_timestamp = false;
    bool verbose = false;
    bool serial = false;
    Tolerances tol;
    GridSpec grid;
};

int run_verify(const VerifyConfig& cfg) {
    const VerifyOptions opt{!cfg.serial, cfg.verbose};
    VerificationReport rep;
    if (!cfg.corpus.empty()) {
        Corpus corpus;
        try {
            corpus = load_corpus_file(cfg.corpus);
        } catch (const CorpusFormatError& e) {
            throw UsageError(cfg.corpus + ": " + e.what());
        }
        rep = verify_corpus(corpus.entries, cfg.grid, cfg.tol, opt);
        for (const auto& err : corpus.errors) {
            std::cerr << cfg.corpus << ": line " << err.line << ": " << err.message << '\n';
            EntryReport bad;
            bad.locator = "line " + std::to_string(err.line) + ": unparsed expression";
            bad.messages.push_back(err.message);
            rep.entries.push_back(std::move(bad));
        }
    } else {
        rep = verify_builtins(cfg.grid, cfg.tol, opt);
    }
    if (!cfg.no_timestamp) rep.timestamp = utc_timestamp();

    std::string text;
    if (cfg.format == "json") text = to_json_text(rep);
    else if (cfg.format == "csv") text = to_csv(rep);
    else text = to_text(rep);

    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!(f << text)) throw UsageError("cannot write '" + cfg.out + "'");
    }
    return exit_code(rep);
}

int run_lint(const std::string& path) {
    Corpus corpus;
    try {
        corpus = load_corpus_file(path);
    } catch (const CorpusFormatError& e) {
        std::cout << path << ": " << e.what() << '\n';
        return 1;
    }
    for (const auto& err : corpus.errors)
        std::cout << path << ": line " << err.line << ": " << err.message << '\n';
    std::cout << corpus.entries.size() << " entries";
    if (!corpus.errors.empty()) std::cout << ", " << corpus.errors.size() << " with parse errors";
    std::cout << '\n';
    return corpus.errors.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Appell F2 evaluation and closed-form verification"};
    app.require_subcommand(1);

    EvalConfig ecfg;
    auto* eval = app.add_subcommand("eval", "Evaluate f2, 2f1, 3f2 or f1");
    eval->add_option("function", ecfg.function, "f2 | 2f1 | 3f2 | f1")
        ->required()
        ->check(CLI::IsMember({"f2", "2f1", "3f2", "f1"}));
    for (const char* name : {"--sigma", "--a1", "--a2", "--a3", "--b1", "--b2", "--a", "--b",
                             "--c", "--alpha", "--beta", "--beta-prime", "--gamma", "-x", "-y",
                             "-z"})
        eval->add_option(name, ecfg.raw[name],
                         name[1] == '-' ? "parameter (decimal or p/q)" : "argument (decimal or p/q)");
    eval->add_option("--method", ecfg.method, "series | single-integral | double-integral | closed | auto")
        ->check(CLI::IsMember({"series", "single-integral", "double-integral", "closed", "auto"}));
    eval->add_option("--tol", ecfg.tol, "series tolerance")->check(CLI::PositiveNumber);
    eval->add_option("--format", ecfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    VerifyConfig vcfg;
    auto* verify = app.add_subcommand("verify", "Check closed forms against the series oracle");
    auto* builtins = verify->add_flag("--builtins", vcfg.builtins, "run the built-in identity suite");
    verify->add_option("--corpus", vcfg.corpus, "formula corpus file")->excludes(builtins);
    verify->add_option("--format", vcfg.format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    verify->add_option("--out", vcfg.out, "write the report to PATH");
    verify->add_flag("--no-timestamp", vcfg.no_timestamp, "omit the timestamp");
    verify->add_flag("--verbose", vcfg.verbose, "include per-point errors");
    verify->add_flag("--serial", vcfg.serial, "verify entries on one thread");
    verify->add_option("--pass-tol", vcfg.tol.pass_tol, "max relative error for Pass")->check(CLI::PositiveNumber);
    verify->add_option("--oracle-tol", vcfg.tol.oracle_tol, "series oracle tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--nx", vcfg.grid.nx, "grid points along x")->check(CLI::PositiveNumber);
    verify->add_option("--ny", vcfg.grid.ny, "grid points along y")->check(CLI::PositiveNumber);

    std::string lint_path;
    auto* lint = app.add_subcommand("corpus-lint", "Parse-only check of a corpus file");
    lint->add_option("path", lint_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (*eval) return run_eval(ecfg);
        if (*verify) return run_verify(vcfg);
        if (*lint) return run_lint(lint_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        // DomainError, PoleError, ParamError and I/O failures.
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
