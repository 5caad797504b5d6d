// zetabessel: verify identities, run suites, evaluate special functions.
//
// exit codes: 0 pass, 1 residual failure, 2 usage or hypothesis error

#include "zetabessel/report.hpp"
#include "zetabessel/voronoi.hpp"

#include "CLI11.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#ifndef ZETABESSEL_GRID_DIR
#define ZETABESSEL_GRID_DIR "data/grids"
#endif

namespace {

using namespace zb;

constexpr int kPass = 0, kFail = 1, kUsage = 2;

unsigned default_digits() {
    if (const char* env = std::getenv("ZETABESSEL_DIGITS")) {
        try {
            int d = std::stoi(env);
            if (d >= 10 && d <= 2000) return static_cast<unsigned>(d);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring ZETABESSEL_DIGITS=" << env << "\n";
    }
    return 60;
}

hp parse_tol(const std::string& s, const PrecisionContext& ctx) {
    if (s.empty()) return hp(0);
    hp t = parse_hp(s, ctx.working());
    if (!(t > 0)) throw HypothesisError("tolerance must be positive");
    return t;
}

// ---------------------------------------------------------------------------
// verify

const std::vector<std::string> kCaseParams{"k",  "nu", "a",  "x",  "theta", "psi",  "q",     "p", "h", "h1",
                                           "h2", "N",  "chi", "chi1", "chi2", "alpha", "beta", "f", "C",
                                           "continuation"};

VerificationReport run_case(const IdentityCase& c, const EvaluationBudget& b, const PrecisionContext& ctx) {
    if (is_equivalence_id(c.id)) return verify_equivalence(c, b, ctx);
    return verify(c, b, ctx);
}

int cmd_verify(const std::string& id, const std::map<std::string, std::string>& params, unsigned digits,
               const std::string& tol) {
    PrecisionContext ctx = make_context(digits);
    IdentityCase c{id, params, ""};
    if (!is_equivalence_id(id)) catalogue_entry(id);
    EvaluationBudget b = default_budget(ctx, parse_tol(tol, ctx));
    VerificationReport r = run_case(c, b, ctx);
    std::cout << report_json(r).dump(2) << "\n";
    if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
    return r.passed ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// suite

struct SuiteConfig {
    std::string name;
    unsigned digits = 60;
    std::string tol_main, tol_cohen, tol_voronoi, tol_equiv;
    std::string grid;
    std::string report;
    std::string csv;
    int jobs = 1;
    bool deterministic = false;
};

const std::vector<std::string> kSuites{"main_theorems", "cohen", "voronoi", "oracles", "equivalences"};

std::vector<IdentityCase> suite_cases(const SuiteConfig& cfg) {
    std::vector<IdentityCase> cases;
    if (!cfg.grid.empty()) return load_grid(cfg.grid);
    std::vector<std::string> names = cfg.name == "all" ? kSuites : std::vector<std::string>{cfg.name};
    for (const auto& n : names) {
        auto part = load_grid(std::string(ZETABESSEL_GRID_DIR) + "/" + n + ".json");
        cases.insert(cases.end(), part.begin(), part.end());
    }
    return cases;
}

ordered_json run_one(const IdentityCase& c, const SuiteConfig& cfg, const PrecisionContext& ctx) {
    std::string tol = cfg.tol_equiv;
    if (!is_equivalence_id(c.id)) {
        switch (catalogue_entry(c.id).section) {
            case Section::main:
            case Section::oracle: tol = cfg.tol_main; break;
            case Section::cohen: tol = cfg.tol_cohen; break;
            case Section::voronoi: tol = cfg.tol_voronoi; break;
        }
    }
    EvaluationBudget b = default_budget(ctx, parse_tol(tol, ctx));
    VerificationReport r;
    try {
        r = run_case(c, b, ctx);
    } catch (const zb_error& e) {
        // a bad grid entry fails its own row only
        r.case_ = c;
        r.digits = ctx.digits;
        r.error = e.what();
        r.passed = false;
    }
    if (cfg.deterministic) r.runtime_ms = 0;
    ordered_json row;
    row["json"] = report_json(r);
    row["csv"] = csv_row(r);
    return row;
}

// cases i with i % jobs == w run in worker w; rows come back over pipes
std::vector<ordered_json> run_parallel(const std::vector<IdentityCase>& cases, const SuiteConfig& cfg,
                                       const PrecisionContext& ctx) {
    std::vector<ordered_json> rows(cases.size());
    const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(cases.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < cases.size(); ++i) rows[i] = run_one(cases[i], cfg, ctx);
        return rows;
    }
    std::vector<int> fds;
    std::vector<pid_t> pids;
    for (int w = 0; w < jobs; ++w) {
        int fd[2];
        if (pipe(fd) != 0) throw std::runtime_error("pipe failed");
        std::cout.flush();
        pid_t pid = fork();
        if (pid < 0) throw std::runtime_error("fork failed");
        if (pid == 0) {
            close(fd[0]);
            ordered_json out = ordered_json::array();
            for (std::size_t i = w; i < cases.size(); i += jobs) {
                ordered_json row = run_one(cases[i], cfg, ctx);
                row["index"] = i;
                out.push_back(row);
            }
            std::string s = out.dump();
            std::size_t off = 0;
            while (off < s.size()) {
                ssize_t n = write(fd[1], s.data() + off, s.size() - off);
                if (n <= 0) _exit(3);
                off += static_cast<std::size_t>(n);
            }
            close(fd[1]);
            _exit(0);
        }
        close(fd[1]);
        fds.push_back(fd[0]);
        pids.push_back(pid);
    }
    for (int w = 0; w < jobs; ++w) {
        std::string s;
        char buf[65536];
        ssize_t n;
        while ((n = read(fds[w], buf, sizeof buf)) > 0) s.append(buf, static_cast<std::size_t>(n));
        close(fds[w]);
        int status = 0;
        waitpid(pids[w], &status, 0);
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
            throw std::runtime_error("worker " + std::to_string(w) + " failed");
        for (auto& row : ordered_json::parse(s)) rows[row["index"].get<std::size_t>()] = row;
    }
    return rows;
}

int cmd_suite(SuiteConfig cfg) {
    bool known = cfg.name == "all";
    for (const auto& n : kSuites) known = known || n == cfg.name;
    if (!known) throw HypothesisError("unknown suite '" + cfg.name + "'");
    if ((cfg.name == "cohen" || cfg.name == "voronoi" || cfg.name == "all") && cfg.digits < 30)
        throw HypothesisError("digits must be >= 30 for the cohen and voronoi suites");
    if (cfg.jobs < 1) throw HypothesisError("jobs must be >= 1");
    PrecisionContext ctx = make_context(cfg.digits);
    for (const auto* t : {&cfg.tol_main, &cfg.tol_cohen, &cfg.tol_voronoi, &cfg.tol_equiv}) parse_tol(*t, ctx);
    std::vector<IdentityCase> cases = suite_cases(cfg);
    if (cases.empty()) throw HypothesisError("grid is empty");

    std::vector<ordered_json> rows = run_parallel(cases, cfg, ctx);
    ordered_json reports = ordered_json::array();
    std::string csv = csv_header() + "\n";
    int failures = 0;
    for (const auto& row : rows) {
        reports.push_back(row["json"]);
        csv += row["csv"].get<std::string>() + "\n";
        if (!row["json"]["pass"].get<bool>()) ++failures;
    }
    if (!cfg.report.empty()) {
        std::ofstream(cfg.report) << reports.dump(2) << "\n";
        std::string csv_path = cfg.csv;
        if (csv_path.empty()) {
            auto dot = cfg.report.rfind('.');
            csv_path = (dot == std::string::npos ? cfg.report : cfg.report.substr(0, dot)) + ".csv";
        }
        std::ofstream(csv_path) << csv;
    } else {
        std::cout << reports.dump(2) << "\n";
    }
    std::cerr << cases.size() - failures << "/" << cases.size() << " passed";
    if (failures) std::cerr << ", " << failures << " failed";
    std::cerr << "\n";
    return failures ? kFail : kPass;
}

// ---------------------------------------------------------------------------
// special, characters, arith

int cmd_special(const std::string& fn, const std::map<std::string, std::string>& args, unsigned digits) {
    PrecisionContext ctx = make_context(digits);
    precision_scope scope(ctx.working());
    auto arg = [&](const char* name) {
        auto it = args.find(name);
        if (it == args.end()) throw HypothesisError(fn + " needs --" + name);
        return parse_hp(it->second, ctx.working());
    };
    auto chi_of = [&]() {
        IdentityCase probe{"", args, ""};
        CharacterGroup g = enumerate_characters(param_int(probe, "q"));
        std::int64_t i = param_int(probe, "chi", 0);
        if (i < 0 || i >= static_cast<std::int64_t>(g.characters.size()))
            throw HypothesisError("chi index out of range");
        return g.characters[static_cast<std::size_t>(i)];
    };
    auto print_complex = [&](const hpc& v) {
        ordered_json j;
        j["re"] = to_decimal(v.re, digits);
        j["im"] = to_decimal(v.im, digits);
        std::cout << j.dump() << "\n";
    };
    hp v;
    if (fn == "bessel_K" || fn == "bessel_J" || fn == "bessel_Y" || fn == "bessel_I" || fn == "bessel_M") {
        BesselOrder o = BesselOrder::make(arg("nu"), ctx);
        hp z = arg("z");
        if (fn == "bessel_K") v = bessel_K(o, z, ctx);
        else if (fn == "bessel_J") v = bessel_J(o, z, ctx);
        else if (fn == "bessel_Y") v = bessel_Y(o, z, ctx);
        else if (fn == "bessel_I") v = bessel_I(o, z, ctx);
        else v = bessel_M(o, z, ctx);
    } else if (fn == "gamma") {
        v = gamma(arg("s"), ctx);
    } else if (fn == "hurwitz_zeta") {
        v = hurwitz_zeta(arg("s"), arg("alpha"), ctx);
    } else if (fn == "riemann_zeta") {
        v = riemann_zeta(arg("s"), ctx);
    } else if (fn == "digamma") {
        v = digamma(arg("alpha"), ctx);
    } else if (fn == "zeta_pair_difference" || fn == "zeta_pair_sum") {
        v = zeta_pair(arg("s"), arg("theta"), fn == "zeta_pair_sum" ? ZetaPairKind::sum : ZetaPairKind::difference,
                      ctx);
    } else if (fn == "dirichlet_L") {
        print_complex(dirichlet_L(arg("s"), chi_of(), ctx));
        return kPass;
    } else if (fn == "gauss_sum") {
        print_complex(gauss_sum(chi_of(), ctx));
        return kPass;
    } else {
        throw HypothesisError("unknown function '" + fn + "'");
    }
    std::cout << to_decimal(v, digits) << "\n";
    return kPass;
}

int cmd_characters(std::int64_t q) {
    if (q < 1) throw HypothesisError("q must be positive");
    CharacterGroup g = enumerate_characters(q);
    ordered_json rows = ordered_json::array();
    for (const auto& ch : g.characters) {
        ordered_json r;
        r["index"] = ch.index;
        r["q"] = ch.q;
        r["conductor"] = ch.conductor;
        r["order"] = ch.order;
        r["parity"] = ch.parity == Parity::odd ? "odd" : "even";
        r["primitive"] = ch.is_primitive;
        r["principal"] = ch.is_principal;
        // chi(n) = exp(2 pi i angle / order), null off the units
        ordered_json angles = ordered_json::array();
        for (std::int64_t a : ch.angle) {
            if (a < 0) angles.push_back(nullptr);
            else angles.push_back(a);
        }
        r["angles"] = angles;
        rows.push_back(r);
    }
    std::cout << rows.dump(2) << "\n";
    return kPass;
}

int cmd_arith(const std::string& fn, std::int64_t n, const std::string& method) {
    if (fn == "r6") {
        if (method == "brute") std::cout << r6_bruteforce(n) << "\n";
        else if (method == "formula") std::cout << r6_formula(n) << "\n";
        else throw HypothesisError("method must be brute or formula");
    } else if (fn == "r2") {
        std::cout << r2(n) << "\n";
    } else if (fn == "divisors") {
        ordered_json d = divisors(n);
        std::cout << d.dump() << "\n";
    } else {
        throw HypothesisError("unknown arithmetic function '" + fn + "'");
    }
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zetabessel: Bessel-kernel divisor-sum identities"};
    app.require_subcommand(1);
    unsigned digits = default_digits();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verify one identity case");
    std::string id, tol;
    std::map<std::string, std::string> vparams;
    std::vector<std::string> extra;
    verify_cmd->set_help_flag("--help", "print this help");  // -h would clash with --h
    verify_cmd->add_option("--id", id, "catalogue id")->required();
    for (const auto& name : kCaseParams) verify_cmd->add_option("--" + name, vparams[name]);
    verify_cmd->add_option("--param", extra, "additional key=value parameters");
    verify_cmd->add_option("--digits", digits);
    verify_cmd->add_option("--tol", tol);

    // suite
    auto* suite_cmd = app.add_subcommand("suite", "run a parameter grid");
    SuiteConfig cfg;
    suite_cmd->add_option("--name", cfg.name)->required();
    suite_cmd->add_option("--report", cfg.report, "JSON report path; CSV goes next to it");
    suite_cmd->add_option("--csv", cfg.csv);
    suite_cmd->add_option("--grid", cfg.grid, "grid file replacing the shipped one");
    suite_cmd->add_option("--digits", digits);
    suite_cmd->add_option("--jobs", cfg.jobs);
    suite_cmd->add_option("--tol-main", cfg.tol_main);
    suite_cmd->add_option("--tol-cohen", cfg.tol_cohen);
    suite_cmd->add_option("--tol-voronoi", cfg.tol_voronoi);
    suite_cmd->add_option("--tol-equivalence", cfg.tol_equiv);
    suite_cmd->add_flag("--deterministic", cfg.deterministic, "write runtime_ms as 0");

    // special eval
    auto* special_cmd = app.add_subcommand("special", "special function values");
    auto* eval_cmd = special_cmd->add_subcommand("eval");
    special_cmd->require_subcommand(1);
    std::string fn;
    std::map<std::string, std::string> sargs;
    eval_cmd->add_option("--fn", fn)->required();
    for (const char* name : {"nu", "z", "s", "alpha", "theta", "q", "chi"}) eval_cmd->add_option(std::string("--") + name, sargs[name]);
    eval_cmd->add_option("--digits", digits);

    // characters list
    auto* chars_cmd = app.add_subcommand("characters", "Dirichlet characters");
    auto* list_cmd = chars_cmd->add_subcommand("list");
    chars_cmd->require_subcommand(1);
    std::int64_t q = 0;
    list_cmd->add_option("--q", q)->required();

    // arith
    auto* arith_cmd = app.add_subcommand("arith", "arithmetic functions");
    std::string afn, method = "formula";
    std::int64_t n = 0;
    arith_cmd->add_option("function", afn, "r6, r2 or divisors")->required();
    arith_cmd->add_option("--n", n)->required();
    arith_cmd->add_option("--method", method);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    auto drop_empty = [](std::map<std::string, std::string> m) {
        for (auto it = m.begin(); it != m.end();) it = it->second.empty() ? m.erase(it) : std::next(it);
        return m;
    };

    try {
        if (*verify_cmd) {
            auto params = drop_empty(vparams);
            for (const auto& kv : extra) {
                auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0) throw HypothesisError("--param expects key=value");
                params[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            return cmd_verify(id, params, digits, tol);
        }
        if (*suite_cmd) {
            cfg.digits = digits;
            return cmd_suite(cfg);
        }
        if (*special_cmd) return cmd_special(fn, drop_empty(sargs), digits);
        if (*chars_cmd) return cmd_characters(q);
        if (*arith_cmd) return cmd_arith(afn, n, method);
    } catch (const HypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
