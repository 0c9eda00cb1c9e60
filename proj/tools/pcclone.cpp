// Command-line front end: fidelity queries, figure-curve CSV emission,
// block-search reports, verification runs, and single clone applications.
//
// Exit codes: 0 success, 1 verification/consistency failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pcclone/cloner.hpp"
#include "pcclone/fidelity.hpp"
#include "pcclone/optimizer.hpp"
#include "pcclone/verify.hpp"

namespace {

using namespace pcc;

struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_complex(cplx z) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

std::vector<double> parse_phase_list(const std::string& text) {
    std::vector<double> phases;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            phases.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw usage_error("malformed phase list entry '" + item + "'");
        }
    }
    if (phases.empty()) throw usage_error("empty phase list");
    return phases;
}

PhaseVector resolve_phases(const std::optional<std::string>& text, int d) {
    if (!text) return PhaseVector::zeros(d);
    const auto phases = parse_phase_list(*text);
    if (static_cast<int>(phases.size()) != d - 1)
        throw usage_error("expected " + std::to_string(d - 1) + " phases for d = " +
                          std::to_string(d));
    return PhaseVector(phases);
}

// Resolves (k, m_out) against M = N + k*d; this is the regime in which the
// machine exists, so a mismatched --m-out is a usage error.
int resolve_k(int d, int n_in, std::optional<int> k, std::optional<int> m_out) {
    if (!k && !m_out) throw usage_error("give either --k or --m-out");
    if (k && *k < 0) throw usage_error("--k must be >= 0");
    if (m_out) {
        const int excess = *m_out - n_in;
        if (excess < 0 || excess % d != 0)
            throw usage_error("--m-out must satisfy M = N + k*d for integer k >= 0");
        if (k && *k != excess / d)
            throw usage_error("--k and --m-out disagree (M = N + k*d)");
        return excess / d;
    }
    return *k;
}

const char* method_name(FidelityMethod method) {
    return method == FidelityMethod::simulation ? "simulation" : "closed_form";
}

// ---------------------------------------------------------------------------

struct FidelityArgs {
    int d = 2;
    int n_in = 1;
    std::optional<int> k;
    std::optional<int> m_out;
    std::string method = "closed";
    std::optional<std::string> phases;
    std::string format = "text";
};

int cmd_fidelity(const FidelityArgs& args) {
    const int k = resolve_k(args.d, args.n_in, args.k, args.m_out);
    FidelityMethod method;
    if (args.method == "sim")
        method = FidelityMethod::simulation;
    else if (args.method == "closed")
        method = FidelityMethod::closed_form;
    else
        throw usage_error("--method must be sim or closed");

    const ClonerSpec spec(args.d, args.n_in, k);
    const FidelityReport report =
        fidelity_report(spec, resolve_phases(args.phases, args.d), method);

    if (args.format == "json") {
        nlohmann::ordered_json j;
        j["d"] = report.d;
        j["n_in"] = report.n_in;
        j["m_out"] = report.m_out;
        j["k"] = report.k;
        j["f_single"] = report.f_single;
        j["f_global"] = report.f_global;
        j["f_limit"] = report.f_limit;
        j["method"] = method_name(report.method);
        std::cout << j.dump() << '\n';
    } else if (args.format == "text") {
        std::cout << "d         " << report.d << '\n'
                  << "n_in      " << report.n_in << '\n'
                  << "m_out     " << report.m_out << '\n'
                  << "k         " << report.k << '\n'
                  << "f_single  " << fmt12(report.f_single) << '\n'
                  << "f_global  " << fmt12(report.f_global) << '\n'
                  << "f_limit   " << fmt12(report.f_limit) << '\n'
                  << "method    " << method_name(report.method) << '\n';
    } else {
        throw usage_error("--format must be text or json");
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct CurveArgs {
    int d = 2;
    std::optional<int> n_in;
    std::optional<int> max_k;
    std::optional<int> m_out;
    std::optional<std::string> out_path;
};

void emit_curve(std::ostream& os, const CurveArgs& args) {
    os << "# f_universal: SU(d)-covariant cloner baseline (literature closed form)\n";
    os << "d,n_in,m_out,k,f_phase,f_universal,f_limit\n";

    auto row = [&os](int d, int n, int k) {
        const int m = n + k * d;
        os << d << ',' << n << ',' << m << ',' << k << ','
           << fmt12(closed_single_NM(d, n, k)) << ','
           << fmt12(universal_fidelity(d, n, m)) << ','
           << fmt12(phase_estimation_fidelity(d, n)) << '\n';
    };

    if (args.max_k && args.m_out)
        throw usage_error("--max-k and --m-out are mutually exclusive");
    if (args.max_k) {
        if (!args.n_in) throw usage_error("--max-k mode needs --n-in");
        if (*args.max_k < 0) throw usage_error("empty sweep: --max-k must be >= 0");
        for (int k = 0; k <= *args.max_k; ++k) row(args.d, *args.n_in, k);
    } else if (args.m_out) {
        const int m = *args.m_out;
        if (m < 1) throw usage_error("empty sweep: --m-out must be >= 1");
        // N runs over 1 <= N <= M with M - N divisible by d
        int n0 = m % args.d == 0 ? args.d : m % args.d;
        for (int n = n0; n <= m; n += args.d) row(args.d, n, (m - n) / args.d);
    } else {
        throw usage_error("give --max-k (sweep in k) or --m-out (sweep in N)");
    }
}

int cmd_curve(const CurveArgs& args) {
    if (args.out_path) {
        std::ofstream file(*args.out_path);
        if (!file) throw std::runtime_error("cannot open " + *args.out_path);
        emit_curve(file, args);
    } else {
        emit_curve(std::cout, args);
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct BlocksArgs {
    int d = 2;
    int n_in = 1;
    int m_out = 1;
    std::string format = "text";
};

int cmd_blocks(const BlocksArgs& args) {
    if (args.m_out < args.n_in) throw usage_error("--m-out must be >= --n-in");
    const auto by_single = find_optimal_blocks(args.d, args.n_in, args.m_out,
                                               Merit::single);
    const auto by_global = find_optimal_blocks(args.d, args.n_in, args.m_out,
                                               Merit::global);
    std::vector<bool> best_single(by_single.scores.size(), false);
    std::vector<bool> best_global(by_single.scores.size(), false);
    for (std::size_t i : by_single.argmax) best_single[i] = true;
    for (std::size_t i : by_global.argmax) best_global[i] = true;

    if (args.format == "json") {
        nlohmann::ordered_json out;
        out["d"] = args.d;
        out["n_in"] = args.n_in;
        out["m_out"] = args.m_out;
        out["blocks"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < by_single.scores.size(); ++i) {
            const BlockScore& s = by_single.scores[i];
            nlohmann::ordered_json j;
            j["block"] = s.block.counts();
            j["f_single"] = s.f_single_block;
            j["f_global"] = s.f_global_block;
            j["f_global_diagonal"] = s.f_global_diagonal;
            j["optimal_single"] = static_cast<bool>(best_single[i]);
            j["optimal_global"] = static_cast<bool>(best_global[i]);
            out["blocks"].push_back(j);
        }
        out["uniform_singleton"] =
            by_single.is_uniform_singleton && by_global.is_uniform_singleton;
        std::cout << out.dump() << '\n';
    } else if (args.format == "text") {
        std::cout << "# blocks for d=" << args.d << " n_in=" << args.n_in
                  << " m_out=" << args.m_out << '\n';
        std::cout << "block,f_single,f_global,f_global_diagonal,optimal\n";
        for (std::size_t i = 0; i < by_single.scores.size(); ++i) {
            const BlockScore& s = by_single.scores[i];
            std::string marks;
            if (best_single[i]) marks += 'S';
            if (best_global[i]) marks += 'G';
            std::cout << s.block.to_string() << ',' << fmt12(s.f_single_block) << ','
                      << fmt12(s.f_global_block) << ',' << fmt12(s.f_global_diagonal)
                      << ',' << marks << '\n';
        }
    } else {
        throw usage_error("--format must be text or json");
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::uint64_t seed = 0;
    int max_d = 3;
    int max_n = 2;
    int max_k = 2;
    int phase_draws = 20;
    std::size_t oracle_cap = kDefaultOracleCap;
    std::optional<double> tol;
};

int cmd_verify(const VerifyArgs& args) {
    VerifyGrid grid;
    grid.max_d = args.max_d;
    grid.max_n = args.max_n;
    grid.max_k = args.max_k;
    grid.phase_draws = args.phase_draws;
    grid.oracle_cap = args.oracle_cap;
    grid.tol_override = args.tol;

    const auto results = run_suite(grid, args.seed);
    int passed = 0, failed = 0, skipped = 0;
    for (const auto& r : results) {
        std::cout << to_json_line(r) << '\n';
        if (r.skipped)
            ++skipped;
        else if (r.passed)
            ++passed;
        else
            ++failed;
    }
    std::cerr << "verify: passed=" << passed << " failed=" << failed
              << " skipped=" << skipped << '\n';
    return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct CloneArgs {
    int d = 2;
    int n_in = 1;
    int k = 0;
    std::optional<std::string> phases;
};

int cmd_clone(const CloneArgs& args) {
    if (args.k < 0) throw usage_error("--k must be >= 0");
    const ClonerSpec spec(args.d, args.n_in, args.k);
    const PhaseVector phases = resolve_phases(args.phases, args.d);
    const SymVector out = clone(spec, phases);

    std::cout << "# output state, " << spec.m_out() << " qudits, d=" << args.d << '\n';
    std::cout << "# occupation, re, im\n";
    const auto occs = enumerate_occupations(out.n, out.d);
    for (std::size_t r = 0; r < occs.size(); ++r) {
        const cplx a = out.amps(static_cast<Eigen::Index>(r));
        std::cout << occs[r].to_string() << ", " << fmt12(a.real()) << ", "
                  << fmt12(a.imag()) << '\n';
    }
    std::cout << "# reduced one-body density matrix\n";
    const CMat rho = reduced_onebody(out);
    for (int a = 0; a < args.d; ++a) {
        for (int b = 0; b < args.d; ++b)
            std::cout << (b ? " " : "") << fmt_complex(rho(a, b));
        std::cout << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"economical multi-phase-covariant qudit cloning toolkit"};
    app.require_subcommand(1);

    FidelityArgs fidelity_args;
    auto* fid = app.add_subcommand("fidelity", "single-qudit and global fidelities");
    fid->add_option("--d", fidelity_args.d, "qudit dimension")->required();
    fid->add_option("--n-in", fidelity_args.n_in, "input copies N")->required();
    fid->add_option("--k", fidelity_args.k, "excitations added per level");
    fid->add_option("--m-out", fidelity_args.m_out, "output copies M = N + k*d");
    fid->add_option("--method", fidelity_args.method, "sim or closed");
    fid->add_option("--phases", fidelity_args.phases, "comma-separated radians");
    fid->add_option("--format", fidelity_args.format, "text or json");

    CurveArgs curve_args;
    auto* curve = app.add_subcommand("curve", "figure curves as CSV");
    curve->add_option("--d", curve_args.d, "qudit dimension")->required();
    curve->add_option("--n-in", curve_args.n_in, "input copies (k-sweep mode)");
    curve->add_option("--max-k", curve_args.max_k, "sweep k = 0..max-k");
    curve->add_option("--m-out", curve_args.m_out, "fixed M (N-sweep mode)");
    curve->add_option("--out", curve_args.out_path, "write CSV to file");

    BlocksArgs blocks_args;
    auto* blocks = app.add_subcommand("blocks", "exhaustive block-score report");
    blocks->add_option("--d", blocks_args.d, "qudit dimension")->required();
    blocks->add_option("--n-in", blocks_args.n_in, "input copies N")->required();
    blocks->add_option("--m-out", blocks_args.m_out, "output copies M")->required();
    blocks->add_option("--format", blocks_args.format, "text or json");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--seed", verify_args.seed, "RNG seed");
    verify->add_option("--max-d", verify_args.max_d, "largest dimension");
    verify->add_option("--max-n", verify_args.max_n, "largest N");
    verify->add_option("--max-k", verify_args.max_k, "largest k");
    verify->add_option("--phase-draws", verify_args.phase_draws, "draws per check");
    verify->add_option("--oracle-cap", verify_args.oracle_cap, "full-space cap");
    verify->add_option("--tol", verify_args.tol, "override every tolerance");

    CloneArgs clone_args;
    auto* clone_cmd = app.add_subcommand("clone", "apply one cloning machine");
    clone_cmd->add_option("--d", clone_args.d, "qudit dimension")->required();
    clone_cmd->add_option("--n-in", clone_args.n_in, "input copies N")->required();
    clone_cmd->add_option("--k", clone_args.k, "excitations added per level")->required();
    clone_cmd->add_option("--phases", clone_args.phases, "comma-separated radians");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (fid->parsed()) return cmd_fidelity(fidelity_args);
        if (curve->parsed()) return cmd_curve(curve_args);
        if (blocks->parsed()) return cmd_blocks(blocks_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        if (clone_cmd->parsed()) return cmd_clone(clone_args);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
