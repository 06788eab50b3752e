// hspricer: price European/American options under lognormal jump-diffusion on
// the Hilliard-Schwartz bivariate lattice, with provably-bounded truncation of
// the jump dimension. Subcommands: price, table, validate.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hslattice/analytic.hpp"
#include "hslattice/engine.hpp"
#include "hslattice/tables.hpp"
#include "hslattice/validate.hpp"

namespace {

struct PriceArgs {
    double S0 = 40.0, K = 40.0, r = 0.08, d = 0.0;
    double sigma2 = 0.05, delta2 = 0.05, lambda = 5.0, tau = 1.0;
    std::optional<double> gammap;  // mean of ln(1+J)
    std::optional<double> gstar;   // ln(1+E[J]); converted to gammap
    int n = 400, nu = 3;
    double c = 1.0;
    std::string kind = "put", exercise = "european", method = "truncated-numerical";
    std::string epsilon = "auto", format = "text";
    bool serial = false;
};

hsl::MarketParams to_market(const PriceArgs& a) {
    hsl::MarketParams mkt;
    mkt.S0 = a.S0;
    mkt.K = a.K;
    mkt.r = a.r;
    mkt.d = a.d;
    mkt.sigma = std::sqrt(a.sigma2);
    mkt.lambda = a.lambda;
    mkt.delta = std::sqrt(a.delta2);
    mkt.tau = a.tau;
    if (a.gammap && a.gstar)
        throw CLI::ValidationError("--gammap and --gstar are mutually exclusive");
    if (a.gstar)
        mkt.gamma_prime = *a.gstar - 0.5 * a.delta2;
    else
        mkt.gamma_prime = a.gammap.value_or(0.0);
    return mkt;
}

double parse_epsilon(const std::string& text, int n) {
    if (text == "auto") return 1.0 / n;
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--epsilon must be a positive number or 'auto'");
    }
}

int run_price(const PriceArgs& a) {
    const hsl::MarketParams mkt = to_market(a);
    const hsl::OptionKind kind = a.kind == "call" ? hsl::OptionKind::call : hsl::OptionKind::put;
    const hsl::Exercise ex =
        a.exercise == "american" ? hsl::Exercise::american : hsl::Exercise::european;
    const hsl::Exec exec = a.serial ? hsl::Exec::serial : hsl::Exec::parallel;

    hsl::PriceResult res;
    bool lattice_method = true;
    if (a.method == "merton") {
        if (ex != hsl::Exercise::european)
            throw CLI::ValidationError("--method merton prices european options only");
        const auto t0 = std::chrono::steady_clock::now();
        res.value = hsl::merton_series_price(mkt, kind);
        res.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        lattice_method = false;
    } else {
        const auto spec = hsl::build_lattice(mkt, a.n, a.nu, a.c);
        const double eps = parse_epsilon(a.epsilon, a.n);
        if (a.method == "full") {
            res = ex == hsl::Exercise::european ? hsl::price_european_full(mkt, spec, kind, exec)
                                                : hsl::price_american_full(mkt, spec, kind, exec);
        } else if (a.method == "truncated-numerical" || a.method == "truncated-theoretical") {
            const bool numerical = a.method == "truncated-numerical";
            if (ex == hsl::Exercise::american) {
                const auto choice = numerical ? hsl::BoundsChoice::numerical
                                              : hsl::BoundsChoice::theoretical;
                res = kind == hsl::OptionKind::put
                          ? hsl::price_american_put_truncated(mkt, spec, eps, choice, exec)
                          : hsl::price_american_call_truncated(mkt, spec, eps, choice, exec);
            } else {
                hsl::TruncationBounds bounds;
                if (numerical) {
                    const auto qt = hsl::enlarged_jump_distribution(spec, exec);
                    bounds = hsl::numerical_bounds(spec, qt, mkt, eps, kind);
                } else {
                    const auto tc = hsl::truncation_constants(spec);
                    bounds = kind == hsl::OptionKind::call
                                 ? hsl::theoretical_bounds_call(spec, tc, mkt, eps)
                                 : hsl::theoretical_bounds_put(spec, tc, mkt, eps);
                }
                res = hsl::price_european_truncated(mkt, spec, bounds, kind, exec);
            }
        } else if (a.method == "type-a") {
            if (ex != hsl::Exercise::european)
                throw CLI::ValidationError("--method type-a prices european options only");
            const auto qt = hsl::enlarged_jump_distribution(spec, exec);
            const auto bounds = hsl::numerical_bounds(spec, qt, mkt, eps, kind);
            res = hsl::price_european_type_a(mkt, spec, bounds, kind, exec);
        } else {
            throw CLI::ValidationError("unknown --method " + a.method);
        }
    }

    char value[32], secs[32];
    std::snprintf(value, sizeof value, "%.4f", res.value);
    std::snprintf(secs, sizeof secs, "%.2f", res.elapsed_s);
    if (a.format == "csv") {
        std::cout << "value,time_s,method,kbar,lbar,nodes\n" << value << ',' << secs << ',';
        std::cout << (lattice_method ? hsl::to_string(res.method) : "merton_series");
        if (res.bounds)
            std::cout << ',' << res.bounds->kbar << ',' << res.bounds->lbar;
        else
            std::cout << ",,";
        std::cout << ',' << (lattice_method ? std::to_string(res.nodes_visited) : std::string());
        std::cout << "\n";
    } else {
        std::cout << value << " (" << secs << ")";
        std::cout << " method=" << (lattice_method ? hsl::to_string(res.method) : "merton_series");
        if (res.bounds) std::cout << " kbar=" << res.bounds->kbar << " lbar=" << res.bounds->lbar;
        if (lattice_method) std::cout << " nodes=" << res.nodes_visited;
        std::cout << "\n";
    }
    return 0;
}

// Expands `price --config FILE` into ordinary option tokens, skipping keys the
// command line already carries, so explicit flags win over file values.
void expand_config_defaults(std::vector<std::string>& args) {
    auto price_it = std::find(args.begin(), args.end(), "price");
    if (price_it == args.end()) return;
    auto cfg_it = std::find(args.begin(), args.end(), "--config");
    if (cfg_it == args.end() || cfg_it + 1 == args.end()) return;
    const std::string path = *(cfg_it + 1);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::vector<std::string> injected;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = "--" + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(args.begin(), args.end(), key) != args.end()) continue;
        injected.push_back(key);
        injected.push_back(value);
    }
    args.insert(price_it + 1, injected.begin(), injected.end());
}

int run_validate(const std::string& suite_name, bool inject_fault) {
    const hsl::Suite suite = suite_name == "full" ? hsl::Suite::full : hsl::Suite::fast;
    const auto results = hsl::run_validation(suite, inject_fault);
    size_t passed = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-38s slack=%+.3e  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.slack, r.detail.c_str());
        passed += r.pass;
    }
    std::printf("VALIDATION: %zu/%zu checks passed (suite %s)\n", passed, results.size(),
                suite_name.c_str());
    return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jump-diffusion option pricer on a truncated bivariate lattice"};
    app.require_subcommand(1);

    PriceArgs pa;
    std::string config_path;
    auto* price = app.add_subcommand("price", "price a single contract");
    price->add_option("--config", config_path,
                      "read key=value defaults from a file ('#' comments); flags override");
    price->add_option("--S0", pa.S0, "spot price")->capture_default_str();
    price->add_option("--K", pa.K, "strike")->capture_default_str();
    price->add_option("--r", pa.r, "risk-free rate (cont.)")->capture_default_str();
    price->add_option("--d", pa.d, "dividend yield (cont.)")->capture_default_str();
    price->add_option("--sigma2", pa.sigma2, "diffusion variance sigma^2")->capture_default_str();
    price->add_option("--lambda", pa.lambda, "jump intensity per year")->capture_default_str();
    price->add_option("--gammap", pa.gammap, "jump mean: mean of ln(1+J) (default 0)");
    price->add_option("--gstar", pa.gstar,
                      "jump mean as ln(1+E[J]); excludes --gammap, converted internally");
    price->add_option("--delta2", pa.delta2, "jump variance delta^2")->capture_default_str();
    price->add_option("--tau", pa.tau, "time to maturity, years")->capture_default_str();
    price->add_option("--kind", pa.kind, "call|put")
        ->check(CLI::IsMember({"call", "put"}))
        ->capture_default_str();
    price->add_option("--exercise", pa.exercise, "european|american")
        ->check(CLI::IsMember({"european", "american"}))
        ->capture_default_str();
    price->add_option("--n", pa.n, "time steps")->capture_default_str();
    price->add_option("--nu", pa.nu, "jump half-width (2nu+1 nodes)")->capture_default_str();
    price->add_option("--c", pa.c, "jump-step scale in (0,1]")->capture_default_str();
    price->add_option("--method", pa.method,
                      "merton|full|truncated-theoretical|truncated-numerical|type-a")
        ->check(CLI::IsMember(
            {"merton", "full", "truncated-theoretical", "truncated-numerical", "type-a"}))
        ->capture_default_str();
    price->add_option("--epsilon", pa.epsilon, "target truncation error, or 'auto' for 1/n")
        ->capture_default_str();
    price->add_option("--format", pa.format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    price->add_flag("--serial", pa.serial, "disable the OpenMP execution path");

    hsl::TableOptions topt;
    int table_id = 1;
    std::string panel;
    auto* table = app.add_subcommand("table", "emit a benchmark table as CSV");
    table->add_option("id", table_id, "table id (1-4)")->required()->check(CLI::Range(1, 4));
    table->add_option("--panel", panel, "restrict to one panel (A, B, ...)");
    table->add_option("--nu", topt.nu, "jump half-width")->capture_default_str();
    table->add_option("--c", topt.c, "jump-step scale")->capture_default_str();
    table->add_flag("--timings", topt.timings, "append wall-time columns (not byte-stable)");
    bool table_serial = false;
    table->add_flag("--serial", table_serial, "disable the OpenMP execution path");

    std::string suite = "fast";
    bool inject_fault = false;
    auto* validate = app.add_subcommand("validate", "run the invariant suites");
    validate->add_option("--suite", suite, "fast|full")
        ->check(CLI::IsMember({"fast", "full"}))
        ->capture_default_str();
    validate->add_flag("--inject-fault", inject_fault)->group("");  // negative-control hook

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        expand_config_defaults(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage/config errors exit 2; --help exits 0
    }

    try {
        if (price->parsed()) return run_price(pa);
        if (table->parsed()) {
            topt.table_id = table_id;
            if (!panel.empty()) topt.panel = panel[0];
            topt.exec = table_serial ? hsl::Exec::serial : hsl::Exec::parallel;
            hsl::write_table_csv(std::cout, topt);
            return 0;
        }
        if (validate->parsed()) return run_validate(suite, inject_fault);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
