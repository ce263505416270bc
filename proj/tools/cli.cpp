#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rhofactor/bench.hpp"
#include "rhofactor/number_theory.hpp"
#include "rhofactor/pipeline.hpp"
#include "rhofactor/race.hpp"
#include "rhofactor/rho.hpp"
#include "rhofactor/sieve.hpp"

namespace rhofactor::cli {

namespace {

struct RaceOptions {
    unsigned workers = detected_workers();
    std::uint64_t seed = 0;
    std::string detector = "floyd";
    std::uint64_t gcd_batch = kDefaultGcdBatch;
    bool seeded_constants = false;
};

void add_race_options(CLI::App& cmd, RaceOptions& opts) {
    cmd.add_option("--seed", opts.seed, "Seed for start points and retry constants");
    cmd.add_option("--detector", opts.detector, "Cycle detector")
        ->check(CLI::IsMember({"floyd", "brent"}))
        ->capture_default_str();
    cmd.add_option("--gcd-batch", opts.gcd_batch, "Iterations per gcd")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_flag("--seeded-constants", opts.seeded_constants,
                 "Draw the per-worker constants from the seed instead of 1, 2, 3, ...");
}

RaceConfig to_config(const RaceOptions& opts) {
    RaceConfig config;
    config.workers = opts.workers;
    config.seed = opts.seed;
    config.detector = *parse_detector(opts.detector);
    config.gcd_batch = opts.gcd_batch;
    config.c_mode = opts.seeded_constants ? ConstantMode::seeded : ConstantMode::sequential;
    return config;
}

nlohmann::json factors_json(const std::vector<PrimePower>& factors) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& pp : factors) {
        arr.push_back({{"p", pp.prime.to_string()}, {"k", pp.multiplicity}});
    }
    return arr;
}

void print_factors(std::ostream& out, const std::vector<PrimePower>& factors) {
    for (const auto& pp : factors) {
        out << pp.prime << '^' << pp.multiplicity << '\n';
    }
}

int cmd_factor(const std::string& text, const RaceOptions& opts, std::uint64_t prepass_limit, bool json,
               std::ostream& out, std::ostream& err) {
    Natural n;
    try {
        n = Natural::parse(text);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (n.is_zero()) {
        err << "error: 0 has no prime factorization\n";
        return kExitUsage;
    }
    const PrimeTable table = sieve(prepass_limit);
    const RaceConfig config = to_config(opts);

    try {
        const Factorization f = factorize(n, config, table);
        if (json) {
            const nlohmann::json doc = {{"input", n.to_string()},
                                        {"factors", factors_json(f.factors)},
                                        {"wall_time_s", f.stats.total_s},
                                        {"workers", config.workers}};
            out << doc.dump() << '\n';
        } else {
            print_factors(out, f.factors);
        }
        return kExitOk;
    } catch (const FactorizationExhausted& e) {
        err << "error: " << e.what() << '\n';
        if (json) {
            nlohmann::json unresolved = nlohmann::json::array();
            for (const auto& m : e.unresolved()) {
                unresolved.push_back(m.to_string());
            }
            const nlohmann::json doc = {{"input", n.to_string()},
                                        {"factors", factors_json(e.partial().factors)},
                                        {"wall_time_s", e.partial().stats.total_s},
                                        {"workers", config.workers},
                                        {"unresolved", unresolved}};
            out << doc.dump() << '\n';
        } else {
            print_factors(out, e.partial().factors);
            for (const auto& m : e.unresolved()) {
                out << "unresolved " << m << '\n';
            }
        }
        return kExitFailure;
    }
}

struct GenOptions {
    unsigned digits = 0;
    unsigned small = 0;  // 0: pick a default for the digit count
    std::uint64_t seed = 0;
    unsigned count = 1;
};

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
    unsigned small = opts.small;
    if (small == 0) {
        small = kDefaultSmallFactorDigits <= opts.digits / 2 ? kDefaultSmallFactorDigits
                                                             : default_small_factor_digits(opts.digits);
    }
    try {
        for (unsigned i = 0; i < opts.count; ++i) {
            out << gen_input(opts.digits, small, mix_seed(opts.seed, opts.digits, i)) << '\n';
        }
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

struct BenchOptions {
    std::vector<unsigned> classes;
    std::vector<unsigned> small_digits;
    unsigned per_class = 5;
    std::vector<unsigned> workers{1, 2, 4};
    std::string out_dir = "bench_out";
    bool full = false;
    unsigned repeat = 1;
    RaceOptions race;
};

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
    BenchSuite suite = opts.full ? full_suite(opts.race.seed) : desk_suite(opts.race.seed);
    if (!opts.classes.empty()) {
        if (!opts.small_digits.empty() && opts.small_digits.size() != 1 &&
            opts.small_digits.size() != opts.classes.size()) {
            err << "error: --small-digits takes one value or one per class\n";
            return kExitUsage;
        }
        suite.classes.clear();
        for (std::size_t i = 0; i < opts.classes.size(); ++i) {
            const unsigned d = opts.classes[i];
            unsigned s = opts.full ? kDefaultSmallFactorDigits : default_small_factor_digits(d);
            if (!opts.small_digits.empty()) {
                s = opts.small_digits.size() == 1 ? opts.small_digits[0] : opts.small_digits[i];
            }
            suite.classes.push_back({d, s});
        }
    } else if (!opts.small_digits.empty()) {
        err << "error: --small-digits needs --classes\n";
        return kExitUsage;
    }
    suite.numbers_per_class = opts.per_class;
    suite.worker_counts = opts.workers;
    suite.repeats = opts.repeat;

    try {
        generate_inputs(suite);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    unsigned max_workers = 0;
    for (const unsigned w : suite.worker_counts) {
        max_workers = std::max(max_workers, w);
    }
    if (max_workers > detected_workers()) {
        err << "warning: " << max_workers << " workers requested but " << detected_workers()
            << " hardware threads detected; speedup ratios will not be meaningful\n";
    }

    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path dir(opts.out_dir);
    fs::create_directories(dir, ec);
    if (ec) {
        err << "error: cannot create " << dir << ": " << ec.message() << '\n';
        return kExitFailure;
    }
    std::ofstream records_file(dir / "records.csv");
    std::ofstream summary_file(dir / "summary.csv");
    std::ofstream plot_file(dir / "summary.gp");
    if (!records_file || !summary_file || !plot_file) {
        err << "error: cannot write into " << dir << '\n';
        return kExitFailure;
    }

    const PrimeTable table = sieve(kDefaultPrepassLimit);
    std::vector<BenchRecord> records;
    try {
        records = run_suite(suite, to_config(opts.race), table);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }

    write_records_csv(records_file, records);
    if (records.empty()) {
        write_summary_csv(summary_file, {});
        out << "no records\n";
        return kExitOk;
    }
    const auto rows = summarize(records);
    write_summary_csv(summary_file, rows);
    write_plot_script(plot_file, rows, "summary.csv");
    print_summary(out, rows);
    out << records.size() << " records written to " << dir.string() << '\n';
    if (!records_file || !summary_file || !plot_file) {
        err << "error: write failed in " << dir << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

// Independent reference: plain trial division on machine words.
std::vector<PrimePower> reference_factors(std::uint64_t n) {
    std::vector<PrimePower> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        unsigned k = 0;
        while (n % d == 0) {
            n /= d;
            ++k;
        }
        if (k > 0) {
            out.push_back({Natural(d), k});
        }
    }
    if (n > 1) {
        out.push_back({Natural(n), 1});
    }
    return out;
}

std::string render(const std::vector<PrimePower>& factors) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < factors.size(); ++i) {
        os << (i ? " " : "") << factors[i].prime << '^' << factors[i].multiplicity;
    }
    os << '}';
    return os.str();
}

}  // namespace

int selftest(std::ostream& out) {
    constexpr std::uint64_t kSweepLimit = 100'000;
    RaceConfig config;
    config.workers = 1;
    config.seed = 0;

    // The 30-limit table leaves composite cofactors, so that sweep runs the rho race.
    for (const std::uint64_t prepass : {kDefaultPrepassLimit, std::uint64_t{30}}) {
        const PrimeTable table = sieve(prepass);
        for (std::uint64_t n = 1; n <= kSweepLimit; ++n) {
            const auto expected = reference_factors(n);
            std::string got;
            try {
                const Factorization f = factorize(Natural(n), config, table);
                if (f.factors == expected) {
                    continue;
                }
                got = render(f.factors);
            } catch (const std::exception& e) {
                got = std::string("exception: ") + e.what();
            }
            out << "FAIL oracle sweep (prepass " << prepass << "): n=" << n << " expected " << render(expected)
                << " got " << got << '\n';
            return kExitFailure;
        }
        out << "ok   oracle sweep n=1.." << kSweepLimit << " (prepass " << prepass << ")\n";
    }

    struct Check {
        const char* name;
        bool pass;
    };
    const Natural n8051(8051);
    const auto rho = rho_attempt(n8051, RhoParams::make(n8051, Natural(1), Natural(2), 10'000, 1));
    const auto brent = brent_attempt(n8051, RhoParams::make(n8051, Natural(1), Natural(2), 10'000, 1));
    const PrimeTable small = sieve(30);
    const Natural constructed = Natural::parse("1000000007") * Natural::parse("1000000009") * Natural::parse("2147483647");
    const Factorization big = factorize(constructed, config, sieve(1000));

    const Check checks[] = {
        {"gcd(12, 18) = 6", gcd(Natural(12), Natural(18)) == Natural(6)},
        {"gcd(0, 8051) = 8051", gcd(Natural(0), n8051) == n8051},
        {"gcd(2813, 8051) = 97", gcd(Natural(2813), n8051) == Natural(97)},
        {"mod_mul(5, 5, 7) = 4", mod_mul(Natural(5), Natural(5), Natural(7)) == Natural(4)},
        {"abs_diff(26, 7474) = 7448", abs_diff(Natural(26), Natural(7474)) == Natural(7448)},
        {"561 is composite", !is_probable_prime(Natural(561))},
        {"7919 is prime", is_probable_prime(Natural(7919))},
        {"sieve(30) has 10 primes", small.primes.size() == 10 && small.primes.back() == 29},
        {"rho(8051, c=1, x0=2) = 97", rho.status == RhoStatus::factor && rho.factor == Natural(97)},
        {"brent(8051) finds 83 or 97",
         brent.status == RhoStatus::factor && (brent.factor == Natural(83) || brent.factor == Natural(97))},
        {"three-prime product round trip", verify(big) && big.factors.size() == 3},
    };
    for (const auto& c : checks) {
        if (!c.pass) {
            out << "FAIL " << c.name << '\n';
            return kExitFailure;
        }
        out << "ok   " << c.name << '\n';
    }
    out << "selftest passed\n";
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parallel Pollard rho factorization"};
    app.name("rhofactor");
    app.require_subcommand(1);

    auto* factor = app.add_subcommand("factor", "Print the prime factorization of a decimal number");
    std::string number;
    RaceOptions factor_race;
    std::uint64_t prepass = kDefaultPrepassLimit;
    bool json = false;
    factor->add_option("n", number, "Number to factor (decimal)")->required();
    factor->add_option("--workers", factor_race.workers, "Concurrent rho workers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_race_options(*factor, factor_race);
    factor->add_option("--prepass-limit", prepass, "Trial-division bound")->capture_default_str();
    factor->add_flag("--json", json, "Emit a JSON object");

    auto* gen = app.add_subcommand("gen", "Generate composites of a given size");
    GenOptions gen_opts;
    gen->add_option("--digits", gen_opts.digits, "Decimal digits of each number")->required();
    gen->add_option("--small", gen_opts.small, "Digits of the smallest prime factor");
    gen->add_option("--seed", gen_opts.seed, "Generator seed");
    gen->add_option("--count", gen_opts.count, "How many numbers")->capture_default_str();

    auto* bench = app.add_subcommand("bench", "Time factorization across worker counts");
    BenchOptions bench_opts;
    bench->add_option("--classes", bench_opts.classes, "Digit classes, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(4u, 1000u));
    bench->add_option("--small-digits", bench_opts.small_digits, "Smallest-factor digits (one, or one per class)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench->add_option("--per-class", bench_opts.per_class, "Inputs per digit class")->capture_default_str();
    bench->add_option("--workers", bench_opts.workers, "Worker counts, comma separated")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_opts.out_dir, "Output directory")->capture_default_str();
    bench->add_flag("--full", bench_opts.full, "50/100/200-digit classes with 10-digit smallest factors");
    bench->add_option("--repeat", bench_opts.repeat, "Runs per cell")->check(CLI::PositiveNumber);
    add_race_options(*bench, bench_opts.race);

    app.add_subcommand("selftest", "Run the built-in oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kExitUsage;
    }

    if (factor->parsed()) {
        return cmd_factor(number, factor_race, prepass, json, out, err);
    }
    if (gen->parsed()) {
        return cmd_gen(gen_opts, out, err);
    }
    if (bench->parsed()) {
        return cmd_bench(bench_opts, out, err);
    }
    return selftest(out);
}

}  // namespace rhofactor::cli
