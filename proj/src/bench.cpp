#include "rhofactor/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "rhofactor/number_theory.hpp"

namespace rhofactor {

namespace {

constexpr int kGenerationAttempts = 10'000;

// Random probable prime in [lo, hi], or nullopt if the draw overshoots.
std::optional<Natural> random_prime_in(const Natural& lo, const Natural& hi, std::mt19937_64& rng) {
    const Natural span = hi - lo + Natural(1);
    const Natural p = next_probable_prime(lo + random_below(span, rng));
    if (p > hi) {
        return std::nullopt;
    }
    return p;
}

Natural ceil_div(const Natural& a, const Natural& b) { return (a + b - Natural(1)) / b; }

unsigned factor_count(const Factorization& f) {
    unsigned total = 0;
    for (const auto& pp : f.factors) {
        total += pp.multiplicity;
    }
    return total;
}

std::string format_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << s;
    return os.str();
}

}  // namespace

Natural gen_input(unsigned digits, unsigned small_factor_digits, std::uint64_t seed) {
    if (small_factor_digits < 2 || small_factor_digits > digits / 2) {
        throw ParameterError("gen_input: need 2 <= small_factor_digits <= digits / 2 (got digits=" +
                             std::to_string(digits) + ", small=" + std::to_string(small_factor_digits) + ")");
    }
    const unsigned large_digits = digits - small_factor_digits;
    const Natural total_lo = Natural::pow10(digits - 1);
    const Natural total_hi = Natural::pow10(digits) - Natural(1);
    const Natural small_lo = Natural::pow10(small_factor_digits - 1);
    const Natural small_hi = Natural::pow10(small_factor_digits) - Natural(1);

    std::mt19937_64 rng(mix_seed(seed, digits, small_factor_digits));
    for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
        const auto p = random_prime_in(small_lo, small_hi, rng);
        if (!p) {
            continue;
        }
        // Second prime keeps large_digits digits and lands the product on exactly `digits` digits.
        const Natural lo = std::max(Natural::pow10(large_digits - 1), ceil_div(total_lo, *p));
        const Natural hi = std::min(Natural::pow10(large_digits) - Natural(1), total_hi / *p);
        if (hi < lo) {
            continue;
        }
        const auto q = random_prime_in(lo, hi, rng);
        if (!q) {
            continue;
        }
        return *p * *q;
    }
    throw ParameterError("gen_input: no " + std::to_string(digits) + "-digit product found");
}

unsigned default_small_factor_digits(unsigned digits) {
    return std::clamp(digits / 4 + 1, 2u, std::max(2u, std::min(8u, digits / 2)));
}

BenchSuite desk_suite(std::uint64_t seed) {
    BenchSuite s;
    for (const unsigned d : {20u, 30u, 40u}) {
        s.classes.push_back({d, default_small_factor_digits(d)});
    }
    s.numbers_per_class = 5;
    s.worker_counts = {1, 2, 4};
    s.seed = seed;
    return s;
}

BenchSuite full_suite(std::uint64_t seed) {
    BenchSuite s;
    s.classes = {{50, kDefaultSmallFactorDigits}, {100, kDefaultSmallFactorDigits}, {200, kDefaultSmallFactorDigits}};
    s.numbers_per_class = 5;
    s.worker_counts = {1, 2, 4};
    s.seed = seed;
    return s;
}

void generate_inputs(BenchSuite& suite) {
    suite.inputs.clear();
    for (const auto& cls : suite.classes) {
        std::vector<Natural> row;
        row.reserve(suite.numbers_per_class);
        for (unsigned j = 0; j < suite.numbers_per_class; ++j) {
            row.push_back(gen_input(cls.digits, cls.small_factor_digits, mix_seed(suite.seed, cls.digits, j)));
        }
        suite.inputs.push_back(std::move(row));
    }
}

std::vector<BenchRecord> run_suite(BenchSuite& suite, const RaceConfig& base, const PrimeTable& table) {
    if (suite.inputs.size() != suite.classes.size()) {
        generate_inputs(suite);
    }
    std::vector<BenchRecord> records;
    for (std::size_t ci = 0; ci < suite.classes.size(); ++ci) {
        for (const unsigned workers : suite.worker_counts) {
            for (std::size_t j = 0; j < suite.inputs[ci].size(); ++j) {
                for (unsigned rep = 0; rep < std::max(suite.repeats, 1u); ++rep) {
                    RaceConfig config = base;
                    config.workers = workers;
                    config.c_assignment.clear();

                    const Natural& n = suite.inputs[ci][j];
                    const auto t0 = std::chrono::steady_clock::now();
                    const Factorization f = factorize(n, config, table);
                    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

                    if (!verify(f)) {
                        throw BenchVerificationError("unverified factorization of " + n.to_string() + " (class " +
                                                     std::to_string(suite.classes[ci].digits) + ", " +
                                                     std::to_string(workers) + " workers)");
                    }
                    records.push_back(BenchRecord{suite.classes[ci].digits, workers, static_cast<unsigned>(j), rep,
                                                  wall, factor_count(f), true, suite.seed});
                }
            }
        }
    }
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
    if (records.empty()) {
        throw AggregationError("summarize: no records");
    }
    std::map<unsigned, std::set<std::uint64_t>> seeds;
    std::map<std::pair<unsigned, unsigned>, std::vector<double>> cells;
    for (const auto& r : records) {
        seeds[r.digit_class].insert(r.suite_seed);
        cells[{r.digit_class, r.worker_count}].push_back(r.wall_time_s);
    }
    for (const auto& [cls, s] : seeds) {
        if (s.size() > 1) {
            throw AggregationError("summarize: digit class " + std::to_string(cls) + " mixes records from " +
                                   std::to_string(s.size()) + " suites");
        }
    }

    std::vector<SummaryRow> rows;
    for (const auto& [key, times] : cells) {
        SummaryRow row;
        row.digit_class = key.first;
        row.worker_count = key.second;
        row.samples = times.size();
        double sum = 0.0;
        for (const double t : times) {
            sum += t;
        }
        row.mean_time_s = sum / static_cast<double>(times.size());
        if (times.size() > 1) {
            double sq = 0.0;
            for (const double t : times) {
                sq += (t - row.mean_time_s) * (t - row.mean_time_s);
            }
            row.stddev_time_s = std::sqrt(sq / static_cast<double>(times.size() - 1));
        }
        rows.push_back(row);
    }
    for (auto& row : rows) {
        const auto base = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& r) {
            return r.digit_class == row.digit_class && r.worker_count == 1;
        });
        if (base != rows.end() && row.mean_time_s > 0.0) {
            row.speedup_vs_1 = base->mean_time_s / row.mean_time_s;
        }
    }
    return rows;
}

void write_records_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    os << "digit_class,workers,input_index,wall_time_s,factor_count,verified\n";
    for (const auto& r : records) {
        os << r.digit_class << ',' << r.worker_count << ',' << r.input_index << ',' << format_seconds(r.wall_time_s)
           << ',' << r.factor_count << ',' << (r.verified ? "true" : "false") << '\n';
    }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
    os << "digit_class,workers,mean_time_s,speedup_vs_1\n";
    for (const auto& r : rows) {
        os << r.digit_class << ',' << r.worker_count << ',' << format_seconds(r.mean_time_s) << ',';
        if (r.speedup_vs_1) {
            os << std::fixed << std::setprecision(4) << *r.speedup_vs_1 << std::defaultfloat;
        }
        os << '\n';
    }
}

void write_plot_script(std::ostream& os, const std::vector<SummaryRow>& rows, const std::string& summary_csv) {
    std::set<unsigned> classes;
    for (const auto& r : rows) {
        classes.insert(r.digit_class);
    }
    std::string class_list;
    for (const unsigned c : classes) {
        class_list += (class_list.empty() ? "" : " ") + std::to_string(c);
    }
    os << "# gnuplot -p summary.gp\n"
       << "set datafile separator ','\n"
       << "set title 'Average time vs workers'\n"
       << "set xlabel 'workers'\n"
       << "set ylabel 'mean wall time (s)'\n"
       << "set logscale x 2\n"
       << "set key top right\n"
       << "set grid\n"
       << "classes = \"" << class_list << "\"\n"
       << "plot for [c in classes] '" << summary_csv
       << "' every ::1 using 2:(column(1) == int(c) ? column(3) : 1/0) with linespoints title c.' digits'\n";
}

void print_summary(std::ostream& os, const std::vector<SummaryRow>& rows) {
    os << std::left << std::setw(8) << "digits" << std::setw(9) << "workers" << std::right << std::setw(14)
       << "mean (s)" << std::setw(12) << "stddev" << std::setw(12) << "speedup" << '\n';
    for (const auto& r : rows) {
        os << std::left << std::setw(8) << r.digit_class << std::setw(9) << r.worker_count << std::right
           << std::fixed << std::setprecision(6) << std::setw(14) << r.mean_time_s << std::setw(12)
           << r.stddev_time_s << std::setw(12);
        if (r.speedup_vs_1) {
            os << std::setprecision(3) << *r.speedup_vs_1;
        } else {
            os << "-";
        }
        os << std::defaultfloat << '\n';
    }
}

}  // namespace rhofactor
