#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhofactor/natural.hpp"
#include "rhofactor/pipeline.hpp"
#include "rhofactor/race.hpp"
#include "rhofactor/sieve.hpp"

namespace rhofactor {

/// Infeasible digit combination for gen_input.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A factorization in the suite failed verification.
class BenchVerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Records from different suites were mixed in one summary.
class AggregationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr unsigned kDefaultSmallFactorDigits = 10;

/**
 * Composite of exactly `digits` decimal digits: one random prime with
 * `small_factor_digits` digits times one larger random prime. Deterministic
 * in all three arguments.
 *
 * Throws ParameterError unless 2 <= small_factor_digits <= digits / 2.
 */
Natural gen_input(unsigned digits, unsigned small_factor_digits, std::uint64_t seed);

struct DigitClass {
    unsigned digits = 0;
    unsigned small_factor_digits = 0;
};

struct BenchSuite {
    std::vector<DigitClass> classes;
    unsigned numbers_per_class = 5;
    std::vector<unsigned> worker_counts;
    std::uint64_t seed = 0;
    unsigned repeats = 1;
    /// inputs[i][j]: j-th input of classes[i]. Filled by generate_inputs.
    std::vector<std::vector<Natural>> inputs;
};

/// Desk-scale smallest-factor size for a digit class: digits/4 + 1, clamped to [2, min(8, digits/2)].
unsigned default_small_factor_digits(unsigned digits);

/// 20/30/40 digits with 6/8/8-digit smallest factors, five inputs each, 1/2/4 workers.
BenchSuite desk_suite(std::uint64_t seed = 0);
/// 50/100/200 digits with 10-digit smallest factors, five inputs each, 1/2/4 workers.
BenchSuite full_suite(std::uint64_t seed = 0);

/// Fills suite.inputs from (seed, class, index).
void generate_inputs(BenchSuite& suite);

struct BenchRecord {
    unsigned digit_class = 0;
    unsigned worker_count = 0;
    unsigned input_index = 0;
    unsigned repeat = 0;
    double wall_time_s = 0.0;
    unsigned factor_count = 0;  // primes counted with multiplicity
    bool verified = false;
    std::uint64_t suite_seed = 0;
};

/**
 * Factors every input at every worker count, one cell at a time. Wall time
 * covers factorize only. Generates inputs first if the suite has none.
 * `base` supplies detector, batch and seed; its worker count is overridden
 * per cell. Throws BenchVerificationError on any unverified result.
 */
std::vector<BenchRecord> run_suite(BenchSuite& suite, const RaceConfig& base, const PrimeTable& table);

struct SummaryRow {
    unsigned digit_class = 0;
    unsigned worker_count = 0;
    double mean_time_s = 0.0;
    double stddev_time_s = 0.0;        // sample stddev; 0 for a single sample
    std::optional<double> speedup_vs_1;  // mean(1 worker) / mean(this); empty without a 1-worker row
    std::size_t samples = 0;
};

/**
 * Mean wall time per (class, workers) and ratio against the one-worker mean.
 * Rows sorted by class then workers. Throws AggregationError for an empty
 * list or when one class carries records from different suite seeds.
 */
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);

/// digit_class,workers,input_index,wall_time_s,factor_count,verified
void write_records_csv(std::ostream& os, const std::vector<BenchRecord>& records);
/// digit_class,workers,mean_time_s,speedup_vs_1
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
/// gnuplot script plotting mean time against worker count, one line per class.
void write_plot_script(std::ostream& os, const std::vector<SummaryRow>& rows, const std::string& summary_csv);
/// Fixed-width table for terminals.
void print_summary(std::ostream& os, const std::vector<SummaryRow>& rows);

}  // namespace rhofactor
