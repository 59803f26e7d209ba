#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hsurf/json_io.hpp"

namespace hsurf::cli {

struct RunConfig {
    mpq_class precision = mpq_class(1, 1000000000000L);
    long depth = 25;
    long max_crossings = 1000;
    std::string output_format = "json";  // json | csv | svg | text
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: hardware concurrency
};

// STAIRCASE_PRECISION if set (DomainError unless positive), else 1e-12.
mpq_class default_precision();

// Runs one command line (without the program name).  Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Sweep bodies, exposed for tests.
struct TongueTable {
    std::string csv;
    std::string svg;
    long rows = 0;
};
TongueTable tongue_table(long n_max, long grid, const RunConfig& cfg);

std::string staircase_csv(const Real& s, Side side, const Real& lo, const Real& hi, long grid, const RunConfig& cfg);

// Random exact slopes in [0, 1/s), classified in parallel; one JSON object per line.
std::string classify_random(const Real& s, long count, const RunConfig& cfg);

TrajectoryState parse_start(const std::string& text, const Real& slope, bool backward);

}  // namespace hsurf::cli
