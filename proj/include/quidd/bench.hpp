#pragma once

#include <map>
#include <string>
#include <vector>

#include "quidd/equiv.hpp"

namespace quidd {

/// Least-squares polynomial fit y = c0 + c1 x + ... + c_deg x^deg.
struct PolyFit {
    std::vector<double> coeffs;  // low order first
    double r_squared = 0.0;
    double eval(double x) const;
};

PolyFit fit_polynomial(const std::vector<double>& xs, const std::vector<double>& ys, int degree);

/// Slope of log y vs log x; a growth-exponent estimate.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// Median over repeated timed runs of fn (check only, build excluded).
/// clear_cache runs between repetitions outside the timed region so cached
/// results cannot shortcut later repetitions.
double time_check_ms(const std::function<void()>& fn, const std::function<void()>& clear_cache,
                     int min_reps = 9, double min_total_ms = 5.0);

enum class BenchSuite { Grover, Epr, Hamiltonian, Qft, ModExp };

BenchSuite parse_suite(const std::string& name);
const char* to_string(BenchSuite s);

struct BenchRow {
    int n = 0;                // suite size parameter
    int qubits = 0;           // actual qubit count
    std::size_t nodes = 0;    // node count of the primary DD
    double build_ms = 0.0;
    std::map<std::string, double> check_ms;        // per-method check time
    std::map<std::string, std::string> verdicts;   // per-method outcome
};

struct BenchResult {
    BenchSuite suite;
    std::vector<BenchRow> rows;
    PolyFit nodes_fit;                       // nodes vs n, degree 1
    std::map<std::string, PolyFit> time_fits;  // check time vs n, degree 1
};

/// Runs one suite at the given sizes. Sizes are qubit counts, except for
/// modexp where they are x-register widths (modulus 2^s - 1, base N - 2).
BenchResult run_bench(BenchSuite suite, const std::vector<int>& sizes);

}  // namespace quidd
