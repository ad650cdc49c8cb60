#include "quidd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "quidd/build.hpp"

namespace quidd {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// solves the (deg+1)x(deg+1) normal equations by Gaussian elimination
std::vector<double> solve_normal_equations(std::vector<std::vector<double>> m,
                                           std::vector<double> rhs) {
    const std::size_t k = rhs.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        if (std::abs(m[col][col]) < 1e-30) throw NumericError("fit: singular normal equations");
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = rhs[i] / m[i][i];
    return out;
}

void add_check(BenchRow& row, const std::string& name, DDManager& m,
               const std::function<EquivVerdict()>& run) {
    EquivVerdict v = run();
    row.verdicts[name] = to_string(v.outcome);
    row.check_ms[name] =
        time_check_ms([&] { run(); }, [&] { m.clear_compute_cache(); });
}

}  // namespace

double PolyFit::eval(double x) const {
    double y = 0.0, p = 1.0;
    for (double c : coeffs) {
        y += c * p;
        p *= x;
    }
    return y;
}

PolyFit fit_polynomial(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
    if (xs.size() != ys.size() || xs.size() < static_cast<std::size_t>(degree + 1))
        throw std::invalid_argument("fit_polynomial: not enough points");
    const std::size_t k = static_cast<std::size_t>(degree) + 1;
    std::vector<std::vector<double>> m(k, std::vector<double>(k, 0.0));
    std::vector<double> rhs(k, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double xp = 1.0;
        std::vector<double> powers(2 * k - 1);
        for (std::size_t p = 0; p < 2 * k - 1; ++p) {
            powers[p] = xp;
            xp *= xs[i];
        }
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) m[r][c] += powers[r + c];
            rhs[r] += powers[r] * ys[i];
        }
    }
    PolyFit fit;
    fit.coeffs = solve_normal_equations(std::move(m), std::move(rhs));

    double mean = 0.0;
    for (double y : ys) mean += y;
    mean /= static_cast<double>(ys.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - fit.eval(xs[i]);
        ss_res += e * e;
        const double d = ys[i] - mean;
        ss_tot += d * d;
    }
    fit.r_squared = ss_tot <= 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0.0 || ys[i] <= 0.0) continue;
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    const PolyFit f = fit_polynomial(lx, ly, 1);
    return f.coeffs[1];
}

double time_check_ms(const std::function<void()>& fn, const std::function<void()>& clear_cache,
                     int min_reps, double min_total_ms) {
    std::vector<double> samples;
    double total = 0.0;
    while (static_cast<int>(samples.size()) < min_reps || total < min_total_ms) {
        clear_cache();
        const auto t0 = Clock::now();
        fn();
        const double ms = elapsed_ms(t0);
        samples.push_back(ms);
        total += ms;
        if (samples.size() > 10000) break;
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

BenchSuite parse_suite(const std::string& name) {
    if (name == "grover") return BenchSuite::Grover;
    if (name == "epr") return BenchSuite::Epr;
    if (name == "hamiltonian") return BenchSuite::Hamiltonian;
    if (name == "qft") return BenchSuite::Qft;
    if (name == "modexp") return BenchSuite::ModExp;
    throw std::invalid_argument("unknown bench suite '" + name + "'");
}

const char* to_string(BenchSuite s) {
    switch (s) {
        case BenchSuite::Grover: return "grover";
        case BenchSuite::Epr: return "epr";
        case BenchSuite::Hamiltonian: return "hamiltonian";
        case BenchSuite::Qft: return "qft";
        case BenchSuite::ModExp: return "modexp";
    }
    return "?";
}

BenchResult run_bench(BenchSuite suite, const std::vector<int>& sizes) {
    BenchResult result;
    result.suite = suite;

    for (int n : sizes) {
        BenchRow row;
        row.n = n;
        DDManager m;
        const auto t0 = Clock::now();

        switch (suite) {
            case BenchSuite::Grover: {
                const QuIDD state = build_state(m, grover_iter_circuit(n));
                const QuIDD twin = scalar_mul(state, std::polar(1.0, 0.345));
                row.build_ms = elapsed_ms(t0);
                row.qubits = n;
                row.nodes = m.node_count(state.root);
                add_check(row, "gprc", m, [&] { return gprc(state, twin); });
                add_check(row, "inner", m, [&] { return global_inner_product(state, twin); });
                add_check(row, "nodecount", m, [&] { return node_count_filter(state, twin); });
                break;
            }
            case BenchSuite::Epr: {
                const QuIDD state = build_state(m, remote_epr_circuit(n));
                const QuIDD target = build_state(m, epr_phased_target_circuit(n));
                row.build_ms = elapsed_ms(t0);
                row.qubits = n;
                row.nodes = m.node_count(state.root);
                add_check(row, "modinner", m, [&] { return rel_mod_inner(state, target); });
                add_check(row, "elemdiv", m, [&] { return elementwise_div_states(state, target); });
                add_check(row, "moddd", m, [&] { return mod_dd_compare(state, target); });
                add_check(row, "merge", m, [&] { return non_zero_terminal_merge(state, target); });
                break;
            }
            case BenchSuite::Hamiltonian: {
                const QuIDD u = build_operator(m, hamiltonian_zz_circuit(n, 0.3));
                const QuIDD v = build_operator(m, hamiltonian_zz_circuit(n, 0.9));
                row.build_ms = elapsed_ms(t0);
                row.qubits = n;
                row.nodes = m.node_count(u.root);
                add_check(row, "modmatrix", m, [&] { return rel_mod_matrix(u, v); });
                add_check(row, "rpdiv", m, [&] { return rp_div_operators(u, v); });
                add_check(row, "moddd", m, [&] { return mod_dd_compare(u, v); });
                add_check(row, "merge", m, [&] { return non_zero_terminal_merge(u, v); });
                break;
            }
            case BenchSuite::Qft: {
                const QuIDD u = inverse_qft_operator(m, n);
                const QuIDD twin = scalar_mul(u, std::polar(1.0, 0.345));
                row.build_ms = elapsed_ms(t0);
                row.qubits = n;
                row.nodes = m.node_count(u.root);
                add_check(row, "gprc", m, [&] { return gprc(u, twin); });
                add_check(row, "matrix", m, [&] { return global_matrix_product(u, twin); });
                break;
            }
            case BenchSuite::ModExp: {
                // size = x-register width s; modulus 2^s - 1 (odd), base N - 2
                if (n < 2 || n > 10)
                    throw std::invalid_argument("modexp sizes must be in [2, 10]");
                const std::uint64_t modulus = (1ull << n) - 1;
                const QuIDD state = modexp_state(m, modulus, modulus - 2);
                const QuIDD twin = scalar_mul(state, std::polar(1.0, 0.345));
                row.build_ms = elapsed_ms(t0);
                row.qubits = state.n_qubits;
                row.nodes = m.node_count(state.root);
                add_check(row, "gprc", m, [&] { return gprc(state, twin); });
                add_check(row, "inner", m, [&] { return global_inner_product(state, twin); });
                break;
            }
        }
        result.rows.push_back(std::move(row));
    }

    if (result.rows.size() >= 2) {
        std::vector<double> xs, nodes;
        for (const BenchRow& r : result.rows) {
            xs.push_back(r.n);
            nodes.push_back(static_cast<double>(r.nodes));
        }
        result.nodes_fit = fit_polynomial(xs, nodes, 1);
        for (const auto& kv : result.rows.front().check_ms) {
            std::vector<double> ts;
            for (const BenchRow& r : result.rows) ts.push_back(r.check_ms.at(kv.first));
            result.time_fits[kv.first] = fit_polynomial(xs, ts, 1);
        }
    }
    return result;
}

}  // namespace quidd
