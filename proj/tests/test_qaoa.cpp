#include <doctest.h>

#include <cmath>
#include <random>

#include "qprot/qaoa.hpp"
#include "test_util.hpp"

using namespace qprot;

namespace {

QuboProblem random_qubo(std::mt19937_64& rng, std::size_t n) {
    QuboProblem p;
    p.n = n;
    p.q.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = (uniform01(rng) * 2.0 - 1.0) * 4.0;
            p.q[i * n + j] = v;
            p.q[j * n + i] = v;
        }
    }
    return p;
}

}  // namespace

TEST_CASE("single-variable mapping puts the maximum at z = -1") {
    QuboProblem q;
    q.n = 1;
    q.q = {2.0};
    const IsingModel m = qubo_to_ising(q);
    const int plus[] = {1}, minus[] = {-1};
    CHECK(m.energy(std::span<const int>(minus, 1)) <
          m.energy(std::span<const int>(plus, 1)));  // x=1 <-> z=-1 is the optimum
    CHECK(-m.energy(std::span<const int>(minus, 1)) == doctest::Approx(2.0));
}

TEST_CASE("zero matrix maps to zero fields") {
    QuboProblem q;
    q.n = 3;
    q.q.assign(9, 0.0);
    const IsingModel m = qubo_to_ising(q);
    for (double h : m.h) CHECK(h == 0.0);
    for (double j : m.j) CHECK(j == 0.0);
}

TEST_CASE("ising energy equals minus the qubo objective on all bitstrings") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const QuboProblem q = random_qubo(rng, n);
        const IsingModel m = qubo_to_ising(q);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<std::uint8_t> x(n);
            std::vector<int> z(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = (mask >> i) & 1;
                z[i] = x[i] ? -1 : 1;
            }
            CHECK(m.energy(z) == doctest::Approx(-q.objective(x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("p=1 single-variable circuit structure") {
    QuboProblem q;
    q.n = 1;
    q.q = {2.0};
    const IsingModel m = qubo_to_ising(q);
    const double gammas[] = {0.4}, betas[] = {0.9};
    const Circuit c = qaoa_circuit(m, gammas, betas);
    REQUIRE(c.gates.size() == 3);
    CHECK(c.gates[0].kind == GateKind::H);
    CHECK(c.gates[1].kind == GateKind::Rz);
    CHECK(c.gates[1].angle == doctest::Approx(2.0 * 0.4 * m.h[0]));
    CHECK(c.gates[2].kind == GateKind::Rx);
    CHECK(c.gates[2].angle == doctest::Approx(2.0 * 0.9));
}

TEST_CASE("zero angles give the uniform-state expectation") {
    std::mt19937_64 rng(13);
    const QuboProblem q = random_qubo(rng, 5);
    const double zeros[] = {0.0, 0.0};
    const double expect = qaoa_expectation(q, std::span<const double>(zeros, 1),
                                           std::span<const double>(zeros + 1, 1));
    double mean = 0.0;
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
        std::vector<std::uint8_t> x(5);
        for (std::size_t i = 0; i < 5; ++i) x[i] = (mask >> i) & 1;
        mean += q.objective(x);
    }
    mean /= 32.0;
    CHECK(expect == doctest::Approx(mean).epsilon(1e-10));
}

TEST_CASE("one-qubit expectation matches the closed form") {
    // Q = [c]: diag = {0, c}. After H, Rz(2 gamma h), Rx(2 beta) the
    // probability of |1> is 1/2 (1 - sin(2 beta) sin(c gamma)) for h = -c/2.
    const double c = 1.7, gamma = 0.6, beta = 0.8;
    QuboProblem q;
    q.n = 1;
    q.q = {c};
    const double g[] = {gamma}, b[] = {beta};
    const double expect = qaoa_expectation(q, g, b);
    const double p1 = 0.5 * (1.0 - std::sin(2.0 * beta) * std::sin(c * gamma));
    CHECK(expect == doctest::Approx(c * p1).epsilon(1e-10));
}

TEST_CASE("expectation never exceeds the brute-force optimum") {
    std::mt19937_64 rng(17);
    const QuboProblem q = random_qubo(rng, 6);
    const double best = brute_force(q).energy;
    for (int trial = 0; trial < 20; ++trial) {
        const double g[] = {uniform01(rng) * 3.14, uniform01(rng) * 3.14};
        const double b[] = {uniform01(rng) * 1.57, uniform01(rng) * 1.57};
        CHECK(qaoa_expectation(q, g, b) <= best + 1e-9);
    }
}

TEST_CASE("qaoa finds the identity-qubo optimum") {
    QuboProblem q;
    q.n = 2;
    q.q = {1.0, 0.0, 0.0, 1.0};
    QaoaParams params;
    params.p = 2;
    params.restarts = 5;
    params.seed = 7;
    const QaoaResult r = qaoa_solve(q, params);
    CHECK(r.best_energy == doctest::Approx(2.0));
    CHECK(r.best_x == std::vector<std::uint8_t>{1, 1});
    CHECK_FALSE(r.flat_landscape);
    CHECK(r.total_iterations > 0);
    CHECK(r.trace.size() == static_cast<std::size_t>(r.total_iterations));
}

TEST_CASE("qaoa is deterministic under a fixed seed") {
    std::mt19937_64 rng(19);
    const QuboProblem q = random_qubo(rng, 5);
    QaoaParams params;
    params.p = 2;
    params.restarts = 3;
    params.max_iterations = 60;
    params.seed = 123;
    const QaoaResult a = qaoa_solve(q, params);
    const QaoaResult b = qaoa_solve(q, params);
    CHECK(a.best_x == b.best_x);
    CHECK(a.best_energy == b.best_energy);
    CHECK(a.gammas == b.gammas);
    CHECK(a.trace == b.trace);
}

TEST_CASE("qaoa energy is consistent and bounded by the oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const QuboProblem q = random_qubo(rng, 4 + rng() % 4);
        QaoaParams params;
        params.p = 2;
        params.restarts = 4;
        params.max_iterations = 80;
        params.seed = static_cast<std::uint64_t>(trial);
        const QaoaResult r = qaoa_solve(q, params);
        CHECK(r.best_energy == doctest::Approx(q.objective(r.best_x)));
        CHECK(r.best_energy <= brute_force(q).energy + 1e-9);
    }
}

TEST_CASE("flat landscapes are flagged without optimizer work") {
    QuboProblem q;
    q.n = 3;
    q.q.assign(9, 0.0);
    const QaoaResult r = qaoa_solve(q, {});
    CHECK(r.flat_landscape);
    CHECK(r.best_x == std::vector<std::uint8_t>{0, 0, 0});
    CHECK(r.total_iterations == 0);
}

TEST_CASE("jacobi eigenvalues match known spectra") {
    // [[2,1],[1,2]] has eigenvalues 1 and 3
    const std::vector<double> lambda = symmetric_eigenvalues({2.0, 1.0, 1.0, 2.0}, 2);
    CHECK(lambda[0] == doctest::Approx(1.0));
    CHECK(lambda[1] == doctest::Approx(3.0));

    // trace and Frobenius norm are preserved on a random symmetric matrix
    std::mt19937_64 rng(29);
    const std::size_t n = 6;
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = uniform01(rng) * 2.0 - 1.0;
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    double trace = 0.0, frob = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += a[i * n + i];
    for (double v : a) frob += v * v;
    const std::vector<double> l = symmetric_eigenvalues(a, n);
    double ltrace = 0.0, lsq = 0.0;
    for (double v : l) {
        ltrace += v;
        lsq += v * v;
    }
    CHECK(ltrace == doctest::Approx(trace).epsilon(1e-9));
    CHECK(lsq == doctest::Approx(frob).epsilon(1e-9));
}

TEST_CASE("spectral symmetry diagnostic: symmetric spectrum scores near zero") {
    // [[0,1],[1,0]] has spectrum {-1, 1}: fully symmetric
    QuboProblem sym;
    sym.n = 2;
    sym.q = {0.0, 1.0, 1.0, 0.0};
    QaoaParams params;
    params.restarts = 1;
    params.max_iterations = 10;
    const QaoaResult r = qaoa_solve(sym, params);
    CHECK(r.spectral_symmetry == doctest::Approx(0.0).epsilon(1e-9));

    QuboProblem asym;
    asym.n = 2;
    asym.q = {3.0, 0.0, 0.0, 5.0};
    const QaoaResult r2 = qaoa_solve(asym, params);
    CHECK(r2.spectral_symmetry > 1.0);
}
