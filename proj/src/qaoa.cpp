#include "qprot/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "qprot/rng.hpp"

namespace qprot {

double IsingModel::energy(std::span<const int> z) const {
    if (z.size() != n) throw Error("spin vector length mismatch");
    double acc = offset;
    for (std::size_t i = 0; i < n; ++i) acc += h[i] * z[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) acc += coupling(i, k) * z[i] * z[k];
    return acc;
}

IsingModel qubo_to_ising(const QuboProblem& q) {
    IsingModel m;
    m.n = q.n;
    m.h.assign(q.n, 0.0);
    m.j.assign(q.n * q.n, 0.0);

    // Substituting x_i = (1 - z_i)/2 into Q(x) = sum q_ii x_i +
    // sum_{i<j} (q_ij + q_ji) x_i x_j gives Q = C + sum a_i z_i +
    // sum_{i<j} b_ij z_i z_j; minimizing E = -Q means h = -a, J = -b.
    double c = 0.0;
    std::vector<double> a(q.n, 0.0);
    for (std::size_t i = 0; i < q.n; ++i) {
        c += q.at(i, i) / 2.0;
        a[i] -= q.at(i, i) / 2.0;
        for (std::size_t j = i + 1; j < q.n; ++j) {
            const double w = q.at(i, j) + q.at(j, i);
            c += w / 4.0;
            a[i] -= w / 4.0;
            a[j] -= w / 4.0;
            m.j[i * q.n + j] = -w / 4.0;
        }
    }
    for (std::size_t i = 0; i < q.n; ++i) m.h[i] = -a[i];
    m.offset = -c - q.offset;
    return m;
}

Circuit qaoa_circuit(const IsingModel& m, std::span<const double> gammas,
                     std::span<const double> betas) {
    if (gammas.size() != betas.size()) throw Error("gamma/beta length mismatch");
    const int n = static_cast<int>(m.n);
    Circuit c(n);
    for (int qb = 0; qb < n; ++qb) c.append(Gate::h(qb));
    for (std::size_t layer = 0; layer < gammas.size(); ++layer) {
        const double gamma = gammas[layer];
        for (std::size_t i = 0; i < m.n; ++i) {
            for (std::size_t j = i + 1; j < m.n; ++j) {
                const double jij = m.coupling(i, j);
                if (jij == 0.0) continue;
                const int qi = static_cast<int>(i), qj = static_cast<int>(j);
                c.append(Gate::x(qj).with_controls({{qi, true}}));
                c.append(Gate::rz(qj, 2.0 * gamma * jij));
                c.append(Gate::x(qj).with_controls({{qi, true}}));
            }
        }
        for (std::size_t i = 0; i < m.n; ++i) {
            if (m.h[i] == 0.0) continue;
            c.append(Gate::rz(static_cast<int>(i), 2.0 * gamma * m.h[i]));
        }
        for (int qb = 0; qb < n; ++qb) c.append(Gate::rx(qb, 2.0 * betas[layer]));
    }
    return c;
}

namespace {

std::vector<double> objective_diagonal(const QuboProblem& q) {
    if (q.n > 22) throw CapacityError("QAOA cost diagonal capped at 22 variables");
    const std::size_t dim = std::size_t{1} << q.n;
    std::vector<double> diag(dim, q.offset);
    for (std::size_t k = 0; k < dim; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < q.n; ++i) {
            if (!((k >> i) & 1)) continue;
            const double* row = q.q.data() + i * q.n;
            for (std::size_t j = 0; j < q.n; ++j)
                if ((k >> j) & 1) acc += row[j];
        }
        diag[k] += acc;
    }
    return diag;
}

// Nelder-Mead maximization with a deterministic simplex.
struct SimplexResult {
    std::vector<double> point;
    double value;
    int evaluations;
};

SimplexResult nelder_mead_max(const std::function<double(std::span<const double>)>& f,
                              std::vector<double> start, double step, int max_iterations,
                              std::vector<std::pair<int, double>>* trace, int trace_base) {
    const std::size_t d = start.size();
    struct Vertex {
        std::vector<double> x;
        double v;
    };
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = f(x);
        if (trace) trace->emplace_back(trace_base + evals, v);
        return v;
    };

    std::vector<Vertex> s;
    s.push_back({start, eval(start)});
    for (std::size_t k = 0; k < d; ++k) {
        auto x = start;
        x[k] += step;
        s.push_back({x, eval(x)});
    }
    auto order = [&]() {
        std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
    };
    order();

    while (evals < max_iterations) {
        if (std::abs(s.front().v - s.back().v) <= 1e-9 * (1.0 + std::abs(s.front().v))) break;

        std::vector<double> centroid(d, 0.0);
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t m = 0; m < s.size() - 1; ++m) centroid[k] += s[m].x[k];
            centroid[k] /= static_cast<double>(d);
        }
        auto blend = [&](double t) {
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k) x[k] = centroid[k] + t * (s.back().x[k] - centroid[k]);
            return x;
        };

        auto reflected = blend(-1.0);
        const double rv = eval(reflected);
        if (rv > s.front().v) {
            auto expanded = blend(-2.0);
            const double ev = eval(expanded);
            s.back() = ev > rv ? Vertex{expanded, ev} : Vertex{reflected, rv};
        } else if (rv > s[s.size() - 2].v) {
            s.back() = {reflected, rv};
        } else {
            auto contracted = blend(0.5);
            const double cv = eval(contracted);
            if (cv > s.back().v) {
                s.back() = {contracted, cv};
            } else {
                for (std::size_t m = 1; m < s.size(); ++m) {
                    for (std::size_t k = 0; k < d; ++k)
                        s[m].x[k] = s.front().x[k] + 0.5 * (s[m].x[k] - s.front().x[k]);
                    s[m].v = eval(s[m].x);
                }
            }
        }
        order();
    }
    return {s.front().x, s.front().v, evals};
}

}  // namespace

double qaoa_expectation(const QuboProblem& q, std::span<const double> gammas,
                        std::span<const double> betas) {
    const IsingModel m = qubo_to_ising(q);
    const std::vector<double> diag = objective_diagonal(q);
    const StateVector state =
        run(qaoa_circuit(m, gammas, betas), StateVector::zero(static_cast<int>(q.n)));
    return expectation_diagonal(state, diag);
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n) throw Error("matrix shape mismatch");
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double app = a[p * n + p], aqq = a[q * n + q];
                const double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) lambda[i] = a[i * n + i];
    std::sort(lambda.begin(), lambda.end());
    return lambda;
}

QaoaResult qaoa_solve(const QuboProblem& q, const QaoaParams& params) {
    if (q.n > 16) throw CapacityError("QAOA solver capped at 16 variables");
    if (q.n == 0) throw Error("empty problem");
    if (params.p < 1) throw Error("need at least one layer");
    if (params.shots < 1) throw Error("need at least one shot");

    QaoaResult result;
    {
        const std::vector<double> lambda = symmetric_eigenvalues(q.q, q.n);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            const double s = lambda[i] + lambda[lambda.size() - 1 - i];
            num += s * s;
            den += lambda[i] * lambda[i];
        }
        result.spectral_symmetry = den > 0.0 ? std::sqrt(num) / std::sqrt(den) : 0.0;
    }

    const std::vector<double> diag = objective_diagonal(q);
    const auto [dmin, dmax] = std::minmax_element(diag.begin(), diag.end());
    if (*dmax - *dmin <= 1e-12 * std::max(1.0, std::abs(*dmax))) {
        result.flat_landscape = true;
        result.best_x.assign(q.n, 0);
        result.best_energy = q.objective(result.best_x);
        result.gammas.assign(static_cast<std::size_t>(params.p), 0.0);
        result.betas.assign(static_cast<std::size_t>(params.p), 0.0);
        return result;
    }

    const IsingModel m = qubo_to_ising(q);
    const std::size_t p = static_cast<std::size_t>(params.p);
    auto objective = [&](std::span<const double> angles) {
        const std::span<const double> gammas = angles.subspan(0, p);
        const std::span<const double> betas = angles.subspan(p, p);
        const StateVector state =
            run(qaoa_circuit(m, gammas, betas), StateVector::zero(static_cast<int>(q.n)));
        return expectation_diagonal(state, diag);
    };

    bool have_best = false;
    for (int r = 0; r < params.restarts; ++r) {
        std::mt19937_64 rng(stream_seed(params.seed, static_cast<std::uint64_t>(r)));
        std::vector<double> start(2 * p);
        const double slot = (static_cast<double>(r) + 0.5) / static_cast<double>(params.restarts);
        for (std::size_t k = 0; k < p; ++k) {
            start[k] = (slot + 0.25 * (uniform01(rng) - 0.5)) * std::numbers::pi;            // gamma
            start[p + k] = (slot + 0.25 * (uniform01(rng) - 0.5)) * std::numbers::pi / 2.0;  // beta
        }
        const SimplexResult opt = nelder_mead_max(objective, start, 0.3, params.max_iterations,
                                                  &result.trace, result.total_iterations);
        result.total_iterations += opt.evaluations;

        // measure at the optimized angles and keep the best sampled bitstring
        const std::span<const double> gammas(opt.point.data(), p);
        const std::span<const double> betas(opt.point.data() + p, p);
        const StateVector state =
            run(qaoa_circuit(m, gammas, betas), StateVector::zero(static_cast<int>(q.n)));
        const auto counts = sample(state, params.shots, rng);

        for (const auto& [basis, cnt] : counts) {
            (void)cnt;
            const double e = diag[basis];
            std::vector<std::uint8_t> x(q.n);
            for (std::size_t i = 0; i < q.n; ++i) x[i] = static_cast<std::uint8_t>((basis >> i) & 1);
            const bool better =
                !have_best || e > result.best_energy ||
                (e == result.best_energy && [&] {
                    for (std::size_t i = x.size(); i-- > 0;)
                        if (x[i] != result.best_x[i]) return x[i] < result.best_x[i];
                    return false;
                }());
            if (better) {
                have_best = true;
                result.best_energy = e;
                result.best_x = std::move(x);
                result.gammas.assign(gammas.begin(), gammas.end());
                result.betas.assign(betas.begin(), betas.end());
            }
        }
    }
    return result;
}

void export_trace_csv(const QaoaResult& r, std::ostream& out) {
    out << "iteration,expectation,best_so_far\n";
    char buf[80];
    double best = r.trace.empty() ? 0.0 : r.trace.front().second;
    for (const auto& [it, v] : r.trace) {
        best = std::max(best, v);
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", it, v, best);
        out << buf;
    }
}

}  // namespace qprot
