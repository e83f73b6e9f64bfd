#include "bstop/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "bstop/errors.hpp"
#include "bstop/solver.hpp"

namespace bstop {

OracleResult dp_solve(const StoppingProblem& problem) {
    const std::size_t n = problem.trials();
    OracleResult res;
    res.continuation.assign(n + 1, 0.0);
    res.continuation[n] = problem.f.terminal;
    for (std::size_t k = n; k >= 1; --k) {
        const double p = problem.profile.p(k);
        const double c = res.continuation[k];
        res.continuation[k - 1] = p * std::max(problem.f.values[k], c) + (1.0 - p) * c;
    }
    res.value = res.continuation[0];
    for (std::size_t k = 1; k <= n; ++k) {
        const double c = res.continuation[k];
        if (problem.f.values[k] >= c - kTieRelTol * std::max(1.0, std::fabs(c)))
            res.stop_set.push_back(k);
    }
    return res;
}

ThresholdSweep threshold_sweep(const StoppingProblem& problem) {
    const std::size_t n = problem.trials();
    ThresholdSweep sweep;
    sweep.values.assign(n + 1, 0.0);

    for (std::size_t t = 1; t <= n + 1; ++t) {
        double v = problem.f.terminal;
        for (std::size_t k = n; k >= 1; --k) {
            const double p = problem.profile.p(k);
            v = p * (k >= t ? problem.f.values[k] : v) + (1.0 - p) * v;
        }
        sweep.values[t - 1] = v;
    }

    sweep.best_value = *std::max_element(sweep.values.begin(), sweep.values.end());
    const double slack = 1e-12 * std::max(1.0, std::fabs(sweep.best_value));
    for (std::size_t t = 1; t <= n + 1; ++t)
        if (sweep.values[t - 1] >= sweep.best_value - slack) sweep.best_thresholds.push_back(t);
    return sweep;
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t replicate, std::uint64_t trial) {
    std::uint64_t z = seed;
    z += 0x9e3779b97f4a7c15ULL * (replicate + 1);
    z += 0xd1b54a32d192ed03ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t hash) {
    return static_cast<double>(hash >> 11) * 0x1.0p-53;
}

SimEstimate simulate(const StoppingProblem& problem, std::span<const std::size_t> stop_set,
                     std::uint64_t replicates, std::uint64_t seed) {
    if (replicates < 1) raise(errc::param_out_of_range, "replicates must be >= 1");

    // only trials inside the stop set can end the game; each draw is keyed
    // independently, so skipping the others leaves outcomes unchanged
    std::vector<std::size_t> sorted(stop_set.begin(), stop_set.end());
    std::sort(sorted.begin(), sorted.end());

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t rep = 0; rep < replicates; ++rep) {
        double payoff = problem.f.terminal;
        for (std::size_t k : sorted) {
            const double u = uniform01(counter_hash(seed, rep, k));
            if (u < problem.profile.p(k)) {
                payoff = problem.f.values[k];
                break;
            }
        }
        sum += payoff;
        sum_sq += payoff * payoff;
    }

    SimEstimate est;
    est.replicates = replicates;
    est.seed = seed;
    est.mean = sum / static_cast<double>(replicates);
    if (replicates > 1) {
        const double nrep = static_cast<double>(replicates);
        const double var = std::max(0.0, (sum_sq - nrep * est.mean * est.mean) / (nrep - 1.0));
        est.std_error = std::sqrt(var / nrep);
    }
    return est;
}

}  // namespace bstop
