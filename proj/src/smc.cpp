#include "reabc/smc.hpp"
#include "reabc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace reabc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stream coordinates: stage 0 is initialisation, stage t >= 1 covers the
// resample draw (component 0) and the per-particle moves (component 1+i).
// Independent of worker count by construction.
struct SmcState {
    std::vector<LatentVector> particles;
    std::vector<double> phis;
    long long simulator_calls = 0;

    void init(const ModelSpec& model, const ParamVector& theta,
              int n, int workers, std::uint64_t seed) {
        particles.assign(n, {});
        phis.assign(n, 0.0);
        std::atomic<long long> calls{0};
        parallel_for(n, workers, [&](int i) {
            Rng rng = make_stream(seed, 0, static_cast<std::uint64_t>(i) + 1);
            particles[i] = sample_latents(model.latent_dim(), rng);
            phis[i] = model.phi(theta, particles[i]);
            calls.fetch_add(1, std::memory_order_relaxed);
        });
        simulator_calls += calls.load();
    }

    std::vector<int> accepted_at(double epsilon) const {
        std::vector<int> idx;
        for (int i = 0; i < static_cast<int>(particles.size()); ++i) {
            if (phis[i] <= epsilon) idx.push_back(i);
        }
        return idx;
    }

    // Resample from the accepted set, then move every particle with slice
    // updates targeting the uniform distribution on {phi <= epsilon}.
    // Returns the largest accepted |z| over all slice calls of this stage.
    double resample_and_move(const ModelSpec& model, const ParamVector& theta,
                             const std::vector<int>& accepted, double epsilon,
                             double width, const SmcConfig& cfg,
                             std::uint64_t seed, int stage) {
        const int n = static_cast<int>(particles.size());
        Rng resample_rng = make_stream(seed, static_cast<std::uint64_t>(stage), 0);
        std::vector<int> parents = resample_indices(accepted, n, resample_rng);

        std::vector<LatentVector> moved(n);
        std::vector<double> moved_phi(n, 0.0);
        std::vector<double> max_abs_z(n, 0.0);
        std::atomic<long long> calls{0};

        SliceConfig slice_cfg;
        slice_cfg.width = width;
        slice_cfg.max_iterations = cfg.slice_max_iterations;

        parallel_for(n, cfg.workers, [&](int i) {
            Rng rng = make_stream(seed, static_cast<std::uint64_t>(stage),
                                  static_cast<std::uint64_t>(i) + 1);
            LatentVector x = particles[parents[i]];
            double phi_x = phis[parents[i]];
            long long local_calls = 0;
            for (int k = 0; k < cfg.slice_repeats; ++k) {
                SliceOutcome out = slice_update(
                    x, [&](const LatentVector& p) { return model.phi(theta, p); },
                    epsilon, slice_cfg, rng, phi_x);
                local_calls += out.iterations_used;
                max_abs_z[i] = std::max(max_abs_z[i], out.final_abs_z);
                x = std::move(out.new_point);
                phi_x = out.phi_value;
            }
            moved[i] = std::move(x);
            moved_phi[i] = phi_x;
            calls.fetch_add(local_calls, std::memory_order_relaxed);
        });

        particles = std::move(moved);
        phis = std::move(moved_phi);
        simulator_calls += calls.load();
        return *std::max_element(max_abs_z.begin(), max_abs_z.end());
    }
};

} // namespace

ThresholdSchedule::ThresholdSchedule(std::vector<double> eps) : epsilons(std::move(eps)) {
    if (epsilons.empty()) throw std::invalid_argument("ThresholdSchedule: empty");
    for (std::size_t i = 1; i < epsilons.size(); ++i) {
        if (!(epsilons[i] < epsilons[i - 1])) {
            throw std::invalid_argument("ThresholdSchedule: thresholds must be strictly decreasing");
        }
    }
    if (!(epsilons.back() >= 0.0)) {
        throw std::invalid_argument("ThresholdSchedule: target must be nonnegative");
    }
}

void SmcConfig::validate(bool adaptive) const {
    if (particles < 2) throw std::invalid_argument("SmcConfig: need at least 2 particles");
    if (adaptive && (n_accept < 1 || n_accept > particles)) {
        throw std::invalid_argument("SmcConfig: require 1 <= n_accept <= particles");
    }
    if (adaptive && !(epsilon >= 0.0)) {
        throw std::invalid_argument("SmcConfig: target epsilon must be nonnegative");
    }
    if (slice_repeats < 1) throw std::invalid_argument("SmcConfig: slice_repeats must be >= 1");
    if (workers < 1) throw std::invalid_argument("SmcConfig: workers must be >= 1");
}

std::vector<int> resample_indices(const std::vector<int>& accepted, int n, Rng& rng) {
    if (accepted.empty()) throw std::invalid_argument("resample_indices: empty accepted set");
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = accepted[rng.below(accepted.size())];
    }
    return out;
}

double adaptive_threshold(std::vector<double> phis, int n_accept, double target) {
    if (n_accept < 1 || n_accept > static_cast<int>(phis.size())) {
        throw std::invalid_argument("adaptive_threshold: n_accept out of range");
    }
    std::nth_element(phis.begin(), phis.begin() + (n_accept - 1), phis.end());
    return std::max(phis[n_accept - 1], target);
}

SmcResult fixed_re_smc(const ModelSpec& model, const ParamVector& theta,
                       const ThresholdSchedule& schedule, const SmcConfig& cfg,
                       std::optional<double> log_bound, std::uint64_t seed) {
    cfg.validate(false);
    if (schedule.epsilons.empty()) throw std::invalid_argument("fixed_re_smc: empty schedule");

    auto start = Clock::now();
    SmcResult result;
    SmcState state;
    state.init(model, theta, cfg.particles, cfg.workers, seed);

    const int total_stages = static_cast<int>(schedule.stages());
    double log_product = 0.0;
    double width = 1.0; // w = 1 in the first SMC iteration

    for (int t = 1; t <= total_stages; ++t) {
        const double eps_t = schedule.epsilons[t - 1];
        std::vector<int> accepted = state.accepted_at(eps_t);
        const double p_t = static_cast<double>(accepted.size()) / cfg.particles;

        result.stage_fractions.push_back(p_t);
        result.epsilons_used.push_back(eps_t);
        result.stages_completed = t;

        if (accepted.empty()) {
            result.estimate = LikelihoodEstimate::zero();
            break;
        }
        log_product += std::log(p_t);

        if (t == total_stages) {
            result.estimate = LikelihoodEstimate::from_log(log_product);
            break; // last stage: no resample/move needed for the estimate
        }

        // The running product bounds the final estimate from above, so the
        // run can stop as soon as it crosses the rejection bound.
        if (log_bound && log_product < *log_bound) {
            result.terminated_early = true;
            result.estimate = LikelihoodEstimate::from_log(log_product);
            break;
        }

        double zbar = state.resample_and_move(model, theta, accepted, eps_t,
                                              width, cfg, seed, t);
        width = adapt_width(zbar);
    }

    result.simulator_calls = state.simulator_calls;
    result.wall_time_s = seconds_since(start);
    return result;
}

namespace {

// Shared core of the adaptive algorithm; `budget_s`, when set, stops the
// loop at the first stage boundary past the budget and reports the
// threshold reached via `stopped_epsilon`.
SmcResult adapt_re_smc_impl(const ModelSpec& model, const ParamVector& theta,
                            const SmcConfig& cfg, std::optional<double> log_bound,
                            std::uint64_t seed, std::optional<double> budget_s,
                            double* stopped_epsilon) {
    cfg.validate(true);

    auto start = Clock::now();
    SmcResult result;
    SmcState state;
    state.init(model, theta, cfg.particles, cfg.workers, seed);

    double log_product = 0.0;
    double width = 1.0;

    for (int t = 1;; ++t) {
        if (t > cfg.max_stages) {
            throw std::runtime_error(
                "adapt_re_smc: exceeded max_stages; thresholds are not reaching the "
                "target (possible ties in the distance or an unreachable epsilon)");
        }

        double eps_t = adaptive_threshold(state.phis, cfg.n_accept, cfg.epsilon);

        std::vector<int> accepted = state.accepted_at(eps_t);
        const double p_t = static_cast<double>(accepted.size()) / cfg.particles;

        result.stage_fractions.push_back(p_t);
        result.epsilons_used.push_back(eps_t);
        result.stages_completed = t;
        log_product += std::log(p_t);

        if (stopped_epsilon) *stopped_epsilon = eps_t;

        if (eps_t == cfg.epsilon) {
            result.estimate = LikelihoodEstimate::from_log(log_product);
            break; // target reached; final stage skips resample/move
        }
        if (log_bound && log_product < *log_bound) {
            result.terminated_early = true;
            result.estimate = LikelihoodEstimate::from_log(log_product);
            break;
        }
        if (budget_s && seconds_since(start) >= *budget_s) {
            result.estimate = LikelihoodEstimate::from_log(log_product);
            break;
        }

        double zbar = state.resample_and_move(model, theta, accepted, eps_t,
                                              width, cfg, seed, t);
        width = adapt_width(zbar);
    }

    result.simulator_calls = state.simulator_calls;
    result.wall_time_s = seconds_since(start);
    return result;
}

} // namespace

SmcResult adapt_re_smc(const ModelSpec& model, const ParamVector& theta,
                       const SmcConfig& cfg, std::optional<double> log_bound,
                       std::uint64_t seed) {
    return adapt_re_smc_impl(model, theta, cfg, log_bound, seed, std::nullopt, nullptr);
}

double adapt_re_smc_until(const ModelSpec& model, const ParamVector& theta,
                          const SmcConfig& cfg, double budget_s, std::uint64_t seed) {
    if (!(budget_s >= 0.0)) throw std::invalid_argument("adapt_re_smc_until: negative budget");
    double eps = std::numeric_limits<double>::infinity();
    adapt_re_smc_impl(model, theta, cfg, std::nullopt, seed, budget_s, &eps);
    return eps;
}

ThresholdSchedule schedule_from_pilot(const SmcResult& adaptive_result) {
    if (adaptive_result.terminated_early) {
        throw std::invalid_argument("schedule_from_pilot: pilot run terminated early");
    }
    if (adaptive_result.epsilons_used.empty()) {
        throw std::invalid_argument("schedule_from_pilot: pilot run recorded no thresholds");
    }
    std::vector<double> eps;
    for (double e : adaptive_result.epsilons_used) {
        if (eps.empty() || e != eps.back()) eps.push_back(e);
    }
    return ThresholdSchedule(std::move(eps));
}

} // namespace reabc
