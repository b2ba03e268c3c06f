#include "reabc/abc.hpp"
#include "reabc/parallel.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace reabc {

RejectionResult abc_rejection(const ModelSpec& model, const RejectionOptions& opts,
                              std::uint64_t seed) {
    if (!(opts.epsilon >= 0.0)) throw std::invalid_argument("abc_rejection: epsilon must be >= 0");
    if (opts.max_attempts < 1) throw std::invalid_argument("abc_rejection: max_attempts must be >= 1");

    auto start = std::chrono::steady_clock::now();
    RejectionResult result;

    // Attempts run in blocks; each attempt has its own stream so results do
    // not depend on the worker count or the block size.
    const long long block = opts.workers > 1 ? 4096 : 256;
    long long next_attempt = 0;
    while (next_attempt < opts.max_attempts) {
        long long n = std::min<long long>(block, opts.max_attempts - next_attempt);
        std::vector<ParamVector> hits(static_cast<std::size_t>(n));
        std::vector<char> hit(static_cast<std::size_t>(n), 0);
        parallel_for(static_cast<int>(n), opts.workers, [&](int i) {
            Rng rng = make_stream(seed, static_cast<std::uint64_t>(next_attempt + i));
            ParamVector theta = model.prior_sample(rng);
            LatentVector x = sample_latents(model.latent_dim(), rng);
            if (model.phi(theta, x) <= opts.epsilon) {
                hits[i] = std::move(theta);
                hit[i] = 1;
            }
        });
        for (long long i = 0; i < n; ++i) {
            ++result.attempts;
            if (hit[static_cast<std::size_t>(i)]) {
                result.accepted_params.push_back(std::move(hits[static_cast<std::size_t>(i)]));
                if (opts.target_accepts &&
                    static_cast<long long>(result.accepted_params.size()) >= *opts.target_accepts) {
                    result.wall_time_s =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                    return result;
                }
            }
        }
        next_attempt += n;
    }
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

Trace abc_mcmc(const ModelSpec& model, const AbcMcmcConfig& cfg, std::uint64_t seed) {
    if (!cfg.proposal) throw std::invalid_argument("abc_mcmc: proposal covariance required");
    if (!(cfg.epsilon >= 0.0)) throw std::invalid_argument("abc_mcmc: epsilon must be >= 0");

    ParamVector initial;
    if (cfg.initial_theta) {
        initial = *cfg.initial_theta;
    } else {
        // The chain needs a currently-accepted state; find one by rejection.
        RejectionOptions ropts;
        ropts.epsilon = cfg.epsilon;
        ropts.target_accepts = 1;
        ropts.max_attempts = cfg.init_max_attempts;
        RejectionResult r = abc_rejection(model, ropts, derive_seed(seed, 0xabc));
        if (r.accepted_params.empty()) {
            throw std::runtime_error("abc_mcmc: rejection sampling found no accepted "
                                     "initial state within the attempt budget");
        }
        initial = r.accepted_params.front();
    }

    // One-sample indicator likelihood estimate: simulate a dataset and
    // report 1 if it matches within epsilon, else 0.
    auto estimator = [&](const ParamVector& theta, std::uint64_t est_seed,
                         std::optional<double>) {
        Rng rng(est_seed);
        LatentVector x = sample_latents(model.latent_dim(), rng);
        bool ok = model.phi(theta, x) <= cfg.epsilon;
        SmcResult res;
        res.estimate = ok ? LikelihoodEstimate::from_log(0.0) : LikelihoodEstimate::zero();
        res.stage_fractions = {ok ? 1.0 : 0.0};
        res.stages_completed = 1;
        res.simulator_calls = 1;
        return res;
    };

    return pseudo_marginal_chain(model, initial, cfg.iterations, *cfg.proposal,
                                 /*early_termination=*/false, cfg.init_retries, estimator, seed);
}

} // namespace reabc
