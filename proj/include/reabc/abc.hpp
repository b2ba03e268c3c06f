#ifndef REABC_ABC_HPP
#define REABC_ABC_HPP

#include "reabc/model.hpp"
#include "reabc/pmmh.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace reabc {

struct RejectionOptions {
    double epsilon = 0.0;
    std::optional<long long> target_accepts; // stop after this many acceptances
    long long max_attempts = 1000000;
    int workers = 1;
};

struct RejectionResult {
    std::vector<ParamVector> accepted_params;
    long long attempts = 0;
    double wall_time_s = 0.0;

    double acceptance_rate() const {
        return attempts == 0 ? 0.0
                             : static_cast<double>(accepted_params.size()) / attempts;
    }
};

// ABC rejection sampling: draw theta from the prior and latents uniformly,
// keep theta whenever phi(theta, x) <= epsilon. Accepted draws are IID from
// the ABC posterior. Exhausting max_attempts with no acceptance returns an
// empty result rather than failing.
RejectionResult abc_rejection(const ModelSpec& model, const RejectionOptions& opts,
                              std::uint64_t seed);

struct AbcMcmcConfig {
    std::optional<ParamVector> initial_theta; // absent: found by rejection sampling
    int iterations = 1000;
    std::optional<ProposalConfig> proposal;
    double epsilon = 0.0;
    int init_retries = 100;
    long long init_max_attempts = 1000000;
};

// Marjoram-style ABC-MCMC: one simulation per proposal, accepted iff it
// matches within epsilon and the prior/proposal MH test passes. Equivalent
// to the pseudo-marginal chain with a one-sample indicator estimate of the
// ABC likelihood.
Trace abc_mcmc(const ModelSpec& model, const AbcMcmcConfig& cfg, std::uint64_t seed);

} // namespace reabc

#endif
