#ifndef REABC_MODEL_HPP
#define REABC_MODEL_HPP

#include "reabc/rng.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace reabc {

// Parameter vector theta.
using ParamVector = std::vector<double>;

// Latent vector x in [0,1]^m. All simulation randomness enters through x,
// so the simulator output y(theta, x) is deterministic.
using LatentVector = std::vector<double>;

struct LikelihoodEstimate {
    double value = 0.0;
    double log_value = -std::numeric_limits<double>::infinity();

    static LikelihoodEstimate from_log(double log_v) {
        LikelihoodEstimate e;
        e.log_value = log_v;
        e.value = std::exp(log_v);
        return e;
    }
    static LikelihoodEstimate zero() { return LikelihoodEstimate{}; }
    bool is_zero() const { return !(log_value > -std::numeric_limits<double>::infinity()); }
};

// Model abstraction shared by all samplers: a prior over parameters, a
// deterministic simulator driven by uniform latents, and the distance map
// phi(theta, x) = d(y(theta, x), y_obs).
//
// Implementations must be callable from multiple threads at once: phi takes
// no interior mutable state, and all randomness comes in through x or an
// explicitly passed rng.
class ModelSpec {
public:
    virtual ~ModelSpec() = default;

    virtual int param_dim() const = 0;
    virtual int latent_dim() const = 0;

    // Log prior density; -infinity outside the support.
    virtual double prior_log_density(const ParamVector& theta) const = 0;
    virtual ParamVector prior_sample(Rng& rng) const = 0;

    // Distance to observations; deterministic in (theta, x); +infinity is
    // allowed and means "never accepted at any threshold".
    virtual double phi(const ParamVector& theta, const LatentVector& x) const = 0;
};

inline LatentVector sample_latents(int m, Rng& rng) {
    LatentVector x(m);
    for (int i = 0; i < m; ++i) x[i] = rng.uniform01();
    return x;
}

} // namespace reabc

#endif
