#ifndef REABC_TESTS_TOY_MODELS_HPP
#define REABC_TESTS_TOY_MODELS_HPP

#include "reabc/model.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace reabc::testing {

// Model with a closed-form distance map and independent uniform priors on
// each parameter; the workhorse for oracle tests.
class ToyModel : public ModelSpec {
public:
    int params = 1;
    int latents = 1;
    double prior_lo = 0.0;
    double prior_hi = 1.0;
    std::function<double(const ParamVector&, const LatentVector&)> distance;

    ToyModel(int param_dim, int latent_dim,
             std::function<double(const ParamVector&, const LatentVector&)> fn)
        : params(param_dim), latents(latent_dim), distance(std::move(fn)) {}

    int param_dim() const override { return params; }
    int latent_dim() const override { return latents; }

    double prior_log_density(const ParamVector& theta) const override {
        for (double v : theta) {
            if (v < prior_lo || v > prior_hi) {
                return -std::numeric_limits<double>::infinity();
            }
        }
        return -params * std::log(prior_hi - prior_lo);
    }

    ParamVector prior_sample(Rng& rng) const override {
        ParamVector theta(params);
        for (double& v : theta) v = rng.uniform(prior_lo, prior_hi);
        return theta;
    }

    double phi(const ParamVector& theta, const LatentVector& x) const override {
        return distance(theta, x);
    }
};

// phi(x) = x_1, independent of theta: Pr(phi <= eps) = eps.
inline ToyModel first_coordinate_model(int latent_dim = 1) {
    return ToyModel(1, latent_dim,
                    [](const ParamVector&, const LatentVector& x) { return x[0]; });
}

// phi(x) = max_i |x_i - 0.5|: Pr(phi <= eps) = (2 eps)^m.
inline ToyModel centered_box_model(int latent_dim) {
    return ToyModel(1, latent_dim, [](const ParamVector&, const LatentVector& x) {
        double d = 0.0;
        for (double xi : x) d = std::max(d, std::fabs(xi - 0.5));
        return d;
    });
}

} // namespace reabc::testing

#endif
