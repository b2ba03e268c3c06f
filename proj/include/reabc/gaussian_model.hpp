#ifndef REABC_GAUSSIAN_MODEL_HPP
#define REABC_GAUSSIAN_MODEL_HPP

#include "reabc/model.hpp"
#include "reabc/pmmh.hpp"

#include <string>
#include <vector>

namespace reabc {

enum class GaussianDistance { raw_euclidean, sorted_euclidean };

// IID zero-mean Gaussian observations with unknown scale sigma and a flat
// prior sigma ~ Uniform(0, prior_upper).
struct GaussianModelConfig {
    int n_obs = 25;
    double prior_upper = 10.0;
    std::vector<double> y_obs;
    GaussianDistance distance = GaussianDistance::raw_euclidean;
};

// Latent transform: y_i = sigma * Phi^{-1}(x_i), smooth in (sigma, x).
std::vector<double> gaussian_simulate(double sigma, const LatentVector& x);

class GaussianModel : public ModelSpec {
public:
    explicit GaussianModel(GaussianModelConfig cfg);

    int param_dim() const override { return 1; }
    int latent_dim() const override { return cfg_.n_obs; }
    double prior_log_density(const ParamVector& theta) const override;
    ParamVector prior_sample(Rng& rng) const override;
    double phi(const ParamVector& theta, const LatentVector& x) const override;

    const GaussianModelConfig& config() const { return cfg_; }
    double exact_log_likelihood(double sigma) const;

private:
    GaussianModelConfig cfg_;
    std::vector<double> sorted_obs_;
};

struct ExactMhConfig {
    double initial_sigma = 1.0;
    int iterations = 10000;
    double proposal_sd = 0.5;
    double prior_upper = 10.0;
};

// Metropolis-Hastings with the exact likelihood; ground truth for accuracy
// comparisons against the ABC samplers.
Trace exact_gaussian_mh(const std::vector<double>& y_obs, const ExactMhConfig& cfg,
                        std::uint64_t seed);

// One value per line; '#' lines are comments.
std::vector<double> load_column(const std::string& path);
void save_column(const std::string& path, const std::vector<double>& values,
                 const std::string& header_comment);

} // namespace reabc

#endif
