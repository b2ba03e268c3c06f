#ifndef REABC_EPIDEMIC_HPP
#define REABC_EPIDEMIC_HPP

#include "reabc/distributions.hpp"
#include "reabc/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reabc {

// SIR model variants. Parameters are (lambda, gamma) for markov/binned and
// (lambda, gamma, shape) for the gamma-infectious and weibull-pressure
// models; shape feeds the Gamma infectious period or the Weibull pressure
// thresholds respectively.
enum class EpidemicVariant { markov, gamma_infectious, weibull_pressure, binned_markov };

EpidemicVariant epidemic_variant_from_name(const std::string& name);
std::string epidemic_variant_name(EpidemicVariant v);
int epidemic_param_dim(EpidemicVariant v);

Distribution infectious_period_distribution(EpidemicVariant v, const ParamVector& theta);
Distribution pressure_distribution(EpidemicVariant v, const ParamVector& theta);

// lambda / gamma for the Markov models, lambda * E(F_inf) when pressure
// thresholds are Exp(1); no definition exists for Weibull pressure.
std::optional<double> basic_reproduction_number(EpidemicVariant v, const ParamVector& theta);
double infectious_period_mean(EpidemicVariant v, const ParamVector& theta);

// Observed removal data: population size and times since the first removal
// (ascending, first entry 0).
struct RemovalData {
    int population = 0;
    std::vector<double> times; // s_(1) = 0 <= s_(2) <= ...

    int removals() const { return static_cast<int>(times.size()); }
};

// File format: first non-comment line is the population size, the remaining
// lines are inter-removal times in days (first one 0 for the first removal).
RemovalData load_removal_data(const std::string& path);

struct SimulatedEpidemic {
    std::vector<double> removal_times;     // +inf = never infected
    std::vector<double> sorted_thresholds; // all n-1 pressure thresholds, ascending
    double total_pressure = 0.0;           // beta * sum of removed infectious periods

    int final_size() const;
    std::vector<double> times_since_first_removal() const;
};

// Sellke construction: individual 1 is infected at time 0 and every other
// individual becomes infected when the accumulated infection pressure
// crosses their personal threshold. g holds the n infectious periods and
// p the n-1 pressure thresholds of individuals 2..n.
SimulatedEpidemic sellke_simulate(int n, double beta, const std::vector<double>& g,
                                  const std::vector<double>& p);

struct GillespieResult {
    int final_size = 0;
    std::vector<double> removal_times; // of removed individuals, ascending
};

// Event-driven exact simulation of the Markov SIR model; independent
// check of the Sellke construction.
GillespieResult gillespie_simulate(int n, double lambda, double gamma, Rng& rng);

// Greatest multiple of 5 at or below s; day binning for coarse removal data.
double bin_floor5(double s);

// Composite removal-time distance: Euclidean on the matched
// times-since-first-removal, plus per-removal penalties when the simulated
// and observed removal counts differ. The pressure terms push the simulated
// pressures toward producing the observed count. `binned` replaces matched
// times by bin_floor5 of themselves.
double sir_distance(const SimulatedEpidemic& sim, const RemovalData& obs,
                    double k_penalty, bool binned = false);

struct EpidemicModelConfig {
    EpidemicVariant variant = EpidemicVariant::markov;
    RemovalData data;
    double k_penalty = 1000.0;
    double prior_rate = 0.1; // independent exponential priors on all parameters
};

// ModelSpec over the Sellke simulator. Latent layout: coordinates
// [0, n) are infectious-period quantiles for individuals 1..n and
// [n, 2n-1) are pressure-threshold quantiles for individuals 2..n.
class EpidemicModel : public ModelSpec {
public:
    explicit EpidemicModel(EpidemicModelConfig cfg);

    int param_dim() const override;
    int latent_dim() const override { return 2 * cfg_.data.population - 1; }
    double prior_log_density(const ParamVector& theta) const override;
    ParamVector prior_sample(Rng& rng) const override;
    double phi(const ParamVector& theta, const LatentVector& x) const override;

    SimulatedEpidemic simulate(const ParamVector& theta, const LatentVector& x) const;
    const EpidemicModelConfig& config() const { return cfg_; }

private:
    EpidemicModelConfig cfg_;
};

} // namespace reabc

#endif
