#include "reabc/epidemic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace reabc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

EpidemicVariant epidemic_variant_from_name(const std::string& name) {
    if (name == "markov") return EpidemicVariant::markov;
    if (name == "gamma-infectious") return EpidemicVariant::gamma_infectious;
    if (name == "weibull-pressure") return EpidemicVariant::weibull_pressure;
    if (name == "binned-markov") return EpidemicVariant::binned_markov;
    throw std::invalid_argument("unknown epidemic variant: " + name);
}

std::string epidemic_variant_name(EpidemicVariant v) {
    switch (v) {
    case EpidemicVariant::markov: return "markov";
    case EpidemicVariant::gamma_infectious: return "gamma-infectious";
    case EpidemicVariant::weibull_pressure: return "weibull-pressure";
    case EpidemicVariant::binned_markov: return "binned-markov";
    }
    return "?";
}

int epidemic_param_dim(EpidemicVariant v) {
    switch (v) {
    case EpidemicVariant::markov:
    case EpidemicVariant::binned_markov:
        return 2; // lambda, gamma
    case EpidemicVariant::gamma_infectious:
    case EpidemicVariant::weibull_pressure:
        return 3; // lambda, gamma, shape
    }
    return 0;
}

Distribution infectious_period_distribution(EpidemicVariant v, const ParamVector& theta) {
    switch (v) {
    case EpidemicVariant::markov:
    case EpidemicVariant::binned_markov:
    case EpidemicVariant::weibull_pressure:
        return Distribution::exponential(theta.at(1));
    case EpidemicVariant::gamma_infectious:
        return Distribution::gamma(theta.at(2), theta.at(1));
    }
    throw std::logic_error("unreachable");
}

Distribution pressure_distribution(EpidemicVariant v, const ParamVector& theta) {
    if (v == EpidemicVariant::weibull_pressure) {
        return Distribution::weibull(theta.at(2), 1.0);
    }
    (void)theta;
    return Distribution::exponential(1.0);
}

std::optional<double> basic_reproduction_number(EpidemicVariant v, const ParamVector& theta) {
    switch (v) {
    case EpidemicVariant::markov:
    case EpidemicVariant::binned_markov:
        return theta.at(0) / theta.at(1);
    case EpidemicVariant::gamma_infectious:
        return theta.at(0) * theta.at(2) / theta.at(1);
    case EpidemicVariant::weibull_pressure:
        return std::nullopt; // no definition for non-exponential pressure
    }
    return std::nullopt;
}

double infectious_period_mean(EpidemicVariant v, const ParamVector& theta) {
    return infectious_period_distribution(v, theta).mean();
}

RemovalData load_removal_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_removal_data: cannot open " + path);
    RemovalData data;
    std::string line;
    int lineno = 0;
    bool have_population = false;
    double cumulative = 0.0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::istringstream ss(trimmed);
        double v;
        if (!(ss >> v)) {
            throw std::runtime_error("load_removal_data: " + path + " line " +
                                     std::to_string(lineno) + ": not a number");
        }
        if (!have_population) {
            data.population = static_cast<int>(v);
            if (data.population < 1 || v != std::floor(v)) {
                throw std::runtime_error("load_removal_data: " + path + " line " +
                                         std::to_string(lineno) + ": bad population size");
            }
            have_population = true;
        } else {
            if (v < 0.0) {
                throw std::runtime_error("load_removal_data: " + path + " line " +
                                         std::to_string(lineno) + ": negative inter-removal time");
            }
            cumulative += v;
            data.times.push_back(cumulative);
        }
    }
    if (!have_population || data.times.empty()) {
        throw std::runtime_error("load_removal_data: " + path + ": missing population or removals");
    }
    if (data.times.front() != 0.0) {
        throw std::runtime_error("load_removal_data: " + path +
                                 ": first inter-removal time must be 0");
    }
    if (data.removals() > data.population) {
        throw std::runtime_error("load_removal_data: " + path + ": more removals than population");
    }
    return data;
}

int SimulatedEpidemic::final_size() const {
    int count = 0;
    for (double r : removal_times) {
        if (std::isfinite(r)) ++count;
    }
    return count;
}

std::vector<double> SimulatedEpidemic::times_since_first_removal() const {
    std::vector<double> finite;
    for (double r : removal_times) {
        if (std::isfinite(r)) finite.push_back(r);
    }
    std::sort(finite.begin(), finite.end());
    for (std::size_t i = finite.size(); i-- > 0;) finite[i] -= finite[0];
    return finite;
}

SimulatedEpidemic sellke_simulate(int n, double beta, const std::vector<double>& g,
                                  const std::vector<double>& p) {
    if (n < 1) throw std::invalid_argument("sellke_simulate: population must be >= 1");
    if (static_cast<int>(g.size()) != n || static_cast<int>(p.size()) != n - 1) {
        throw std::invalid_argument("sellke_simulate: need n infectious periods and n-1 thresholds");
    }
    if (beta < 0.0) throw std::invalid_argument("sellke_simulate: beta must be >= 0");

    SimulatedEpidemic out;
    out.removal_times.assign(n, kInf);
    out.removal_times[0] = g[0]; // individual 1 infected at time 0

    // Pressure thresholds sorted ascending; infections consume them in
    // order, so a single cursor replaces the min-search.
    std::vector<std::pair<double, int>> thresholds(n - 1);
    for (int i = 0; i < n - 1; ++i) thresholds[i] = {p[i], i + 1};
    std::sort(thresholds.begin(), thresholds.end());

    std::priority_queue<double, std::vector<double>, std::greater<double>> removals;
    removals.push(out.removal_times[0]);

    int infected = 1;
    std::size_t cursor = 0;
    double t = 0.0;
    double pressure = 0.0;

    while (infected > 0) {
        const double next_threshold = cursor < thresholds.size() ? thresholds[cursor].first : kInf;
        const double next_removal = removals.top();
        const double pressure_at_removal = pressure + beta * infected * (next_removal - t);

        if (next_threshold < pressure_at_removal) {
            // Infection: pressure reaches the threshold before the removal.
            const int who = thresholds[cursor].second;
            const double t_next = t + (next_threshold - pressure) / (beta * infected);
            assert(t_next >= t && next_threshold >= pressure);
            t = t_next;
            pressure = next_threshold;
            ++infected;
            out.removal_times[who] = t + g[who];
            removals.push(out.removal_times[who]);
            ++cursor;
        } else {
            assert(next_removal >= t && pressure_at_removal >= pressure);
            removals.pop();
            --infected;
            t = next_removal;
            pressure = pressure_at_removal;
        }
    }

    out.total_pressure = pressure;
    out.sorted_thresholds.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) out.sorted_thresholds[i] = thresholds[i].first;
    return out;
}

GillespieResult gillespie_simulate(int n, double lambda, double gamma, Rng& rng) {
    if (!(lambda >= 0.0) || !(gamma > 0.0)) {
        throw std::invalid_argument("gillespie_simulate: need lambda >= 0 and gamma > 0");
    }
    int susceptible = n - 1;
    int infected = 1;
    double t = 0.0;
    GillespieResult out;
    while (infected > 0) {
        const double rate_infection = lambda / n * susceptible * infected;
        const double rate_removal = gamma * infected;
        const double total = rate_infection + rate_removal;
        t += -std::log(rng.open01()) / total;
        if (rng.uniform01() * total < rate_infection) {
            --susceptible;
            ++infected;
        } else {
            --infected;
            out.removal_times.push_back(t);
        }
    }
    out.final_size = static_cast<int>(out.removal_times.size());
    return out;
}

double bin_floor5(double s) {
    if (s < 0.0) throw std::invalid_argument("bin_floor5: negative input");
    return 5.0 * std::floor(s / 5.0);
}

double sir_distance(const SimulatedEpidemic& sim, const RemovalData& obs,
                    double k_penalty, bool binned) {
    const std::vector<double> s_sim = sim.times_since_first_removal();
    const int nu = static_cast<int>(s_sim.size());
    const int nu_obs = obs.removals();
    const int n_thresholds = static_cast<int>(sim.sorted_thresholds.size());

    double sumsq = 0.0;
    const int matched = std::min(nu, nu_obs);
    for (int i = 0; i < matched; ++i) {
        const double a = binned ? bin_floor5(obs.times[i]) : obs.times[i];
        const double b = binned ? bin_floor5(s_sim[i]) : s_sim[i];
        sumsq += (a - b) * (a - b);
    }
    double dist = std::sqrt(sumsq);

    // ith removal indexes the ith smallest threshold; the index is clamped
    // because a full-population epidemic has one more removal than there
    // are thresholds. Terms are floored at zero so heavy-tailed thresholds
    // cannot drive the distance negative.
    auto threshold_at = [&](int i) {
        return sim.sorted_thresholds[std::min(i, n_thresholds) - 1];
    };
    for (int i = nu_obs + 1; i <= nu; ++i) { // too many simulated removals
        dist += std::max(0.0, k_penalty + sim.total_pressure - threshold_at(i));
    }
    for (int i = nu + 1; i <= nu_obs; ++i) { // too few simulated removals
        dist += std::max(0.0, k_penalty + threshold_at(i));
    }
    return dist;
}

EpidemicModel::EpidemicModel(EpidemicModelConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.data.population < 2) {
        throw std::invalid_argument("EpidemicModel: population must be >= 2");
    }
    if (cfg_.data.times.empty()) {
        throw std::invalid_argument("EpidemicModel: no observed removals");
    }
    if (!(cfg_.prior_rate > 0.0)) {
        throw std::invalid_argument("EpidemicModel: prior rate must be positive");
    }
}

int EpidemicModel::param_dim() const { return epidemic_param_dim(cfg_.variant); }

double EpidemicModel::prior_log_density(const ParamVector& theta) const {
    if (static_cast<int>(theta.size()) != param_dim()) {
        throw std::invalid_argument("EpidemicModel: parameter dimension mismatch");
    }
    double log_density = 0.0;
    for (double v : theta) {
        if (v <= 0.0) return -kInf;
        log_density += std::log(cfg_.prior_rate) - cfg_.prior_rate * v;
    }
    return log_density;
}

ParamVector EpidemicModel::prior_sample(Rng& rng) const {
    ParamVector theta(param_dim());
    for (double& v : theta) v = exponential_quantile(rng.open01(), cfg_.prior_rate);
    return theta;
}

SimulatedEpidemic EpidemicModel::simulate(const ParamVector& theta, const LatentVector& x) const {
    const int n = cfg_.data.population;
    if (static_cast<int>(x.size()) != latent_dim()) {
        throw std::invalid_argument("EpidemicModel: latent dimension mismatch");
    }
    const Distribution f_inf = infectious_period_distribution(cfg_.variant, theta);
    const Distribution f_press = pressure_distribution(cfg_.variant, theta);

    std::vector<double> g(n), p(n - 1);
    for (int i = 0; i < n; ++i) g[i] = f_inf.quantile(x[i]);
    for (int i = 0; i < n - 1; ++i) p[i] = f_press.quantile(x[n + i]);
    return sellke_simulate(n, theta.at(0) / n, g, p);
}

double EpidemicModel::phi(const ParamVector& theta, const LatentVector& x) const {
    for (double v : theta) {
        if (v <= 0.0) return kInf; // outside prior support: never accepted
    }
    SimulatedEpidemic sim = simulate(theta, x);
    return sir_distance(sim, cfg_.data, cfg_.k_penalty,
                        cfg_.variant == EpidemicVariant::binned_markov);
}

} // namespace reabc
