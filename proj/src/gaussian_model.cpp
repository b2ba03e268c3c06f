#include "reabc/gaussian_model.hpp"
#include "reabc/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace reabc {

std::vector<double> gaussian_simulate(double sigma, const LatentVector& x) {
    if (sigma < 0.0) throw std::invalid_argument("gaussian_simulate: sigma must be >= 0");
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = sigma * normal_quantile(x[i]);
    }
    return y;
}

GaussianModel::GaussianModel(GaussianModelConfig cfg) : cfg_(std::move(cfg)) {
    if (static_cast<int>(cfg_.y_obs.size()) != cfg_.n_obs) {
        throw std::invalid_argument("GaussianModel: y_obs length must equal n_obs");
    }
    if (!(cfg_.prior_upper > 0.0)) {
        throw std::invalid_argument("GaussianModel: prior upper bound must be positive");
    }
    sorted_obs_ = cfg_.y_obs;
    std::sort(sorted_obs_.begin(), sorted_obs_.end());
}

double GaussianModel::prior_log_density(const ParamVector& theta) const {
    double sigma = theta.at(0);
    if (sigma <= 0.0 || sigma >= cfg_.prior_upper) {
        return -std::numeric_limits<double>::infinity();
    }
    return -std::log(cfg_.prior_upper);
}

ParamVector GaussianModel::prior_sample(Rng& rng) const {
    return {cfg_.prior_upper * rng.open01()};
}

double GaussianModel::phi(const ParamVector& theta, const LatentVector& x) const {
    std::vector<double> y = gaussian_simulate(theta.at(0), x);
    double ss = 0.0;
    if (cfg_.distance == GaussianDistance::sorted_euclidean) {
        std::sort(y.begin(), y.end());
        for (std::size_t i = 0; i < y.size(); ++i) {
            double d = y[i] - sorted_obs_[i];
            ss += d * d;
        }
    } else {
        for (std::size_t i = 0; i < y.size(); ++i) {
            double d = y[i] - cfg_.y_obs[i];
            ss += d * d;
        }
    }
    return std::sqrt(ss);
}

double GaussianModel::exact_log_likelihood(double sigma) const {
    if (sigma <= 0.0) return -std::numeric_limits<double>::infinity();
    double ss = 0.0;
    for (double y : cfg_.y_obs) ss += y * y;
    const double n = static_cast<double>(cfg_.n_obs);
    return -n * std::log(sigma) - ss / (2.0 * sigma * sigma) -
           0.5 * n * std::log(2.0 * M_PI);
}

Trace exact_gaussian_mh(const std::vector<double>& y_obs, const ExactMhConfig& cfg,
                        std::uint64_t seed) {
    GaussianModelConfig mc;
    mc.n_obs = static_cast<int>(y_obs.size());
    mc.prior_upper = cfg.prior_upper;
    mc.y_obs = y_obs;
    GaussianModel model(mc);

    ProposalConfig proposal(Matrix::diagonal({cfg.proposal_sd * cfg.proposal_sd}));
    auto estimator = [&](const ParamVector& theta, std::uint64_t, std::optional<double>) {
        SmcResult res;
        res.estimate = LikelihoodEstimate::from_log(model.exact_log_likelihood(theta.at(0)));
        res.stages_completed = 0;
        return res;
    };
    return pseudo_marginal_chain(model, {cfg.initial_sigma}, cfg.iterations, proposal,
                                 /*early_termination=*/false, 0, estimator, seed);
}

std::vector<double> load_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_column: cannot open " + path);
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::istringstream ss(trimmed);
        double v;
        if (!(ss >> v)) {
            throw std::runtime_error("load_column: " + path + " line " +
                                     std::to_string(lineno) + ": not a number");
        }
        values.push_back(v);
    }
    return values;
}

void save_column(const std::string& path, const std::vector<double>& values,
                 const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_column: cannot open " + path);
    if (!header_comment.empty()) {
        std::istringstream ss(header_comment);
        std::string line;
        while (std::getline(ss, line)) out << "# " << line << "\n";
    }
    out.precision(17);
    for (double v : values) out << v << "\n";
}

} // namespace reabc
