#include "reabc/diagnostics.hpp"
#include "reabc/distributions.hpp"
#include "reabc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace reabc {

EssReport ess_imse(const std::vector<double>& chain) {
    const int m = static_cast<int>(chain.size());
    if (m < 10) throw std::invalid_argument("ess_imse: chain too short");

    EssReport report;
    report.chain_length = m;

    const double mu = mean(chain);
    auto autocov = [&](int lag) {
        double s = 0.0;
        for (int i = 0; i + lag < m; ++i) s += (chain[i] - mu) * (chain[i + lag] - mu);
        return s / m;
    };

    const double var0 = autocov(0);
    if (var0 <= 0.0) {
        report.ess = 1.0;
        report.degenerate = true;
        return report;
    }

    // Pair sums Gamma_j = gamma_{2j} + gamma_{2j+1}: positive for a
    // reversible chain, so truncate at the first nonpositive one and make
    // the kept sequence nonincreasing.
    double pair_total = 0.0;
    double previous_pair = std::numeric_limits<double>::infinity();
    for (int j = 0; 2 * j + 1 < m; ++j) {
        double pair = autocov(2 * j) + autocov(2 * j + 1);
        if (pair <= 0.0) break;
        pair = std::min(pair, previous_pair);
        previous_pair = pair;
        pair_total += pair;
        report.pair_sums_used = j + 1;
    }

    const double iact = std::max(1.0, 2.0 * pair_total / var0 - 1.0);
    report.ess = m / iact;
    return report;
}

double rmse(const std::vector<double>& samples, double truth) {
    if (samples.empty()) throw std::invalid_argument("rmse: empty sample");
    double s = 0.0;
    for (double x : samples) s += (x - truth) * (x - truth);
    return std::sqrt(s / static_cast<double>(samples.size()));
}

double QqData::correlation() const {
    return pearson_correlation(theoretical, empirical);
}

QqData loglik_qq(const std::vector<double>& log_estimates) {
    QqData qq;
    std::vector<double> finite;
    for (double v : log_estimates) {
        if (std::isfinite(v)) {
            finite.push_back(v);
        } else {
            ++qq.zero_estimates;
        }
    }
    if (finite.size() < 30) {
        throw std::invalid_argument("loglik_qq: need at least 30 finite log estimates");
    }
    std::sort(finite.begin(), finite.end());
    const double mu = mean(finite);
    const double sd = sample_sd(finite);
    if (sd == 0.0) throw std::invalid_argument("loglik_qq: degenerate (constant) estimates");

    const double n = static_cast<double>(finite.size());
    qq.theoretical.reserve(finite.size());
    qq.empirical.reserve(finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) {
        qq.theoretical.push_back(normal_quantile((static_cast<double>(i) + 0.5) / n));
        qq.empirical.push_back((finite[i] - mu) / sd);
    }
    return qq;
}

std::string cost_method_name(CostMethod m) {
    switch (m) {
    case CostMethod::abc_reject: return "abc-reject";
    case CostMethod::abc_mcmc: return "abc-mcmc";
    case CostMethod::re_abc: return "re-abc";
    }
    return "?";
}

namespace {

CostScanRow scan_rejection(const ModelSpec& model, const CostScanConfig& cfg, double epsilon,
                           std::uint64_t seed) {
    CostScanRow row;
    row.epsilon = epsilon;
    row.method = cost_method_name(CostMethod::abc_reject);
    RejectionOptions opts;
    opts.epsilon = epsilon;
    opts.target_accepts = cfg.rejection_target_accepts;
    opts.max_attempts = cfg.rejection_max_attempts;
    opts.workers = cfg.smc.workers;
    RejectionResult res = abc_rejection(model, opts, seed);
    row.simulator_calls = res.attempts;
    row.wall_time_s = res.wall_time_s;
    row.ess_or_accepts = static_cast<double>(res.accepted_params.size());
    if (res.accepted_params.empty()) {
        row.degenerate = true;
    } else {
        row.time_per_effective_sample = res.wall_time_s / row.ess_or_accepts;
    }
    return row;
}

CostScanRow scan_chain(const Trace& trace, double epsilon, CostMethod method) {
    CostScanRow row;
    row.epsilon = epsilon;
    row.method = cost_method_name(method);
    row.simulator_calls = trace.total_sim_calls();
    row.wall_time_s = trace.total_smc_time_s();
    EssReport ess = ess_imse(trace.component(0));
    if (ess.degenerate) {
        row.degenerate = true;
        row.ess_or_accepts = 0.0;
    } else {
        row.ess_or_accepts = ess.ess;
        row.time_per_effective_sample = row.wall_time_s / ess.ess;
    }
    return row;
}

} // namespace

std::vector<CostScanRow> cost_scan(const ModelSpec& model, const CostScanConfig& cfg,
                                   std::uint64_t seed) {
    if (cfg.epsilons.empty()) throw std::invalid_argument("cost_scan: empty epsilon grid");
    std::vector<CostScanRow> rows;
    int eps_index = 0;
    for (double epsilon : cfg.epsilons) {
        ++eps_index;
        for (CostMethod method : cfg.methods) {
            const std::uint64_t run_seed =
                derive_seed(seed, static_cast<std::uint64_t>(eps_index),
                            static_cast<std::uint64_t>(method));
            switch (method) {
            case CostMethod::abc_reject:
                rows.push_back(scan_rejection(model, cfg, epsilon, run_seed));
                break;
            case CostMethod::abc_mcmc: {
                if (!cfg.proposal) throw std::invalid_argument("cost_scan: proposal required for abc-mcmc");
                CostScanRow row;
                try {
                    AbcMcmcConfig mcfg;
                    mcfg.initial_theta = cfg.initial_theta;
                    mcfg.iterations = cfg.mcmc_iterations;
                    mcfg.proposal = cfg.proposal;
                    mcfg.epsilon = epsilon;
                    // the initial accepted state is as rare as a rejection
                    // hit, so the retry budget has to match that scale
                    mcfg.init_retries = 1000000;
                    Trace trace = abc_mcmc(model, mcfg, run_seed);
                    row = scan_chain(trace, epsilon, method);
                } catch (const std::runtime_error&) {
                    row.epsilon = epsilon; // chain could not start at this threshold
                    row.method = cost_method_name(method);
                    row.degenerate = true;
                }
                rows.push_back(row);
                break;
            }
            case CostMethod::re_abc: {
                if (!cfg.proposal) throw std::invalid_argument("cost_scan: proposal required for re-abc");
                SmcConfig smc = cfg.smc;
                smc.epsilon = epsilon;
                SmcResult pilot = adapt_re_smc(model, cfg.initial_theta, smc, std::nullopt,
                                               derive_seed(run_seed, 0));
                PmmhConfig pcfg;
                pcfg.initial_theta = cfg.initial_theta;
                pcfg.iterations = cfg.reabc_iterations;
                pcfg.smc = smc;
                pcfg.schedule = schedule_from_pilot(pilot);
                pcfg.proposal = cfg.proposal;
                Trace trace = re_abc(model, pcfg, derive_seed(run_seed, 1));
                CostScanRow row = scan_chain(trace, epsilon, method);
                row.simulator_calls += pilot.simulator_calls;
                rows.push_back(row);
                break;
            }
            }
        }
    }
    return rows;
}

std::vector<int> adapt_stage_counts(const ModelSpec& model, const ParamVector& theta,
                                    const SmcConfig& cfg, const std::vector<double>& epsilons,
                                    std::uint64_t seed) {
    std::vector<int> stages;
    int index = 0;
    for (double epsilon : epsilons) {
        SmcConfig run = cfg;
        run.epsilon = epsilon;
        SmcResult res = adapt_re_smc(model, theta, run, std::nullopt,
                                     derive_seed(seed, static_cast<std::uint64_t>(++index)));
        stages.push_back(res.stages_completed);
    }
    return stages;
}

} // namespace reabc
