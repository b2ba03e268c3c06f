// Command-line front end: configure, run and summarise experiments.
// Subcommands: run, pilot, diagnose, cost-scan.
// Exit codes: 0 success, 2 config error, 3 runtime failure.

#include "reabc/abc.hpp"
#include "reabc/config.hpp"
#include "reabc/diagnostics.hpp"
#include "reabc/epidemic.hpp"
#include "reabc/gaussian_model.hpp"
#include "reabc/io.hpp"
#include "reabc/pmmh.hpp"
#include "reabc/stats.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

namespace fs = std::filesystem;
using namespace reabc;

namespace {

struct CliOptions {
    std::string config_path;
    std::string trace_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::string out_dir;
    std::vector<double> truth;
};

std::unique_ptr<ModelSpec> build_model(const Config& cfg) {
    const std::string name = cfg.get_string("model.name");
    if (name == "gaussian") {
        GaussianModelConfig mc;
        mc.prior_upper = cfg.get_double_or("model.prior_upper", 10.0);
        const std::string yobs_file = cfg.get_string("model.yobs_file");
        if (!fs::exists(yobs_file)) {
            throw ConfigError("model.yobs_file does not exist: " + yobs_file);
        }
        mc.y_obs = load_column(yobs_file);
        mc.n_obs = static_cast<int>(mc.y_obs.size());
        if (cfg.has("model.n_obs")) {
            int want = static_cast<int>(cfg.get_int("model.n_obs"));
            if (want > mc.n_obs) {
                throw ConfigError("model.n_obs exceeds the observations in " + yobs_file);
            }
            mc.y_obs.resize(want);
            mc.n_obs = want;
        }
        const std::string dist = cfg.get_string_or("model.distance", "raw");
        if (dist == "raw") {
            mc.distance = GaussianDistance::raw_euclidean;
        } else if (dist == "sorted") {
            mc.distance = GaussianDistance::sorted_euclidean;
        } else {
            throw ConfigError("model.distance must be raw or sorted, got " + dist);
        }
        return std::make_unique<GaussianModel>(std::move(mc));
    }
    if (name == "epidemic") {
        EpidemicModelConfig mc;
        mc.variant = epidemic_variant_from_name(cfg.get_string("model.variant"));
        const std::string data_file = cfg.get_string("model.data_file");
        if (!fs::exists(data_file)) {
            throw ConfigError("model.data_file does not exist: " + data_file);
        }
        mc.data = load_removal_data(data_file);
        mc.k_penalty = cfg.get_double_or("model.k_penalty", 1000.0);
        mc.prior_rate = cfg.get_double_or("model.prior_rate", 0.1);
        return std::make_unique<EpidemicModel>(std::move(mc));
    }
    throw ConfigError("model.name must be gaussian or epidemic, got " + name);
}

std::uint64_t resolve_seed(const Config& cfg, const CliOptions& cli) {
    if (cli.seed) return *cli.seed;
    if (!cfg.has("run.seed")) {
        throw ConfigError("run.seed is mandatory (or pass --seed); wall-clock seeding is not supported");
    }
    return cfg.get_u64("run.seed");
}

int resolve_workers(const Config& cfg, const CliOptions& cli) {
    int w = cli.workers ? *cli.workers : static_cast<int>(cfg.get_int_or("run.workers", 1));
    if (w < 1) throw ConfigError("workers must be >= 1");
    return w;
}

fs::path resolve_out_dir(const Config& cfg, const CliOptions& cli) {
    std::string dir = !cli.out_dir.empty() ? cli.out_dir : cfg.get_string_or("run.out_dir", "");
    if (dir.empty()) throw ConfigError("output directory required (run.out_dir or --out)");
    fs::create_directories(dir);
    return fs::path(dir);
}

std::vector<std::string> output_header(const Config& cfg, std::uint64_t seed) {
    return {
        "config_hash: " + hash_hex(fnv1a_hash(cfg.raw_text())),
        "seed: " + std::to_string(seed),
        "version: " + std::string(kVersion),
    };
}

ProposalConfig proposal_from_config(const Config& cfg, int dim) {
    if (cfg.has("proposal.sd")) {
        std::vector<double> sd = cfg.get_doubles("proposal.sd");
        if (static_cast<int>(sd.size()) != dim) {
            throw ConfigError("proposal.sd needs " + std::to_string(dim) + " entries");
        }
        std::vector<double> var(sd.size());
        for (std::size_t i = 0; i < sd.size(); ++i) var[i] = sd[i] * sd[i];
        return ProposalConfig(Matrix::diagonal(var));
    }
    if (cfg.has("proposal.covariance")) {
        // rows separated by ';', entries by whitespace
        std::string text = cfg.get_string("proposal.covariance");
        std::vector<std::vector<double>> rows;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t sep = text.find(';', start);
            std::string row_text = text.substr(start, sep == std::string::npos ? sep : sep - start);
            std::istringstream ss(row_text);
            std::vector<double> row;
            double v;
            while (ss >> v) row.push_back(v);
            if (!row.empty()) rows.push_back(std::move(row));
            if (sep == std::string::npos) break;
            start = sep + 1;
        }
        if (static_cast<int>(rows.size()) != dim) {
            throw ConfigError("proposal.covariance needs " + std::to_string(dim) + " rows");
        }
        Matrix m(dim);
        for (int i = 0; i < dim; ++i) {
            if (static_cast<int>(rows[i].size()) != dim) {
                throw ConfigError("proposal.covariance row " + std::to_string(i + 1) +
                                  " needs " + std::to_string(dim) + " entries");
            }
            for (int j = 0; j < dim; ++j) m(i, j) = rows[i][j];
        }
        try {
            return ProposalConfig(std::move(m));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("proposal.covariance: ") + e.what());
        }
    }
    throw ConfigError("proposal.sd or proposal.covariance required for this method");
}

SmcConfig smc_from_config(const Config& cfg, int workers) {
    SmcConfig smc;
    smc.particles = static_cast<int>(cfg.get_int_or("smc.particles", 100));
    smc.n_accept = static_cast<int>(cfg.get_int_or("smc.n_accept", smc.particles / 2));
    smc.slice_repeats = static_cast<int>(cfg.get_int_or("smc.slice_repeats", 1));
    smc.max_stages = static_cast<int>(cfg.get_int_or("smc.max_stages", 10000));
    smc.slice_max_iterations = static_cast<int>(cfg.get_int_or("smc.slice_max_iterations", 1000));
    smc.workers = workers;
    return smc;
}

ParamVector initial_theta_from_config(const Config& cfg, int dim) {
    std::vector<double> theta = cfg.get_doubles("run.initial_theta");
    if (static_cast<int>(theta.size()) != dim) {
        throw ConfigError("run.initial_theta needs " + std::to_string(dim) + " entries");
    }
    return theta;
}

void append_chain_summary(std::vector<std::pair<std::string, std::string>>& entries,
                          const Trace& trace, const ModelSpec& model, int burn_in,
                          const Config& cfg, bool wall_timing) {
    const int dim = model.param_dim();
    if (burn_in >= static_cast<int>(trace.records.size())) {
        throw ConfigError("run.burn_in leaves no samples");
    }
    double min_ess = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim; ++i) {
        std::vector<double> samples;
        for (std::size_t t = burn_in; t < trace.records.size(); ++t) {
            samples.push_back(trace.records[t].theta[i]);
        }
        const std::string tag = "theta_" + std::to_string(i + 1);
        entries.emplace_back("posterior_mean_" + tag, format_double(mean(samples)));
        entries.emplace_back("posterior_sd_" + tag, format_double(sample_sd(samples)));
        EssReport ess = ess_imse(samples);
        entries.emplace_back("ess_" + tag,
                             ess.degenerate ? "degenerate" : format_double(ess.ess));
        if (!ess.degenerate) min_ess = std::min(min_ess, ess.ess);
    }
    entries.emplace_back("acceptance_rate", format_double(trace.acceptance_rate()));
    entries.emplace_back("total_sim_calls", std::to_string(trace.total_sim_calls()));
    if (std::isfinite(min_ess)) {
        entries.emplace_back("sim_calls_per_ess",
                             format_double(trace.total_sim_calls() / min_ess));
    } else {
        entries.emplace_back("sim_calls_per_ess", "degenerate");
    }
    if (wall_timing) {
        entries.emplace_back("total_smc_time_s", format_double(trace.total_smc_time_s()));
        if (std::isfinite(min_ess)) {
            entries.emplace_back("time_per_ess_s",
                                 format_double(trace.total_smc_time_s() / min_ess));
        } else {
            entries.emplace_back("time_per_ess_s", "degenerate");
        }
    }

    // Derived epidemic quantities when a variant is configured.
    if (cfg.get_string_or("model.name", "") == "epidemic") {
        EpidemicVariant variant = epidemic_variant_from_name(cfg.get_string("model.variant"));
        std::vector<double> r0s, inf_means;
        for (std::size_t t = burn_in; t < trace.records.size(); ++t) {
            const ParamVector& theta = trace.records[t].theta;
            if (auto r0 = basic_reproduction_number(variant, theta)) r0s.push_back(*r0);
            inf_means.push_back(infectious_period_mean(variant, theta));
        }
        if (!r0s.empty()) {
            entries.emplace_back("r0_posterior_mean", format_double(mean(r0s)));
            entries.emplace_back("r0_posterior_sd", format_double(sample_sd(r0s)));
        } else {
            entries.emplace_back("r0_posterior_mean", "undefined");
        }
        entries.emplace_back("infectious_period_mean_posterior_mean",
                             format_double(mean(inf_means)));
        entries.emplace_back("infectious_period_mean_posterior_sd",
                             format_double(sample_sd(inf_means)));
    }
}

int cmd_run(const CliOptions& cli) {
    Config cfg = Config::parse_file(cli.config_path);
    std::unique_ptr<ModelSpec> model = build_model(cfg);
    const std::uint64_t seed = resolve_seed(cfg, cli);
    const int workers = resolve_workers(cfg, cli);
    const fs::path out = resolve_out_dir(cfg, cli);
    const std::vector<std::string> header = output_header(cfg, seed);
    const std::string method = cfg.get_string("run.method");
    const int burn_in = static_cast<int>(cfg.get_int_or("run.burn_in", 0));

    if (method == "rejection") {
        RejectionOptions opts;
        opts.epsilon = cfg.get_double("run.epsilon");
        if (cfg.has("run.target_accepts")) opts.target_accepts = cfg.get_int("run.target_accepts");
        opts.max_attempts = cfg.get_int_or("run.max_attempts", 1000000);
        opts.workers = workers;
        RejectionResult res = abc_rejection(*model, opts, seed);

        std::ofstream samples(out / "samples.csv");
        if (!samples) throw std::runtime_error("cannot write samples.csv");
        for (const auto& h : header) samples << "# " << h << "\n";
        for (int i = 1; i <= model->param_dim(); ++i) {
            samples << "theta_" << i << (i == model->param_dim() ? '\n' : ',');
        }
        for (const auto& theta : res.accepted_params) {
            for (int i = 0; i < model->param_dim(); ++i) {
                samples << format_double(theta[i]) << (i + 1 == model->param_dim() ? '\n' : ',');
            }
        }

        std::vector<std::pair<std::string, std::string>> entries;
        entries.emplace_back("method", method);
        entries.emplace_back("epsilon", format_double(opts.epsilon));
        entries.emplace_back("accepted", std::to_string(res.accepted_params.size()));
        entries.emplace_back("attempts", std::to_string(res.attempts));
        entries.emplace_back("acceptance_rate", format_double(res.acceptance_rate()));
        if (cfg.get_string_or("run.timing", "none") == "wall") {
            entries.emplace_back("wall_time_s", format_double(res.wall_time_s));
        }
        if (res.accepted_params.empty()) {
            entries.emplace_back("warning", "no acceptances within the attempt budget");
        }
        write_report((out / "samples_meta.txt").string(), entries, header);
        std::cout << "wrote " << (out / "samples.csv").string() << " ("
                  << res.accepted_params.size() << " accepted / " << res.attempts
                  << " attempts)\n";
        return 0;
    }

    // Chain-producing methods.
    Trace trace;
    if (method == "abc-mcmc") {
        AbcMcmcConfig mcfg;
        if (cfg.has("run.initial_theta")) {
            mcfg.initial_theta = initial_theta_from_config(cfg, model->param_dim());
        }
        mcfg.iterations = static_cast<int>(cfg.get_int("run.iterations"));
        mcfg.proposal = proposal_from_config(cfg, model->param_dim());
        mcfg.epsilon = cfg.get_double("run.epsilon");
        trace = abc_mcmc(*model, mcfg, seed);
    } else if (method == "re-abc-fixed" || method == "re-abc-adapt") {
        PmmhConfig pcfg;
        pcfg.initial_theta = initial_theta_from_config(cfg, model->param_dim());
        pcfg.iterations = static_cast<int>(cfg.get_int("run.iterations"));
        pcfg.smc = smc_from_config(cfg, workers);
        pcfg.proposal = proposal_from_config(cfg, model->param_dim());
        pcfg.early_termination = cfg.get_int_or("run.early_termination", 1) != 0;
        if (method == "re-abc-fixed") {
            const std::string schedule_file = cfg.get_string("smc.schedule_file");
            if (!fs::exists(schedule_file)) {
                throw ConfigError("smc.schedule_file does not exist: " + schedule_file);
            }
            pcfg.schedule = load_schedule(schedule_file);
            pcfg.smc.epsilon = pcfg.schedule->target();
        } else {
            pcfg.smc.epsilon = cfg.get_double("run.epsilon");
        }
        trace = re_abc(*model, pcfg, seed);
    } else {
        throw ConfigError("run.method must be rejection, abc-mcmc, re-abc-fixed or re-abc-adapt");
    }

    // Outputs are byte-reproducible from (config, seed) by default; wall
    // timing is opt-in because it cannot be deterministic.
    const std::string timing = cfg.get_string_or("run.timing", "none");
    if (timing != "none" && timing != "wall") {
        throw ConfigError("run.timing must be none or wall");
    }
    const bool wall_timing = timing == "wall";
    if (!wall_timing) {
        for (auto& r : trace.records) r.smc_time_s = 0.0;
    }

    write_trace_csv((out / "trace.csv").string(), trace, model->param_dim(), header);
    std::vector<std::pair<std::string, std::string>> entries;
    entries.emplace_back("method", method);
    entries.emplace_back("iterations", std::to_string(trace.records.size()));
    entries.emplace_back("burn_in", std::to_string(burn_in));
    append_chain_summary(entries, trace, *model, burn_in, cfg, wall_timing);
    write_report((out / "summary.txt").string(), entries, header);
    std::cout << "wrote " << (out / "trace.csv").string() << " and summary.txt\n";
    return 0;
}

int cmd_pilot(const CliOptions& cli) {
    Config cfg = Config::parse_file(cli.config_path);
    std::unique_ptr<ModelSpec> model = build_model(cfg);
    const std::uint64_t seed = resolve_seed(cfg, cli);
    const int workers = resolve_workers(cfg, cli);
    const fs::path out = resolve_out_dir(cfg, cli);
    const std::vector<std::string> header = output_header(cfg, seed);

    // Stage 1: posterior location and spread, from either a rejection pilot
    // or a short adaptive chain (practical when rejection acceptance is
    // hopeless, e.g. epidemic models with removal-count penalties).
    const std::string pilot_method = cfg.get_string_or("pilot.method", "rejection");
    std::vector<double> mu;
    Matrix sigma;
    std::vector<std::pair<std::string, std::string>> pilot_entries;
    if (pilot_method == "rejection") {
        RejectionOptions ropts;
        ropts.epsilon = cfg.get_double("pilot.epsilon");
        ropts.target_accepts = cfg.get_int_or("pilot.target_accepts", 200);
        ropts.max_attempts = cfg.get_int_or("pilot.max_attempts", 10000000);
        ropts.workers = workers;
        RejectionResult rej = abc_rejection(*model, ropts, derive_seed(seed, 1));
        if (rej.accepted_params.size() < 2) {
            throw std::runtime_error("pilot: fewer than 2 rejection acceptances; "
                                     "raise pilot.epsilon or the attempt budget");
        }
        mean_and_covariance(rej.accepted_params, mu, sigma);
        pilot_entries.emplace_back("pilot_epsilon", format_double(ropts.epsilon));
        pilot_entries.emplace_back("pilot_accepts", std::to_string(rej.accepted_params.size()));
        pilot_entries.emplace_back("pilot_attempts", std::to_string(rej.attempts));
    } else if (pilot_method == "short-chain") {
        PmmhConfig pcfg;
        pcfg.initial_theta = initial_theta_from_config(cfg, model->param_dim());
        pcfg.iterations = static_cast<int>(cfg.get_int_or("pilot.iterations", 150));
        pcfg.smc = smc_from_config(cfg, workers);
        pcfg.smc.epsilon = cfg.get_double("run.epsilon");
        pcfg.proposal = proposal_from_config(cfg, model->param_dim()); // initial guess
        Trace chain = re_abc(*model, pcfg, derive_seed(seed, 1));
        std::vector<std::vector<double>> draws;
        for (std::size_t t = chain.records.size() / 3; t < chain.records.size(); ++t) {
            draws.push_back(chain.records[t].theta);
        }
        mean_and_covariance(draws, mu, sigma);
        pilot_entries.emplace_back("pilot_iterations", std::to_string(chain.records.size()));
        pilot_entries.emplace_back("pilot_acceptance_rate",
                                   format_double(chain.acceptance_rate()));
    } else {
        throw ConfigError("pilot.method must be rejection or short-chain");
    }
    if (sigma.is_zero()) throw std::runtime_error("pilot: degenerate (zero-variance) pilot sample");
    PilotSummary pilot{mu, sigma};
    ProposalConfig proposal = tune_proposal(pilot);

    // Stage 2: target threshold, from config or from a time budget.
    SmcConfig smc = smc_from_config(cfg, workers);
    double epsilon;
    if (cfg.has("run.epsilon")) {
        epsilon = cfg.get_double("run.epsilon");
    } else if (cfg.has("pilot.time_budget_s")) {
        epsilon = tune_epsilon(*model, mu, cfg.get_double("pilot.time_budget_s"), smc,
                               derive_seed(seed, 2));
    } else {
        throw ConfigError("pilot needs run.epsilon or pilot.time_budget_s");
    }

    // Stage 3: threshold schedule from an adaptive run at the pilot mean.
    smc.epsilon = epsilon;
    SmcResult adaptive = adapt_re_smc(*model, mu, smc, std::nullopt, derive_seed(seed, 3));
    ThresholdSchedule schedule = schedule_from_pilot(adaptive);
    save_schedule((out / "schedule.txt").string(), schedule, header);

    // Stage 4: particle count for log-likelihood variance ~ target.
    ParticleTuneOptions topts;
    topts.target_log_variance = cfg.get_double_or("pilot.target_log_var", 1.0);
    topts.replicates = static_cast<int>(cfg.get_int_or("pilot.replicates", 20));
    topts.initial_particles = static_cast<int>(cfg.get_int_or("pilot.initial_particles", 50));
    topts.max_doublings = static_cast<int>(cfg.get_int_or("pilot.max_doublings", 8));
    ParticleTuneResult tuned = tune_particles(*model, mu, schedule, topts, smc, derive_seed(seed, 4));

    std::vector<std::pair<std::string, std::string>> entries = std::move(pilot_entries);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        entries.emplace_back("posterior_mean_theta_" + std::to_string(i + 1), format_double(mu[i]));
    }
    for (int i = 0; i < sigma.dim(); ++i) {
        std::string row;
        for (int j = 0; j < sigma.dim(); ++j) {
            row += format_double(sigma(i, j));
            if (j + 1 < sigma.dim()) row += " ";
        }
        entries.emplace_back("posterior_cov_row_" + std::to_string(i + 1), row);
    }
    for (int i = 0; i < proposal.covariance().dim(); ++i) {
        std::string row;
        for (int j = 0; j < proposal.covariance().dim(); ++j) {
            row += format_double(proposal.covariance()(i, j));
            if (j + 1 < proposal.covariance().dim()) row += " ";
        }
        entries.emplace_back("proposal_cov_row_" + std::to_string(i + 1), row);
    }
    entries.emplace_back("epsilon", format_double(epsilon));
    entries.emplace_back("schedule_stages", std::to_string(schedule.stages()));
    entries.emplace_back("recommended_particles", std::to_string(tuned.particles));
    entries.emplace_back("log_likelihood_variance", format_double(tuned.log_variance));
    entries.emplace_back("zero_estimates", std::to_string(tuned.zero_estimates));
    write_report((out / "pilot_summary.txt").string(), entries, header);
    std::cout << "wrote " << (out / "pilot_summary.txt").string() << " and schedule.txt"
              << " (recommended particles: " << tuned.particles << ")\n";
    return 0;
}

int cmd_diagnose(const CliOptions& cli) {
    int dim = 0;
    Trace trace;
    try {
        trace = read_trace_csv(cli.trace_path, &dim);
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }
    if (!cli.truth.empty() && static_cast<int>(cli.truth.size()) != dim) {
        throw ConfigError("--truth needs " + std::to_string(dim) + " values");
    }

    std::vector<std::pair<std::string, std::string>> entries;
    entries.emplace_back("iterations", std::to_string(trace.records.size()));
    entries.emplace_back("acceptance_rate", format_double(trace.acceptance_rate()));
    double min_ess = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim; ++i) {
        std::vector<double> chain = trace.component(i);
        const std::string tag = "theta_" + std::to_string(i + 1);
        entries.emplace_back("posterior_mean_" + tag, format_double(mean(chain)));
        entries.emplace_back("posterior_sd_" + tag, format_double(sample_sd(chain)));
        EssReport ess = ess_imse(chain);
        entries.emplace_back("ess_" + tag, ess.degenerate ? "degenerate" : format_double(ess.ess));
        if (!ess.degenerate) min_ess = std::min(min_ess, ess.ess);
        if (!cli.truth.empty()) {
            entries.emplace_back("rmse_" + tag, format_double(rmse(chain, cli.truth[i])));
        }
    }
    entries.emplace_back("total_sim_calls", std::to_string(trace.total_sim_calls()));
    entries.emplace_back("total_smc_time_s", format_double(trace.total_smc_time_s()));
    if (std::isfinite(min_ess)) {
        entries.emplace_back("time_per_ess_s", format_double(trace.total_smc_time_s() / min_ess));
        entries.emplace_back("sim_calls_per_ess",
                             format_double(trace.total_sim_calls() / min_ess));
    } else {
        entries.emplace_back("time_per_ess_s", "degenerate");
    }

    for (const auto& [k, v] : entries) std::cout << k << ": " << v << "\n";
    if (!cli.out_dir.empty()) {
        fs::create_directories(cli.out_dir);
        write_report((fs::path(cli.out_dir) / "diagnose.txt").string(), entries, {});
    }
    return 0;
}

int cmd_cost_scan(const CliOptions& cli) {
    Config cfg = Config::parse_file(cli.config_path);
    std::unique_ptr<ModelSpec> model = build_model(cfg);
    const std::uint64_t seed = resolve_seed(cfg, cli);
    const int workers = resolve_workers(cfg, cli);
    const fs::path out = resolve_out_dir(cfg, cli);
    const std::vector<std::string> header = output_header(cfg, seed);

    CostScanConfig scan;
    scan.epsilons = cfg.get_doubles("cost_scan.epsilons");
    for (const std::string& m : {std::string("abc-reject"), std::string("abc-mcmc"),
                                 std::string("re-abc")}) {
        // methods key lists a subset of the known method names
        std::string listed = cfg.get_string_or("cost_scan.methods", "abc-reject re-abc");
        std::istringstream ss(listed);
        std::string tok;
        bool found = false;
        while (ss >> tok) {
            if (tok == m) found = true;
        }
        if (found) {
            if (m == "abc-reject") scan.methods.push_back(CostMethod::abc_reject);
            if (m == "abc-mcmc") scan.methods.push_back(CostMethod::abc_mcmc);
            if (m == "re-abc") scan.methods.push_back(CostMethod::re_abc);
        }
    }
    if (scan.methods.empty()) throw ConfigError("cost_scan.methods lists no known method");
    scan.rejection_target_accepts = cfg.get_int_or("cost_scan.rejection_target_accepts", 200);
    scan.rejection_max_attempts = cfg.get_int_or("cost_scan.rejection_max_attempts", 50000000);
    scan.mcmc_iterations = static_cast<int>(cfg.get_int_or("cost_scan.mcmc_iterations", 5000));
    scan.reabc_iterations = static_cast<int>(cfg.get_int_or("cost_scan.reabc_iterations", 300));
    scan.smc = smc_from_config(cfg, workers);
    scan.initial_theta = initial_theta_from_config(cfg, model->param_dim());
    scan.proposal = proposal_from_config(cfg, model->param_dim());

    std::vector<CostScanRow> rows = cost_scan(*model, scan, seed);

    std::ofstream csv(out / "cost_scan.csv");
    if (!csv) throw std::runtime_error("cannot write cost_scan.csv");
    for (const auto& h : header) csv << "# " << h << "\n";
    csv << "epsilon,method,simulator_calls,wall_time_s,ess_or_accepts,"
           "time_per_effective_sample,degenerate\n";
    for (const auto& r : rows) {
        csv << format_double(r.epsilon) << ',' << r.method << ',' << r.simulator_calls << ','
            << format_double(r.wall_time_s) << ',' << format_double(r.ess_or_accepts) << ','
            << format_double(r.time_per_effective_sample) << ',' << (r.degenerate ? 1 : 0)
            << "\n";
    }

    // per-method fit of log(simulator calls per sample) against log(1/eps)
    std::vector<std::pair<std::string, std::string>> entries;
    for (CostMethod method : scan.methods) {
        const std::string name = cost_method_name(method);
        std::vector<double> xs, ys;
        for (const auto& r : rows) {
            if (r.method != name || r.degenerate) continue;
            xs.push_back(std::log(1.0 / r.epsilon));
            ys.push_back(std::log(r.simulator_calls / r.ess_or_accepts));
        }
        if (xs.size() >= 2) {
            LinearFit fit = linear_fit(xs, ys);
            entries.emplace_back("slope_" + name, format_double(fit.slope));
            entries.emplace_back("r_squared_" + name, format_double(fit.r_squared));
        } else {
            entries.emplace_back("slope_" + name, "insufficient non-degenerate rows");
        }
    }
    write_report((out / "cost_scan_summary.txt").string(), entries, header);
    std::cout << "wrote " << (out / "cost_scan.csv").string() << " (" << rows.size()
              << " rows) and cost_scan_summary.txt\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Likelihood-free inference by rare-event SMC (RE-ABC)"};
    app.require_subcommand(1);
    CliOptions cli;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config) {
            sub->add_option("--config", cli.config_path, "configuration file")->required();
        }
        sub->add_option("--seed", cli.seed, "seed override");
        sub->add_option("--workers", cli.workers, "worker threads override");
        sub->add_option("--out", cli.out_dir, "output directory override");
    };

    CLI::App* run = app.add_subcommand("run", "run an experiment and write trace + summary");
    add_common(run, true);
    CLI::App* pilot = app.add_subcommand("pilot", "tune proposal, schedule and particle count");
    add_common(pilot, true);
    CLI::App* diagnose = app.add_subcommand("diagnose", "summarise an existing trace CSV");
    diagnose->add_option("--trace", cli.trace_path, "trace CSV path")->required();
    diagnose->add_option("--truth", cli.truth, "true parameter values for RMSE");
    diagnose->add_option("--out", cli.out_dir, "output directory");
    CLI::App* scan = app.add_subcommand("cost-scan", "measure cost across an epsilon grid");
    add_common(scan, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(cli);
        if (pilot->parsed()) return cmd_pilot(cli);
        if (diagnose->parsed()) return cmd_diagnose(cli);
        if (scan->parsed()) return cmd_cost_scan(cli);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
