#include "reabc/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace reabc {

std::uint64_t fnv1a_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return std::string(buf);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

namespace {

void write_comments(std::ofstream& out, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

} // namespace

void write_trace_csv(const std::string& path, const Trace& trace, int param_dim,
                     const std::vector<std::string>& header_comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
    write_comments(out, header_comments);
    out << "iter";
    for (int i = 1; i <= param_dim; ++i) out << ",theta_" << i;
    out << ",log_like,accepted,smc_stages,smc_time_s,terminated_early,sim_calls\n";
    for (const auto& r : trace.records) {
        out << r.iteration;
        for (int i = 0; i < param_dim; ++i) out << ',' << format_double(r.theta.at(i));
        out << ',' << format_double(r.log_like) << ',' << (r.accepted ? 1 : 0) << ','
            << r.smc_stages << ',' << format_double(r.smc_time_s) << ','
            << (r.terminated_early ? 1 : 0) << ',' << r.sim_calls << "\n";
    }
}

Trace read_trace_csv(const std::string& path, int* param_dim_out) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_trace_csv: cannot open " + path);
    Trace trace;
    std::string line;
    int lineno = 0;
    int param_dim = -1;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields = split_csv(line);
        if (!have_header) {
            // header row: iter, theta_1..theta_d, log_like, accepted, ...
            if (fields.size() < 8 || fields[0] != "iter") {
                throw std::runtime_error(path + ": row " + std::to_string(lineno) +
                                         ": malformed trace header");
            }
            param_dim = static_cast<int>(fields.size()) - 7;
            have_header = true;
            continue;
        }
        if (static_cast<int>(fields.size()) != param_dim + 7) {
            throw std::runtime_error(path + ": row " + std::to_string(lineno) +
                                     ": expected " + std::to_string(param_dim + 7) + " fields");
        }
        try {
            ChainRecord r;
            std::size_t k = 0;
            r.iteration = std::stoi(fields[k++]);
            r.theta.resize(param_dim);
            for (int i = 0; i < param_dim; ++i) r.theta[i] = std::stod(fields[k++]);
            r.log_like = std::stod(fields[k++]);
            r.accepted = std::stoi(fields[k++]) != 0;
            r.smc_stages = std::stoi(fields[k++]);
            r.smc_time_s = std::stod(fields[k++]);
            r.terminated_early = std::stoi(fields[k++]) != 0;
            r.sim_calls = std::stoll(fields[k++]);
            trace.records.push_back(std::move(r));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": row " + std::to_string(lineno) +
                                     ": unparseable field");
        }
    }
    if (!have_header || trace.records.empty()) {
        throw std::runtime_error(path + ": no trace rows found");
    }
    if (param_dim_out) *param_dim_out = param_dim;
    return trace;
}

ThresholdSchedule load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_schedule: cannot open " + path);
    std::vector<double> eps;
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
            throw std::runtime_error("load_schedule: " + path + " line " +
                                     std::to_string(lineno) + ": not a number");
        }
        eps.push_back(v);
    }
    if (eps.empty()) throw std::runtime_error("load_schedule: " + path + ": empty schedule");
    return ThresholdSchedule(std::move(eps)); // enforces strict decrease
}

void save_schedule(const std::string& path, const ThresholdSchedule& schedule,
                   const std::vector<std::string>& header_comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_schedule: cannot open " + path);
    write_comments(out, header_comments);
    for (double e : schedule.epsilons) out << format_double(e) << "\n";
}

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries,
                  const std::vector<std::string>& header_comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_report: cannot open " + path);
    write_comments(out, header_comments);
    for (const auto& [key, value] : entries) out << key << ": " << value << "\n";
}

} // namespace reabc
