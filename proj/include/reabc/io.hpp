#ifndef REABC_IO_HPP
#define REABC_IO_HPP

#include "reabc/pmmh.hpp"
#include "reabc/smc.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace reabc {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a over raw bytes; identifies the config that produced an output.
std::uint64_t fnv1a_hash(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

// Chain trace as CSV with 17-significant-digit floats. Lines starting with
// '#' carry config hash, seed and version.
void write_trace_csv(const std::string& path, const Trace& trace, int param_dim,
                     const std::vector<std::string>& header_comments);
Trace read_trace_csv(const std::string& path, int* param_dim_out = nullptr);

// Threshold schedule files: one epsilon per line, strictly decreasing.
ThresholdSchedule load_schedule(const std::string& path);
void save_schedule(const std::string& path, const ThresholdSchedule& schedule,
                   const std::vector<std::string>& header_comments);

// Plain-text `key: value` report.
void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries,
                  const std::vector<std::string>& header_comments);

std::string format_double(double v); // 17 significant digits

} // namespace reabc

#endif
