#ifndef REABC_CONFIG_HPP
#define REABC_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reabc {

// Configuration error with the offending file line; the CLI maps this to
// exit code 2.
class ConfigError : public std::exception {
public:
    ConfigError(std::string message, int line = 0);
    const char* what() const noexcept override { return message_.c_str(); }
    int line() const { return line_; }

private:
    std::string message_;
    int line_;
};

// Flat `key = value` file with [section] headers and '#' comments. Keys are
// addressed as "section.key".
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& name = "<config>");

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int_or(const std::string& key, long long fallback) const;
    std::uint64_t get_u64(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const; // whitespace separated

    const std::string& raw_text() const { return raw_text_; }
    const std::string& name() const { return name_; }

private:
    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::string, Entry> values_;
    std::string raw_text_;
    std::string name_;

    const Entry& require(const std::string& key) const;
};

} // namespace reabc

#endif
