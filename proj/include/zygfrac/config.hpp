#pragma once
// Flat key/value experiment configuration.
//
// File format: `key = value` lines, optional `[section]` headers that prefix
// subsequent keys as `section.key`, `#` comments, blank lines ignored.
// Values stay strings until a typed getter is called; getters throw
// ConfigError naming the offending field, which the CLI maps to exit code 2.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zygfrac {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;

    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double_or(const std::string& key, double fallback) const;
    long long get_int_or(const std::string& key, long long fallback) const;

    // Semicolon-separated triples "a,b,c; d,e,f; ..." -> list of 3-vectors.
    std::vector<std::array<double, 3>> get_points(const std::string& key) const;
    // Comma/space separated doubles.
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<long long> get_int_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    const std::map<std::string, std::string>& entries() const { return kv_; }

    // Canonical serialization "key=value\n" in sorted key order; hashing and
    // report echoes both use it.
    std::string canonical() const;

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace zygfrac
