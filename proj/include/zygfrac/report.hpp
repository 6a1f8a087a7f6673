#pragma once
// Deterministic experiment outputs: a CSV table plus a JSON sidecar, both
// stamped with the FNV-1a hash of the canonical config text and seed.
// Doubles are rendered with shortest round-trip formatting (std::to_chars),
// so identical runs produce byte-identical files and a `compare` against
// outputs from a different configuration can be rejected by hash alone.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zygfrac/config.hpp"

namespace zygfrac {

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

std::uint64_t fnv1a64(const std::string& bytes);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

std::uint64_t config_hash(const Config& cfg, std::uint64_t seed);
std::string hash_hex(std::uint64_t h);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<std::string>& row);
    void add_row_doubles(const std::vector<double>& row);
    // First line: "# config_hash=<hex>", then header, then rows.
    void write(const std::string& path, std::uint64_t hash) const;
};

struct ExperimentReport {
    std::string command;
    Config config;
    std::uint64_t seed = 0;
    std::map<std::string, double> measured;
    std::map<std::string, std::string> notes;

    std::uint64_t hash() const { return config_hash(config, seed); }
    void write_json(const std::string& path) const;
};

// Reads the config_hash stamp from a previously written CSV or report JSON.
std::uint64_t read_stamp(const std::string& path);

}  // namespace zygfrac
