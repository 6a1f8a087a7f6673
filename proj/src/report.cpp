#include "zygfrac/report.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "json.hpp"

namespace zygfrac {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t config_hash(const Config& cfg, std::uint64_t seed) {
    return fnv1a64(cfg.canonical() + "seed=" + std::to_string(seed) + "\n");
}

std::string hash_hex(std::uint64_t h) {
    char buf[19] = "0x";
    static const char* digits = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) buf[2 + i] = digits[(h >> (60 - 4 * i)) & 0xf];
    return std::string(buf, 18);
}

void CsvTable::add_row(const std::vector<std::string>& row) {
    if (row.size() != columns.size())
        throw std::logic_error("CsvTable: row width does not match header");
    rows.push_back(row);
}

void CsvTable::add_row_doubles(const std::vector<double>& row) {
    std::vector<std::string> s;
    s.reserve(row.size());
    for (double v : row) s.push_back(format_double(v));
    add_row(s);
}

void CsvTable::write(const std::string& path, std::uint64_t hash) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# config_hash=" << hash_hex(hash) << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

void ExperimentReport::write_json(const std::string& path) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config_hash"] = hash_hex(hash());
    j["seed"] = seed;
    nlohmann::ordered_json cfg_echo = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config.entries()) cfg_echo[k] = v;
    j["config"] = cfg_echo;
    nlohmann::ordered_json meas = nlohmann::ordered_json::object();
    for (const auto& [k, v] : measured) meas[k] = format_double(v);
    j["measured"] = meas;
    if (!notes.empty()) {
        nlohmann::ordered_json ns = nlohmann::ordered_json::object();
        for (const auto& [k, v] : notes) ns[k] = v;
        j["notes"] = ns;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::uint64_t read_stamp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string key = "config_hash";
    const auto pos = text.find(key);
    if (pos == std::string::npos) throw std::runtime_error(path + " carries no config_hash stamp");
    const auto hex = text.find("0x", pos);
    if (hex == std::string::npos || hex + 18 > text.size())
        throw std::runtime_error(path + " carries a malformed config_hash stamp");
    std::uint64_t h = 0;
    const auto [p, ec] = std::from_chars(text.data() + hex + 2, text.data() + hex + 18, h, 16);
    if (ec != std::errc() || p != text.data() + hex + 18)
        throw std::runtime_error(path + " carries a malformed config_hash stamp");
    return h;
}

}  // namespace zygfrac
