#include "zygfrac/config.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace zygfrac {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (!section.empty()) key = section + "." + key;
        cfg.kv_[key] = value;
    }
    return cfg;
}

std::string Config::get_string(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required config field: " + key);
    return it->second;
}

std::string Config::get_string_or(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing junk");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config field " + key + " is not a number: '" + v + "'");
    }
}

double Config::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    long long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("config field " + key + " is not an integer: '" + v + "'");
    return out;
}

long long Config::get_int_or(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key) const {
    const std::string v = get_string(key);
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("config field " + key + " is not an unsigned integer: '" + v + "'");
    return out;
}

std::vector<std::array<double, 3>> Config::get_points(const std::string& key) const {
    const std::string v = get_string(key);
    std::vector<std::array<double, 3>> out;
    std::istringstream groups(v);
    std::string group;
    while (std::getline(groups, group, ';')) {
        group = trim(group);
        if (group.empty()) continue;
        std::array<double, 3> pt{};
        std::istringstream comps(group);
        std::string comp;
        int n = 0;
        while (std::getline(comps, comp, ',')) {
            comp = trim(comp);
            if (n >= 3 || comp.empty()) {
                n = -1;
                break;
            }
            try {
                std::size_t used = 0;
                pt[n] = std::stod(comp, &used);
                if (used != comp.size()) throw std::invalid_argument("junk");
            } catch (const std::exception&) {
                n = -1;
                break;
            }
            ++n;
        }
        if (n != 3)
            throw ConfigError("config field " + key +
                              " must list semicolon-separated x,y,z triples");
        out.push_back(pt);
    }
    if (out.empty()) throw ConfigError("config field " + key + " lists no points");
    return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    const std::string v = get_string(key);
    std::vector<double> out;
    std::string token;
    for (char c : v) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!token.empty()) {
                out.push_back(0.0);
                try {
                    std::size_t used = 0;
                    out.back() = std::stod(token, &used);
                    if (used != token.size()) throw std::invalid_argument("junk");
                } catch (const std::exception&) {
                    throw ConfigError("config field " + key + " has a non-numeric entry: '" +
                                      token + "'");
                }
                token.clear();
            }
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty()) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument("junk");
        } catch (const std::exception&) {
            throw ConfigError("config field " + key + " has a non-numeric entry: '" + token + "'");
        }
    }
    if (out.empty()) throw ConfigError("config field " + key + " lists no values");
    return out;
}

std::vector<long long> Config::get_int_list(const std::string& key) const {
    std::vector<long long> out;
    for (double d : get_double_list(key)) {
        const long long v = static_cast<long long>(d);
        if (static_cast<double>(v) != d)
            throw ConfigError("config field " + key + " must list integers");
        out.push_back(v);
    }
    return out;
}

std::string Config::canonical() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

}  // namespace zygfrac
