#pragma once

// Flat key=value experiment configuration. One pair per line, '#' starts a
// comment, whitespace around either side is ignored. Every command declares
// the keys it understands; anything else is rejected before work starts, as
// is a key set both in a config file and on the command line.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace boon {

// Maps to exit code 2 at the CLI boundary.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace harnessdetail {

inline std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    std::size_t a = s.find_first_not_of(ws);
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
}

} // namespace harnessdetail

struct ConfigMap {
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) != 0; }

    void set(const std::string& key, const std::string& value) {
        if (!kv.emplace(key, value).second)
            throw ConfigError("config: key '" + key + "' set twice");
    }

    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }

    std::string require(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ConfigError("config: missing required key '" + key + "'");
        return it->second;
    }

    double get_f64(const std::string& key, double fallback) const {
        auto it = kv.find(key);
        if (it == kv.end())
            return fallback;
        errno = 0;
        char* end = nullptr;
        double v = std::strtod(it->second.c_str(), &end);
        if (end == it->second.c_str() || *end != '\0' || errno == ERANGE)
            throw ConfigError("config: key '" + key + "' is not a number: '" + it->second + "'");
        return v;
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
        auto it = kv.find(key);
        if (it == kv.end())
            return fallback;
        errno = 0;
        char* end = nullptr;
        unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
        if (end == it->second.c_str() || *end != '\0' || errno == ERANGE ||
            it->second.find('-') != std::string::npos)
            throw ConfigError("config: key '" + key + "' is not a non-negative integer: '" +
                              it->second + "'");
        return v;
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = kv.find(key);
        if (it == kv.end())
            return fallback;
        if (it->second == "1" || it->second == "true")
            return true;
        if (it->second == "0" || it->second == "false")
            return false;
        throw ConfigError("config: key '" + key + "' is not a boolean: '" + it->second + "'");
    }

    // Every present key must be in the command's vocabulary.
    void restrict_keys(const std::set<std::string>& known) const {
        for (const auto& [k, v] : kv)
            if (known.count(k) == 0)
                throw ConfigError("config: unknown key '" + k + "'");
    }

    // Config file and flags may not both set a key: the conflict is rejected
    // instead of silently resolved.
    void merge_file(const ConfigMap& file) {
        for (const auto& [k, v] : file.kv) {
            if (kv.count(k))
                throw ConfigError("config: key '" + k + "' set in both the config file and a flag");
            kv.emplace(k, v);
        }
    }
};

inline ConfigMap parse_config_text(const std::string& text) {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = harnessdetail::trim(line);
        if (line.empty())
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " has no '='");
        std::string key = harnessdetail::trim(line.substr(0, eq));
        std::string value = harnessdetail::trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + " has an empty key");
        cfg.set(key, value);
    }
    return cfg;
}

inline ConfigMap load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

} // namespace boon
