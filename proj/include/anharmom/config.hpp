#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace anharmom::cli {

// Configuration error carrying the offending location (file line or
// section.key), mapped to exit code 2 by the command line tool.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat key-value configuration with INI-style sections. Keys are stored as
// "section.key". Later assignments override earlier ones.
class Config {
public:
    void set(const std::string& key, const std::string& value);

    // Parses "section.key=value" (command line override form).
    void set_from_assignment(const std::string& assignment);

    // Merges an INI file; unknown syntax raises ConfigError with the line.
    void load_file(const std::string& path);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

    // Raises ConfigError naming the first key not in the allowed set.
    void require_known_keys(const std::vector<std::string>& allowed) const;

private:
    std::map<std::string, std::string> values_;
};

} // namespace anharmom::cli
