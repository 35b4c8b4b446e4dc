#pragma once

#include <map>
#include <string>
#include <vector>

namespace bcs {

// Flat key-value configuration: one `name = value` per line, `#` comments,
// SI units throughout.  Values are scalars or comma-separated lists.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_list(const std::string& key) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    const std::map<std::string, std::string>& items() const { return kv_; }

    // Throws if any key is not in the allowed set (catches typos early, with
    // the offending parameter named).
    void require_known(const std::vector<std::string>& allowed) const;

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace bcs
