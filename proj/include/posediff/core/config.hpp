// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

namespace posediff {

// Flat key=value config file. '#' starts a comment, blank lines ignored.
// Consumers declare the full key set; any key outside it is an error.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_text(const std::string& text);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    int64_t get_int(const std::string& key) const;
    double get_real(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    // comma-separated integer list, e.g. "1,2,2,4,4"
    std::vector<int> get_int_list(const std::string& key) const;

    template <typename T>
    T get_or(const std::string& key, T fallback) const;

    // Throws listing every key not in `known`.
    void reject_unknown_keys(const std::vector<std::string>& known) const;

    const std::map<std::string, std::string>& values() const { return values_; }
    std::string serialize() const;

private:
    std::map<std::string, std::string> values_;
};

template <>
inline std::string KeyValueConfig::get_or(const std::string& key, std::string fallback) const {
    return has(key) ? get_string(key) : fallback;
}
template <>
inline int64_t KeyValueConfig::get_or(const std::string& key, int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}
template <>
inline int KeyValueConfig::get_or(const std::string& key, int fallback) const {
    return has(key) ? static_cast<int>(get_int(key)) : fallback;
}
template <>
inline double KeyValueConfig::get_or(const std::string& key, double fallback) const {
    return has(key) ? get_real(key) : fallback;
}
template <>
inline bool KeyValueConfig::get_or(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

}  // namespace posediff
