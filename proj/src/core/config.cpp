// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#include "posediff/core/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace posediff {

namespace {
std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return parse_text(ss.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config parse error at line " + std::to_string(lineno) + ": missing '='");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config parse error at line " + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::runtime_error("missing config key: " + key);
    return it->second;
}

int64_t KeyValueConfig::get_int(const std::string& key) const {
    std::string v = get_string(key);
    size_t pos = 0;
    int64_t r;
    try {
        r = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key + "': not an integer: '" + v + "'");
    }
    if (pos != v.size()) throw std::runtime_error("config key '" + key + "': not an integer: '" + v + "'");
    return r;
}

double KeyValueConfig::get_real(const std::string& key) const {
    std::string v = get_string(key);
    size_t pos = 0;
    double r;
    try {
        r = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key + "': not a number: '" + v + "'");
    }
    if (pos != v.size()) throw std::runtime_error("config key '" + key + "': not a number: '" + v + "'");
    return r;
}

bool KeyValueConfig::get_bool(const std::string& key) const {
    std::string v = get_string(key);
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::runtime_error("config key '" + key + "': not a boolean: '" + v + "'");
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key) const {
    std::string v = get_string(key);
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        size_t pos = 0;
        int val;
        try {
            val = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("config key '" + key + "': bad list element '" + item + "'");
        }
        if (pos != item.size()) throw std::runtime_error("config key '" + key + "': bad list element '" + item + "'");
        out.push_back(val);
    }
    if (out.empty()) throw std::runtime_error("config key '" + key + "': empty list");
    return out;
}

void KeyValueConfig::reject_unknown_keys(const std::vector<std::string>& known) const {
    std::string bad;
    for (const auto& [k, v] : values_) {
        if (std::find(known.begin(), known.end(), k) == known.end()) {
            if (!bad.empty()) bad += ", ";
            bad += k;
        }
    }
    if (!bad.empty()) throw std::runtime_error("unknown config key(s): " + bad);
}

std::string KeyValueConfig::serialize() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
    return out;
}

}  // namespace posediff
