// Copyright 2026 the qtrack developers.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

// Flat key-value run configuration:
//   # comment
//   [section]
//   key = value
// Values are plain tokens; lists are space-separated. Keys not consumed by
// the loader are reported as errors so typos never silently fall back to
// defaults.

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qtrack/errors.hpp"

namespace qtrack {

class ConfigFile {
  public:
    ConfigFile() = default;

    static ConfigFile parse(const std::string& text) {
        ConfigFile cfg;
        std::istringstream in(text);
        std::string line, section;
        std::size_t number = 0;
        while (std::getline(in, line)) {
            ++number;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            const auto last = line.find_last_not_of(" \t\r");
            std::string body = line.substr(first, last - first + 1);
            if (body.front() == '[') {
                if (body.back() != ']' || body.size() < 3)
                    throw ParseError("line " + std::to_string(number) +
                                     ": malformed section header '" + body + "'");
                section = body.substr(1, body.size() - 2);
                continue;
            }
            const auto eq = body.find('=');
            if (eq == std::string::npos)
                throw ParseError("line " + std::to_string(number) + ": expected 'key = value'");
            std::string key = body.substr(0, eq);
            std::string value = body.substr(eq + 1);
            trim(key);
            trim(value);
            if (key.empty())
                throw ParseError("line " + std::to_string(number) + ": empty key");
            if (section.empty())
                throw ParseError("line " + std::to_string(number) +
                                 ": key '" + key + "' appears before any [section]");
            if (!cfg.values_[section].emplace(key, value).second)
                throw ParseError("line " + std::to_string(number) + ": duplicate key '" +
                                 section + "." + key + "'");
        }
        return cfg;
    }

    static ConfigFile load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open '" + path + "' for reading");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        try {
            return parse(text);
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }

    bool has(const std::string& section, const std::string& key) const {
        const auto s = values_.find(section);
        return s != values_.end() && s->second.count(key);
    }

    std::string get_string(const std::string& section, const std::string& key,
                           std::string fallback) const {
        if (!has(section, key)) return fallback;
        consumed_.insert(section + "." + key);
        return values_.at(section).at(key);
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        if (!has(section, key)) return fallback;
        return parse_one<double>(section, key);
    }

    std::uint32_t get_u32(const std::string& section, const std::string& key,
                          std::uint32_t fallback) const {
        if (!has(section, key)) return fallback;
        return parse_one<std::uint32_t>(section, key);
    }

    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const {
        if (!has(section, key)) return fallback;
        return parse_one<std::uint64_t>(section, key);
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        if (!has(section, key)) return fallback;
        consumed_.insert(section + "." + key);
        const std::string& v = values_.at(section).at(key);
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        throw ParseError("key '" + section + "." + key + "': expected true/false, got '" + v + "'");
    }

    std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                        std::vector<double> fallback) const {
        if (!has(section, key)) return fallback;
        consumed_.insert(section + "." + key);
        std::istringstream in(values_.at(section).at(key));
        std::vector<double> out;
        double v;
        while (in >> v) out.push_back(v);
        std::string rest;
        if (in.clear(), in >> rest)
            throw ParseError("key '" + section + "." + key + "': non-numeric list entry '" +
                             rest + "'");
        return out;
    }

    //! Call after reading everything: any key never consumed is a typo.
    void reject_unconsumed() const {
        for (const auto& [section, keys] : values_)
            for (const auto& [key, value] : keys)
                if (!consumed_.count(section + "." + key))
                    throw ParseError("unknown configuration key '" + section + "." + key + "'");
    }

  private:
    static void trim(std::string& s) {
        const auto first = s.find_first_not_of(" \t");
        const auto last = s.find_last_not_of(" \t");
        s = first == std::string::npos ? std::string{} : s.substr(first, last - first + 1);
    }

    template <typename T>
    T parse_one(const std::string& section, const std::string& key) const {
        consumed_.insert(section + "." + key);
        const std::string& v = values_.at(section).at(key);
        std::istringstream in(v);
        T out{};
        std::string rest;
        if (!(in >> out) || (in >> rest))
            throw ParseError("key '" + section + "." + key + "': cannot parse value '" + v + "'");
        return out;
    }

    std::map<std::string, std::map<std::string, std::string>> values_;
    mutable std::set<std::string> consumed_;
};

}  // namespace qtrack
