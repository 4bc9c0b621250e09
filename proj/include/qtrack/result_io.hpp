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

// Solve-result JSON document:
//   {"method": ..., "seed": ..., "n": ..., "domain": "spin"|"binary",
//    "best_energy": ..., "best_state": [...], "restart_energies": [...],
//    "acceptance": {"attempted": ..., "accepted": ...},
//    "params": {...}, "trace": [[restart, step, control, best_energy], ...]}

#include <fstream>
#include <string>

#include <json.hpp>

#include "qtrack/errors.hpp"
#include "qtrack/solvers.hpp"

namespace qtrack {

inline nlohmann::json result_to_json(const SolveResult& r, nlohmann::json params) {
    nlohmann::json j;
    j["method"] = r.method;
    j["seed"] = r.seed;
    j["domain"] = r.binary_domain ? "binary" : "spin";
    j["best_energy"] = r.best_energy;
    if (r.binary_domain) {
        j["n"] = r.best_binary.size();
        j["best_state"] = nlohmann::json::array();
        for (auto y : r.best_binary.y) j["best_state"].push_back(static_cast<int>(y));
    } else {
        j["n"] = r.best_spins.size();
        j["best_state"] = nlohmann::json::array();
        for (auto s : r.best_spins.s) j["best_state"].push_back(static_cast<int>(s));
    }
    j["restart_energies"] = r.restart_energies;
    j["acceptance"] = {{"attempted", r.acceptance.attempted}, {"accepted", r.acceptance.accepted}};
    if (!r.slice_lock_fractions.empty()) j["slice_lock_fractions"] = r.slice_lock_fractions;
    j["params"] = std::move(params);
    j["trace"] = nlohmann::json::array();
    for (const auto& row : r.trace)
        j["trace"].push_back({row.restart, row.step, row.control, row.best_energy});
    return j;
}

inline SolveResult result_from_json(const nlohmann::json& j) {
    SolveResult r;
    try {
        r.method = j.at("method").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.binary_domain = j.at("domain").get<std::string>() == "binary";
        r.best_energy = j.at("best_energy").get<double>();
        for (const auto& v : j.at("best_state")) {
            const int value = v.get<int>();
            if (r.binary_domain) {
                if (value != 0 && value != 1)
                    throw ParseError("binary state entries must be 0 or 1");
                r.best_binary.y.push_back(static_cast<std::uint8_t>(value));
            } else {
                if (value != -1 && value != 1)
                    throw ParseError("spin state entries must be -1 or +1");
                r.best_spins.s.push_back(static_cast<std::int8_t>(value));
            }
        }
        if (j.at("n").get<std::size_t>() !=
            (r.binary_domain ? r.best_binary.size() : r.best_spins.size()))
            throw ParseError("state length does not match 'n'");
        r.restart_energies = j.at("restart_energies").get<std::vector<double>>();
        if (j.contains("acceptance")) {
            r.acceptance.attempted = j["acceptance"].at("attempted").get<std::uint64_t>();
            r.acceptance.accepted = j["acceptance"].at("accepted").get<std::uint64_t>();
        }
        if (j.contains("slice_lock_fractions"))
            r.slice_lock_fractions = j["slice_lock_fractions"].get<std::vector<double>>();
        if (j.contains("trace"))
            for (const auto& row : j["trace"])
                r.trace.push_back({row.at(0).get<std::uint32_t>(), row.at(1).get<std::uint32_t>(),
                                   row.at(2).get<double>(), row.at(3).get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed result document: ") + e.what());
    }
    return r;
}

inline void save_result_file(const SolveResult& r, const nlohmann::json& params,
                             const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << result_to_json(r, params).dump(2) << "\n";
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline SolveResult load_result_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": malformed JSON: " + e.what());
    }
    try {
        return result_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace qtrack
