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

// Plain-text problem formats, 0-based indices, '#' starts a comment line.
//
//   ising <n>            qubo <n> <offset>
//   h <i> <value>        <i> <j> <value>     (i <= j, diagonal = linear term)
//   J <i> <j> <value>    (i < j)
//
// Values are written with 17 significant digits so doubles round-trip exactly.
// Writing order is deterministic: fields ascending, couplings ascending (i, j).

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qtrack/errors.hpp"
#include "qtrack/ising.hpp"

namespace qtrack {

namespace detail {

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Line {
    std::size_t number;
    std::string text;
};

//! Strips comments/blank lines; keeps 1-based line numbers for diagnostics.
inline std::vector<Line> significant_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos || raw[first] == '#') continue;
        lines.push_back({number, raw});
    }
    return lines;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

template <typename T>
inline T read_token(std::istringstream& in, std::size_t line, const char* what) {
    T value{};
    if (!(in >> value)) parse_fail(line, std::string("expected ") + what);
    return value;
}

inline void expect_end(std::istringstream& in, std::size_t line) {
    std::string rest;
    if (in >> rest) parse_fail(line, "unexpected trailing token '" + rest + "'");
}

inline double read_value(std::istringstream& in, std::size_t line) {
    const double v = read_token<double>(in, line, "a numeric value");
    if (!std::isfinite(v)) parse_fail(line, "value must be finite");
    return v;
}

}  // namespace detail

inline void save_ising(const IsingProblem& p, std::ostream& out) {
    out << "ising " << p.size() << "\n";
    for (std::uint32_t i = 0; i < p.size(); ++i)
        if (p.fields()[i] != 0.0)
            out << "h " << i << " " << detail::format_value(p.fields()[i]) << "\n";
    for (const auto& c : p.couplings())
        out << "J " << c.i << " " << c.j << " " << detail::format_value(c.value) << "\n";
}

inline IsingProblem load_ising(std::istream& in) {
    const auto lines = detail::significant_lines(in);
    if (lines.empty()) throw ParseError("empty input: missing 'ising <n>' header");

    std::istringstream header(lines[0].text);
    std::string tag;
    header >> tag;
    if (tag != "ising") detail::parse_fail(lines[0].number, "expected 'ising <n>' header");
    const auto n = detail::read_token<std::uint64_t>(header, lines[0].number, "spin count");
    detail::expect_end(header, lines[0].number);

    IsingProblem p(n);
    std::set<std::uint32_t> seen_h;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen_j;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto line = lines[k].number;
        std::istringstream ls(lines[k].text);
        ls >> tag;
        if (tag == "h") {
            const auto i = detail::read_token<std::uint32_t>(ls, line, "spin index");
            const double v = detail::read_value(ls, line);
            detail::expect_end(ls, line);
            if (i >= n) detail::parse_fail(line, "spin index " + std::to_string(i) + " out of range");
            if (!seen_h.insert(i).second)
                detail::parse_fail(line, "duplicate field entry for spin " + std::to_string(i));
            p.set_field(i, v);
        } else if (tag == "J") {
            const auto i = detail::read_token<std::uint32_t>(ls, line, "spin index");
            const auto j = detail::read_token<std::uint32_t>(ls, line, "spin index");
            const double v = detail::read_value(ls, line);
            detail::expect_end(ls, line);
            if (i >= j) detail::parse_fail(line, "coupling requires i < j");
            if (j >= n) detail::parse_fail(line, "spin index " + std::to_string(j) + " out of range");
            if (!seen_j.insert({i, j}).second)
                detail::parse_fail(line, "duplicate coupling entry (" + std::to_string(i) + "," +
                                             std::to_string(j) + ")");
            p.add_coupling(i, j, v);
        } else {
            detail::parse_fail(line, "unknown record '" + tag + "'");
        }
    }
    return p;
}

inline void save_qubo(const QuboProblem& p, std::ostream& out) {
    out << "qubo " << p.size() << " " << detail::format_value(p.offset()) << "\n";
    for (const auto& c : p.entries())
        out << c.i << " " << c.j << " " << detail::format_value(c.value) << "\n";
}

inline QuboProblem load_qubo(std::istream& in) {
    const auto lines = detail::significant_lines(in);
    if (lines.empty()) throw ParseError("empty input: missing 'qubo <n> <offset>' header");

    std::istringstream header(lines[0].text);
    std::string tag;
    header >> tag;
    if (tag != "qubo") detail::parse_fail(lines[0].number, "expected 'qubo <n> <offset>' header");
    const auto n = detail::read_token<std::uint64_t>(header, lines[0].number, "variable count");
    const double offset = detail::read_value(header, lines[0].number);
    detail::expect_end(header, lines[0].number);

    QuboProblem p(n, offset);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto line = lines[k].number;
        std::istringstream ls(lines[k].text);
        const auto i = detail::read_token<std::uint32_t>(ls, line, "variable index");
        const auto j = detail::read_token<std::uint32_t>(ls, line, "variable index");
        const double v = detail::read_value(ls, line);
        detail::expect_end(ls, line);
        if (i > j) detail::parse_fail(line, "entry requires i <= j");
        if (j >= n) detail::parse_fail(line, "variable index " + std::to_string(j) + " out of range");
        if (!seen.insert({i, j}).second)
            detail::parse_fail(line, "duplicate entry (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
        p.add_entry(i, j, v);
    }
    return p;
}

namespace detail {

template <typename Problem, typename Saver>
inline void save_text_file(const Problem& p, const std::string& path, Saver saver) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    saver(p, out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

template <typename Loader>
inline auto load_text_file(const std::string& path, Loader loader) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    try {
        return loader(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace detail

inline void save_ising_file(const IsingProblem& p, const std::string& path) {
    detail::save_text_file(p, path, [](const IsingProblem& q, std::ostream& o) { save_ising(q, o); });
}
inline IsingProblem load_ising_file(const std::string& path) {
    return detail::load_text_file(path, [](std::istream& in) { return load_ising(in); });
}
inline void save_qubo_file(const QuboProblem& p, const std::string& path) {
    detail::save_text_file(p, path, [](const QuboProblem& q, std::ostream& o) { save_qubo(q, o); });
}
inline QuboProblem load_qubo_file(const std::string& path) {
    return detail::load_text_file(path, [](std::istream& in) { return load_qubo(in); });
}

}  // namespace qtrack
