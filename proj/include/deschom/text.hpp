#pragma once

// Locale-independent number and token helpers shared by the file formats.

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace deschom::text {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double x) {
    if (x == 0.0) x = 0.0; // drop the sign of negative zero
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

inline std::optional<double> parse_double(std::string_view s) {
    double x = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) return std::nullopt;
    return x;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t x = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) return std::nullopt;
    return x;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

/// Splits on LF, dropping a trailing CR from each line.
inline std::vector<std::string_view> lines(std::string_view s) {
    std::vector<std::string_view> out;
    if (s.empty()) return out;
    auto parts = split(s, '\n');
    if (!parts.empty() && parts.back().empty()) parts.pop_back();
    for (auto p : parts) {
        if (!p.empty() && p.back() == '\r') p.remove_suffix(1);
        out.push_back(p);
    }
    return out;
}

inline std::string join_doubles(const std::vector<double>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += format_double(v[i]);
    }
    return out;
}

inline std::optional<std::vector<double>> parse_doubles(std::string_view s, char sep) {
    std::vector<double> out;
    for (auto part : split(s, sep)) {
        auto x = parse_double(trim(part));
        if (!x) return std::nullopt;
        out.push_back(*x);
    }
    return out;
}

} // namespace deschom::text
