#pragma once

// Small tokenizing helpers shared by the text file readers.

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hwpoly/error.hpp"

namespace hwpoly::detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        auto end = s.find(sep, pos);
        if (end == std::string_view::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, end - pos));
        pos = end + 1;
    }
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t'))
            ++pos;
        auto start = pos;
        while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t')
            ++pos;
        if (pos > start)
            out.push_back(s.substr(start, pos - start));
    }
    return out;
}

template <class T = int>
T parse_int(std::string_view tok, const std::string& source, std::size_t line) {
    tok = trim(tok);
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(source, line, "bad number '" + std::string(tok) + "'");
    return value;
}

/// "key=123"
template <class T = int>
T parse_key_int(std::string_view tok, std::string_view key, const std::string& source, std::size_t line) {
    if (tok.size() <= key.size() || tok.substr(0, key.size()) != key || tok[key.size()] != '=')
        throw ParseError(source, line, "expected '" + std::string(key) + "=<value>'");
    return parse_int<T>(tok.substr(key.size() + 1), source, line);
}

}  // namespace hwpoly::detail
