#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace atspfw {

/// Reads the matrix text format:
///
///   # comment lines start with '#'
///   n
///   n lines of n tokens, each a signed decimal integer or INF
///
/// Diagonal tokens must be INF. Line and column numbers in errors are 1-based;
/// the column is the character position of the offending token.
inline CostMatrix parse_matrix(std::string_view text) {
    struct Token {
        std::string_view text;
        std::size_t column;
    };
    std::vector<std::pair<std::size_t, std::vector<Token>>> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        pos = end + 1;

        std::vector<Token> tokens;
        for (std::size_t c = 0; c < line.size();) {
            if (line[c] == ' ' || line[c] == '\t') {
                ++c;
                continue;
            }
            std::size_t e = c;
            while (e < line.size() && line[e] != ' ' && line[e] != '\t') ++e;
            tokens.push_back({line.substr(c, e - c), c + 1});
            c = e;
        }
        if (tokens.empty() || tokens.front().text.front() == '#') continue;
        lines.emplace_back(line_no, std::move(tokens));
    }

    auto integer = [](std::string_view s, std::int64_t &out) {
        const char *first = s.data();
        if (!s.empty() && s.front() == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
        return ec == std::errc() && ptr == s.data() + s.size();
    };

    if (lines.empty()) throw ParseError(line_no, 1, "missing dimension line");
    const auto &[dim_line, dim_tokens] = lines.front();
    std::int64_t n = 0;
    if (dim_tokens.size() != 1 || !integer(dim_tokens[0].text, n))
        throw ParseError(dim_line, dim_tokens[0].column, "expected the matrix dimension");
    if (n < 2) throw DimensionError("matrix dimension must be at least 2, got " + std::to_string(n));
    const auto size = static_cast<std::size_t>(n);
    if (lines.size() - 1 != size)
        throw DimensionError("expected " + std::to_string(size) + " rows, found " + std::to_string(lines.size() - 1));

    SquareMatrix<Cost> costs(size, kInfinite);
    for (std::size_t i = 0; i < size; ++i) {
        const auto &[ln, tokens] = lines[i + 1];
        if (tokens.size() != size)
            throw DimensionError("row " + std::to_string(i + 1) + " (line " + std::to_string(ln) + ") has " +
                                 std::to_string(tokens.size()) + " entries, expected " + std::to_string(size));
        for (std::size_t j = 0; j < size; ++j) {
            const Token &t = tokens[j];
            if (t.text == "INF") {
                costs(i, j) = kInfinite;
                continue;
            }
            std::int64_t v = 0;
            if (!integer(t.text, v))
                throw ParseError(ln, t.column, "invalid token '" + std::string(t.text) + "'");
            if (i == j) throw ParseError(ln, t.column, "diagonal entry must be INF");
            costs(i, j) = v;
        }
    }
    return CostMatrix(std::move(costs));
}

inline CostMatrix load_matrix(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

/// Inverse of parse_matrix.
inline std::string format_matrix(const CostMatrix &m) {
    std::string out = std::to_string(m.size()) + "\n";
    for (Vertex i = 0; i < m.size(); ++i) {
        for (Vertex j = 0; j < m.size(); ++j) {
            if (j) out += ' ';
            out += m(i, j).to_string();
        }
        out += '\n';
    }
    return out;
}

} // namespace atspfw
