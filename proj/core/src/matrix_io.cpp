#include "commdiag/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "commdiag/errors.hpp"

namespace commdiag {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split_whitespace(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

// Unsigned decimal/exponent number at the front of s; returns chars consumed.
std::size_t read_unsigned(std::string_view s, double& value) {
    if (s.empty() || !(std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.')) {
        throw std::invalid_argument("expected a number");
    }
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value, std::chars_format::general);
    if (ec == std::errc::result_out_of_range) throw std::invalid_argument("number out of range");
    if (ec != std::errc{}) throw std::invalid_argument("expected a number");
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite number");
    return static_cast<std::size_t>(end - s.data());
}

std::size_t read_signed(std::string_view s, double& value) {
    bool negative = false;
    std::size_t pos = 0;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        pos = 1;
    }
    pos += read_unsigned(s.substr(pos), value);
    if (negative) value = -value;
    return pos;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

Complex parse_complex(std::string_view token) {
    double first = 0.0;
    std::size_t pos = read_signed(token, first);
    if (pos == token.size()) return {first, 0.0};
    if (token[pos] == 'i' && pos + 1 == token.size()) return {0.0, first};
    if (token[pos] != '+' && token[pos] != '-') throw std::invalid_argument("unexpected character");
    double second = 0.0;
    pos += read_signed(token.substr(pos), second);
    if (pos + 1 != token.size() || token[pos] != 'i') throw std::invalid_argument("imaginary part must end in 'i'");
    return {first, second};
}

std::string render_complex(Complex z) {
    const double re = z.real();
    const double im = z.imag();
    if (im == 0.0 && !std::signbit(im)) return format_double(re);
    if (re == 0.0 && !std::signbit(re)) return format_double(im) + "i";
    return format_double(re) + (std::signbit(im) ? "-" : "+") + format_double(std::abs(im)) + "i";
}

Matrix parse_matrix(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::size_t rows = 0;
    std::size_t cols = 0;
    bool have_header = false;
    std::vector<Complex> entries;
    std::size_t row = 0;
    std::size_t line_no = 0;

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const auto tokens = split_whitespace(line);
        if (tokens.empty() || tokens.front().text.front() == '#') {
            if (end == text.size()) break;
            continue;
        }

        if (!have_header) {
            if (tokens.size() != 2) throw ParseError(line_no, tokens.front().column, "header must be 'rows cols'");
            std::size_t dims[2] = {0, 0};
            for (int k = 0; k < 2; ++k) {
                const auto& t = tokens[k];
                const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), dims[k]);
                if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || dims[k] == 0) {
                    throw ParseError(line_no, t.column, "dimension '" + std::string(t.text) + "' is not a positive integer");
                }
            }
            rows = dims[0];
            cols = dims[1];
            entries.reserve(rows * cols);
            have_header = true;
        } else {
            if (row == rows) throw ParseError(line_no, tokens.front().column, "more rows than declared");
            if (tokens.size() != cols) {
                throw ParseError(line_no, tokens.front().column,
                                 "row " + std::to_string(row + 1) + " has " + std::to_string(tokens.size()) +
                                     " entries, expected " + std::to_string(cols));
            }
            for (std::size_t e = 0; e < tokens.size(); ++e) {
                try {
                    entries.push_back(parse_complex(tokens[e].text));
                } catch (const std::invalid_argument& err) {
                    throw ParseError(line_no, tokens[e].column,
                                     "row " + std::to_string(row + 1) + ", entry " + std::to_string(e + 1) + ": '" +
                                         std::string(tokens[e].text) + "' is not a complex literal (" + err.what() + ")");
                }
            }
            ++row;
        }
        if (end == text.size()) break;
    }
    if (!have_header) throw ParseError(line_no, 1, "missing 'rows cols' header");
    if (row != rows) {
        throw ParseError(line_no, 1, "expected " + std::to_string(rows) + " rows, found " + std::to_string(row));
    }
    return Matrix(rows, cols, std::move(entries));
}

std::string render_matrix(const Matrix& m, const std::vector<std::string>& comments) {
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += render_complex(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return buf.str();
}

MatrixFile read_matrix_file(const std::string& path) {
    return {path, parse_matrix(read_text_file(path))};
}

void write_matrix_file(const std::string& path, const Matrix& m, const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << render_matrix(m, comments);
    if (!out) throw IoError("error writing '" + path + "'");
}

}  // namespace commdiag
