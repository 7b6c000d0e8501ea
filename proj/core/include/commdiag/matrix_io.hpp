#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "commdiag/matrix.hpp"

namespace commdiag {

// Plain-text matrix format:
//
//   # comment lines start with '#'
//   rows cols
//   <cols entries>      (one line per row)
//
// Entries are whitespace separated complex literals: `a`, `bi` or `a+bi` /
// `a-bi`, each with an optional leading sign and decimal or exponent
// notation. Blank lines are skipped; `\r\n` is accepted and `\n` emitted.
//
// Throws ParseError with the 1-based line and character column; entry
// errors also name the matrix row and entry number.
Matrix parse_matrix(std::string_view text);

// Parses one complex literal; throws std::invalid_argument when malformed.
Complex parse_complex(std::string_view token);

// Shortest form that reproduces the value bitwise (17 significant digits).
std::string render_complex(Complex z);

// parse_matrix(render_matrix(m)) == m bitwise. Each comment line is
// emitted with a leading "# ".
std::string render_matrix(const Matrix& m, const std::vector<std::string>& comments = {});

struct MatrixFile {
    std::string path;
    Matrix parsed;
};

// Throws IoError when the file cannot be read, ParseError when malformed.
MatrixFile read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& m, const std::vector<std::string>& comments = {});

// Raw file contents; IoError on failure.
std::string read_text_file(const std::string& path);

}  // namespace commdiag
