#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>

#include "commdiag/errors.hpp"
#include "commdiag/generator.hpp"
#include "commdiag/matrix_io.hpp"
#include "commdiag/worked_examples.hpp"
#include "support.hpp"

using namespace commdiag;

namespace {

bool bitwise_equal(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return std::memcmp(a.entries().data(), b.entries().data(), a.entries().size_bytes()) == 0;
}

}  // namespace

TEST_SUITE("matrix-io") {

TEST_CASE("parse a 2x2 identity") { CHECK(parse_matrix("2 2\n1 0\n0 1\n") == Matrix::identity(2)); }

TEST_CASE("example 1 A written with 1+1i entries") {
    const char* text =
        "# A from example 1\n"
        "3 3\n"
        "1+1i 1 1\n"
        "1 1+1i 1\n"
        "1 1 1+1i\n";
    CHECK(parse_matrix(text) == worked::ex1_a());
}

TEST_CASE("malformed entry reports its position") {
    try {
        parse_matrix("2 2\n1 bogus\n0 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
        CHECK(std::string(e.what()).find("row 1, entry 2") != std::string::npos);
    }
}

TEST_CASE("complex literal forms") {
    CHECK(parse_complex("3") == Complex(3.0, 0.0));
    CHECK(parse_complex("-2.5") == Complex(-2.5, 0.0));
    CHECK(parse_complex("+4i") == Complex(0.0, 4.0));
    CHECK(parse_complex("-1e-3i") == Complex(0.0, -1e-3));
    CHECK(parse_complex("1.5-2i") == Complex(1.5, -2.0));
    CHECK(parse_complex("-1E2+.5i") == Complex(-100.0, 0.5));
    CHECK(parse_complex("2e+3-4e-2i") == Complex(2000.0, -0.04));

    for (const char* bad : {"", "i", "1+i", "1+2", "1+2j", "--1", "1 2", "nan", "inf", "1e999", "0x10", "2i3", "1+2i+3i"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_complex(bad), std::invalid_argument);
    }
}

TEST_CASE("layout details") {
    SUBCASE("CRLF, comments, blank lines and a BOM are accepted") {
        const std::string text = "\xEF\xBB\xBF# header comment\r\n\r\n2 1\r\n# between rows\r\n5\r\n  -3i  \r\n";
        CHECK(parse_matrix(text) == Matrix{{5}, {Complex(0, -3)}});
    }
    SUBCASE("tabs separate entries") { CHECK(parse_matrix("1 2\n1\t2\n") == Matrix{{1, 2}}); }
    SUBCASE("missing final newline") { CHECK(parse_matrix("1 1\n7") == Matrix{{7}}); }
}

TEST_CASE("structural errors") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_matrix(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("") == 1);
    CHECK(line_of("# only a comment\n") == 2);
    CHECK(line_of("2\n1 0\n") == 1);
    CHECK(line_of("2 x\n") == 1);
    CHECK(line_of("0 2\n") == 1);
    CHECK(line_of("2 2\n1 0\n0 1 5\n") == 3);
    CHECK(line_of("2 2\n1 0\n") != 0);
    CHECK(line_of("1 1\n1\n2\n") == 3);
    CHECK(line_of("1 1\nnan\n") == 2);
}

TEST_CASE("render then parse is bitwise stable") {
    SUBCASE("random complex matrices") {
        Rng rng(77);
        for (int trial = 0; trial < 20; ++trial) {
            Matrix m = random_gaussian(3, 4, rng);
            m(0, 0) *= 1e-300;
            m(1, 1) *= 1e300;
            const Matrix back = parse_matrix(render_matrix(m));
            CHECK(bitwise_equal(back, m));
        }
    }
    SUBCASE("signed zeros and subnormals") {
        const double tiny = std::numeric_limits<double>::denorm_min();
        const Matrix m{{Complex(-0.0, 0.0), Complex(0.0, -0.0)},
                       {Complex(-0.0, -0.0), Complex(tiny, -tiny)},
                       {Complex(std::numeric_limits<double>::max(), 0.1), Complex(1.0 / 3.0, 0)}};
        CHECK(bitwise_equal(parse_matrix(render_matrix(m)), m));
    }
    SUBCASE("comments are written with a leading '# '") {
        const std::string text = render_matrix(Matrix::identity(1), {"hello"});
        CHECK(text == "# hello\n1 1\n1\n");
    }
}

TEST_CASE("file round trip and I/O errors") {
    const auto dir = std::filesystem::temp_directory_path() / "commdiag_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "m").string();
    write_matrix_file(path, worked::ex1_v_a(), {"V_A"});
    const MatrixFile f = read_matrix_file(path);
    CHECK(f.path == path);
    CHECK(bitwise_equal(f.parsed, worked::ex1_v_a()));

    CHECK_THROWS_AS(read_matrix_file((dir / "does_not_exist").string()), IoError);
    CHECK_THROWS_AS(write_matrix_file((dir / "no_such_dir" / "x").string(), Matrix::identity(1)), IoError);
    std::filesystem::remove_all(dir);
}

}
