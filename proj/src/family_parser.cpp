#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "epwind/error.hpp"
#include "epwind/family.hpp"

namespace epwind {
namespace {

// Recursive-descent parser for
//   family := '[' row (',' row)* ']'
//   row    := '[' poly (',' poly)* ']'
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := coeff ('*'? 'z' ('^' INT)?)? | 'z' ('^' INT)?
//   coeff  := FLOAT | FLOAT? 'i' | '(' ['+'|'-'] FLOAT ('+'|'-') FLOAT 'i' ')'
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::vector<std::vector<ComplexPoly>> parse_family() {
        std::vector<std::vector<ComplexPoly>> rows;
        expect('[', "expected '[' opening the matrix");
        rows.push_back(parse_row());
        while (accept(',')) rows.push_back(parse_row());
        expect(']', "expected ',' or ']' after row");
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        return rows;
    }

private:
    std::vector<ComplexPoly> parse_row() {
        std::vector<ComplexPoly> row;
        expect('[', "expected '[' opening a row");
        row.push_back(parse_poly());
        while (accept(',')) row.push_back(parse_poly());
        expect(']', "expected ',' or ']' after entry");
        return row;
    }

    ComplexPoly parse_poly() {
        std::vector<Complex> coeffs(PolyMatrixFamily::kMaxEntryDegree + 1);
        double sign = 1.0;
        if (accept('-')) {
            sign = -1.0;
        } else {
            accept('+');
        }
        add_term(coeffs, sign);
        while (true) {
            if (accept('+')) {
                add_term(coeffs, 1.0);
            } else if (accept('-')) {
                add_term(coeffs, -1.0);
            } else {
                break;
            }
        }
        return ComplexPoly(std::move(coeffs));
    }

    void add_term(std::vector<Complex>& coeffs, double sign) {
        skip_ws();
        Complex c{1.0};
        int degree = 0;
        if (peek() == 'z') {
            degree = parse_z_power();
        } else {
            c = parse_coeff();
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (peek() != 'z') fail("expected 'z' after '*'");
                degree = parse_z_power();
            } else if (peek() == 'z') {
                degree = parse_z_power();
            }
        }
        coeffs[static_cast<std::size_t>(degree)] += sign * c;
    }

    int parse_z_power() {
        ++pos_;  // 'z'
        skip_ws();
        if (peek() != '^') return 1;
        ++pos_;
        skip_ws();
        const std::size_t start = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer exponent after '^'");
        long value = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            value = std::min<long>(value * 10 + (peek() - '0'), 1000000);
            ++pos_;
        }
        if (value > PolyMatrixFamily::kMaxEntryDegree) {
            const auto [line, col] = location(start);
            throw DegreeLimitError("exponent " + std::to_string(value) + " at " + std::to_string(line) + ":" +
                                   std::to_string(col) + " exceeds the limit of " +
                                   std::to_string(PolyMatrixFamily::kMaxEntryDegree));
        }
        return static_cast<int>(value);
    }

    Complex parse_coeff() {
        skip_ws();
        const char ch = peek();
        if (ch == '(') {
            ++pos_;
            skip_ws();
            double s = 1.0;
            if (peek() == '-') {
                s = -1.0;
                ++pos_;
            } else if (peek() == '+') {
                ++pos_;
            }
            skip_ws();
            const double re = s * parse_float();
            skip_ws();
            double si;
            if (peek() == '+') {
                si = 1.0;
            } else if (peek() == '-') {
                si = -1.0;
            } else {
                fail("expected '+' or '-' inside complex coefficient");
            }
            ++pos_;
            skip_ws();
            const double im = si * parse_float();
            skip_ws();
            if (peek() != 'i') fail("expected 'i' after imaginary part");
            ++pos_;
            expect(')', "expected ')' closing complex coefficient");
            return {re, im};
        }
        if (ch == 'i') {
            ++pos_;
            return {0.0, 1.0};
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            const double v = parse_float();
            if (peek() == 'i') {
                ++pos_;
                return {0.0, v};
            }
            return {v, 0.0};
        }
        fail(ch == '\0' ? "unexpected end of input, expected a term" : "expected a number, 'i', '(' or 'z'");
    }

    double parse_float() {
        const std::size_t start = pos_;
        bool digits = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
            digits = true;
        }
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
                digits = true;
            }
        }
        if (!digits) {
            pos_ = start;
            fail("expected a decimal number");
        }
        if (peek() == 'e' || peek() == 'E') {
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        const std::string token(text_.substr(start, pos_ - start));
        const double v = std::strtod(token.c_str(), nullptr);
        if (!std::isfinite(v)) {
            pos_ = start;
            fail("coefficient is not finite");
        }
        return v;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (peek() == c && pos_ < text_.size()) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* message) {
        if (!accept(c)) fail(message);
    }

    std::pair<int, int> location(std::size_t at) const {
        int line = 1;
        int col = 1;
        for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
            const auto b = static_cast<unsigned char>(text_[k]);
            if (b == '\n') {
                ++line;
                col = 1;
            } else if ((b & 0xC0) != 0x80) {
                ++col;
            }
        }
        return {line, col};
    }

    [[noreturn]] void fail(const std::string& message) const {
        const auto [line, col] = location(pos_);
        throw SyntaxError(line, col, message);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

PolyMatrixFamily parse_family(std::string_view text) {
    if (text.empty()) throw SyntaxError(1, 1, "empty input");
    Parser parser(text);
    auto rows = parser.parse_family();
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw NonSquareError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                 " entries but the matrix has " + std::to_string(n) + " rows");
        }
    }
    return PolyMatrixFamily(std::move(rows), std::string(text));
}

}  // namespace epwind
