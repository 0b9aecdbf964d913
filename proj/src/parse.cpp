#include "superquant/parse.hpp"

#include "superquant/errors.hpp"

#include <cctype>
#include <string>

namespace superquant {

namespace {

class Parser {
  public:
    Parser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

    ParsedExpr run() {
        ParsedExpr out;
        out.value = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        out.odd_square = odd_square_;
        return out;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("parse error at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "': " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool starts_primary(char c) const {
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
               c == '(';
    }

    SuperFunction expression() {
        SuperFunction acc(chart_);
        bool first = true;
        for (;;) {
            char c = peek();
            int sign = 1;
            if (c == '+' || c == '-') {
                sign = c == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            SuperFunction t = term();
            acc += sign < 0 ? -t : t;
            first = false;
        }
        return acc;
    }

    SuperFunction term() {
        SuperFunction acc = unary();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = multiply(acc, unary(), &odd_square_);
            } else if (c == '/') {
                ++pos_;
                SuperFunction d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division is only by nonzero constants");
                acc *= Rational(1 / d.constant_term());
            } else if (starts_primary(c)) {
                acc = multiply(acc, power(), &odd_square_);
            } else {
                return acc;
            }
        }
    }

    SuperFunction unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    SuperFunction power() {
        std::size_t start = pos_;
        auto [base, may_raise] = primary();
        if (peek() != '^') return base;
        ++pos_;
        skip_space();
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (digits == pos_) fail("'^' needs a nonnegative integer exponent");
        if (!may_raise) {
            pos_ = start;
            fail("'^' is only allowed on even coordinates, parameters, literals or even groups");
        }
        unsigned long e = std::stoul(std::string(text_.substr(digits, pos_ - digits)));
        SuperFunction r = SuperFunction::constant(chart_, 1);
        for (unsigned long i = 0; i < e; ++i) r = r * base;
        return r;
    }

    std::pair<SuperFunction, bool> primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            SuperFunction inner = expression();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            bool even = inner.parity() == 0;
            return {inner, even};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            Rational q{mpz_class{std::string(text_.substr(start, pos_ - start))}};
            return {SuperFunction::constant(chart_, q), true};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (auto i = chart_->coordinate_index(name))
                return {SuperFunction::coordinate(chart_, *i), chart_->parity(*i) == 0};
            if (auto p = chart_->param_index(name)) return {SuperFunction::param(chart_, *p), true};
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const Chart& chart_;
    std::size_t pos_ = 0;
    bool odd_square_ = false;
};

} // namespace

ParsedExpr parse_expression(std::string_view text, const Chart& chart) { return Parser(text, chart).run(); }

SuperFunction parse_expr(std::string_view text, const Chart& chart) { return parse_expression(text, chart).value; }

} // namespace superquant
