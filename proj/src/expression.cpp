#include <fedlab/expression.hpp>

#include <cctype>

namespace fedlab
{

namespace
{

class Parser
{
public:
    Parser(const std::string &text, int dim, const std::map<std::string, ChartFunction> &symbols)
        : s_(text), dim_(dim), symbols_(symbols)
    {
    }

    ChartFunction run()
    {
        ChartFunction f = sum();
        skip();
        if (pos_ != s_.size()) {
            throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
        }
        return f;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool starts_atom()
    {
        const char c = peek();
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
    }

    ChartFunction sum()
    {
        ChartFunction f = product();
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                f += product();
            } else if (c == '-') {
                ++pos_;
                f -= product();
            } else {
                return f;
            }
        }
    }

    ChartFunction product()
    {
        ChartFunction f = unary();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                f = f * unary();
            } else if (c == '/') {
                const std::size_t at = ++pos_;
                f = f * reciprocal(unary(), at);
            } else if (starts_atom()) {
                f = f * unary();
            } else {
                return f;
            }
        }
    }

    ChartFunction reciprocal(const ChartFunction &d, std::size_t at)
    {
        if (d.is_constant()) {
            const PiScalar v = d.constant_value();
            if (v.is_zero()) {
                throw ParseError(at, "division by zero");
            }
            if (!v.is_monomial()) {
                throw ParseError(at, "division by a non-monomial constant");
            }
            return ChartFunction(v.inverse());
        }
        // a pure power of D
        if (d.numerator().size() == 1 && d.numerator().begin()->first == FnKey{}) {
            const GaussQ c = d.numerator().begin()->second;
            return ChartFunction::d_power(d.denom_power(), dim_) * PiScalar(c.inverse());
        }
        for (int m = 1; m <= 64; ++m) {
            if (d == ChartFunction::d_power(m, dim_)) {
                return ChartFunction::d_power(-m, dim_);
            }
        }
        throw ParseError(at, "only constants and powers of D may appear in a denominator");
    }

    ChartFunction unary()
    {
        const char c = peek();
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

    ChartFunction power()
    {
        const std::size_t start = pos_;
        ChartFunction base = atom();
        if (peek() != '^') {
            return base;
        }
        ++pos_;
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        const std::size_t epos = pos_;
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            digits += s_[pos_++];
        }
        if (digits.empty()) {
            throw ParseError(epos, "integer exponent expected");
        }
        const unsigned e = static_cast<unsigned>(std::stoul(digits));
        if (!neg) {
            return base.pow(e);
        }
        return ChartFunction(1) * reciprocal(base.pow(e), start);
    }

    ChartFunction atom()
    {
        skip();
        const std::size_t start = pos_;
        if (pos_ >= s_.size()) {
            throw ParseError(pos_, "unexpected end of input");
        }
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ChartFunction f = sum();
            if (peek() != ')') {
                throw ParseError(pos_, "')' expected");
            }
            ++pos_;
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                digits += s_[pos_++];
            }
            return ChartFunction(GaussQ(mpq_class(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                name += s_[pos_++];
            }
            return named(name, start);
        }
        throw ParseError(start, std::string("unexpected '") + c + "'");
    }

    ChartFunction named(const std::string &name, std::size_t at)
    {
        if (auto it = symbols_.find(name); it != symbols_.end()) {
            return it->second;
        }
        if (name == "i") {
            return ChartFunction(GaussQ::i());
        }
        if (name == "pi") {
            return ChartFunction(PiScalar::pi());
        }
        if (name == "D") {
            return ChartFunction::d_power(1, dim_);
        }
        auto index_of = [&](const std::string &prefix) -> int {
            if (name == prefix) {
                return dim_ == 1 ? 0 : -2;
            }
            if (name.size() == prefix.size() + 1 && name.compare(0, prefix.size(), prefix) == 0 &&
                std::isdigit(static_cast<unsigned char>(name.back()))) {
                return name.back() - '1';
            }
            return -1;
        };
        for (const bool bar : {false, true}) {
            const int idx = index_of(bar ? "zbar" : "z");
            if (idx == -2) {
                throw ParseError(at, "'" + name + "' is ambiguous in dimension " + std::to_string(dim_));
            }
            if (idx >= 0) {
                if (idx >= dim_) {
                    throw ParseError(at, "coordinate '" + name + "' exceeds the dimension");
                }
                return bar ? ChartFunction::zbar(idx, dim_) : ChartFunction::z(idx, dim_);
            }
        }
        throw ParseError(at, "unknown symbol '" + name + "'");
    }

    const std::string &s_;
    std::size_t pos_ = 0;
    int dim_;
    const std::map<std::string, ChartFunction> &symbols_;
};

} // namespace

ChartFunction parse_expression(const std::string &text, int dim, const std::map<std::string, ChartFunction> &symbols)
{
    return Parser(text, dim, symbols).run();
}

} // namespace fedlab
