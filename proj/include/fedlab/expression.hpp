#ifndef FEDLAB_EXPRESSION_HPP
#define FEDLAB_EXPRESSION_HPP

#include <map>
#include <stdexcept>
#include <string>

#include <fedlab/chart_function.hpp>

namespace fedlab
{

class ParseError : public std::invalid_argument
{
public:
    ParseError(std::size_t pos, const std::string &what)
        : std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what), pos_(pos)
    {
    }
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Grammar: sums, products (explicit '*' or juxtaposition), '^' with integer exponents, parentheses,
/// rationals p/q, the unit i, pi, z, zbar (z1.., zbar1.. in higher dimension) and D = 1 + sum z zbar.
/// Division is allowed only by constants and by powers of D. Extra names resolve through `symbols`.
ChartFunction parse_expression(const std::string &text, int dim = 1,
                               const std::map<std::string, ChartFunction> &symbols = {});

} // namespace fedlab

#endif
