#pragma once

#include <functional>
#include <string>

namespace sz1d {

// Compiles an arithmetic expression in one variable into a callable.
// Supports + - * / ^ (right-assoc), parentheses, the constants pi and e,
// and the functions sin cos tan asin acos atan exp log ln sqrt abs
// sinh cosh tanh sech, plus two-argument pow/min/max. Throws
// Error(invalid_config) on parse failure.
std::function<double(double)> compile_expression(const std::string& text,
                                                 const std::string& variable);

}  // namespace sz1d
