#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace pencil {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact rational value of a finite double (every finite double is p/2^k).
// Throws std::invalid_argument on NaN or infinity.
Rat rat_from_double(double x);

double rat_to_double(const Rat& x);

// Nearest rational to x among all p/q with 1 <= q <= max_den, found by
// walking the continued-fraction convergents. An exact tie between the two
// candidates resolves to the one with the smaller denominator.
Rat round_to_denominator(const Rat& x, const BigInt& max_den);

// Nearest multiple of 1/den (ties to the even numerator). Reduced results
// have denominators dividing den, which keeps the common multiple of any
// family of such values at most den.
Rat round_to_grid(const Rat& x, const BigInt& den);

// "num/den" with den > 0, always slash-separated ("1/1", "-3/7", ...).
std::string rat_to_string(const Rat& x);

// Parses "num/den" or a bare integer "num".
Rat rat_from_string(const std::string& s);

} // namespace pencil
