#include "pencil/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace pencil {

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("rat_from_double: value is not finite");
    }
    return Rat(x);
}

double rat_to_double(const Rat& x) {
    return x.convert_to<double>();
}

Rat round_to_denominator(const Rat& x, const BigInt& max_den) {
    if (max_den < 1) {
        throw std::invalid_argument("round_to_denominator: max_den must be >= 1");
    }
    if (x < 0) {
        return -round_to_denominator(-x, max_den);
    }
    if (denominator(x) <= max_den) {
        return x;
    }

    // Continued-fraction walk. h/k track the current convergent, (p,q) the
    // remaining tail. Stops at the first convergent whose denominator would
    // exceed max_den; the answer is that convergent's predecessor or the
    // best semiconvergent between the two.
    BigInt p = numerator(x), q = denominator(x);
    BigInt h_prev = 0, k_prev = 1; // convergent -2
    BigInt h_cur = 1, k_cur = 0;   // convergent -1

    // After the first step h_cur/k_cur is convergent 0 = floor(x)/1.
    while (q != 0) {
        BigInt a = p / q;
        BigInt h_next = a * h_cur + h_prev;
        BigInt k_next = a * k_cur + k_prev;
        if (k_next > max_den) {
            // Best semiconvergent with denominator <= max_den.
            BigInt t = (max_den - k_prev) / k_cur;
            Rat conv(h_cur, k_cur);
            if (t < 1) {
                return conv;
            }
            Rat semi(t * h_cur + h_prev, t * k_cur + k_prev);
            Rat d_conv = abs(x - conv);
            Rat d_semi = abs(x - semi);
            if (d_semi < d_conv) {
                return semi;
            }
            return conv; // ties go to the smaller denominator
        }
        h_prev = h_cur;
        k_prev = k_cur;
        h_cur = h_next;
        k_cur = k_next;
        BigInt r = p - a * q;
        p = q;
        q = r;
    }
    return Rat(h_cur, k_cur);
}

Rat round_to_grid(const Rat& x, const BigInt& den) {
    if (den < 1) throw std::invalid_argument("round_to_grid: den must be >= 1");
    // nearest integer to x * den, ties to even
    Rat scaled = x * den;
    BigInt p = numerator(scaled), q = denominator(scaled);
    BigInt quot = p / q, rem = p % q; // truncation towards zero
    if (rem < 0) {
        quot -= 1;
        rem += q;
    }
    BigInt twice = 2 * rem;
    if (twice > q || (twice == q && quot % 2 != 0)) quot += 1;
    return Rat(quot, den);
}

std::string rat_to_string(const Rat& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        return Rat(BigInt(s));
    }
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("rat_from_string: zero denominator");
    }
    return Rat(num, den);
}

} // namespace pencil
