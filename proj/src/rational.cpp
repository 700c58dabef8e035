#include "revlw/rational.hpp"

#include <regex>

namespace revlw {

Interval sqrt_enclosure(const Rational& x, unsigned bits) {
    if (x < 0) throw PreconditionError("sqrt_enclosure: negative argument");
    if (x == 0) return {0, 0};

    // sqrt(p/q) = sqrt(p*q)/q; scale p*q by 4^k so the integer square root
    // carries at least `bits` significant bits, giving relative width 1/s.
    const Integer p = boost::multiprecision::numerator(x);
    const Integer q = boost::multiprecision::denominator(x);
    const Integer pq = p * q;

    long msb = static_cast<long>(boost::multiprecision::msb(pq));
    long k = (2 * static_cast<long>(bits) + 2 - msb) / 2 + 1;
    if (k < 0) k = 0;

    const Integer scaled = pq << (2 * k);
    const Integer s = boost::multiprecision::sqrt(scaled);
    const Integer den = q << k;

    if (s * s == scaled) {
        Rational exact(s, den);
        return {exact, exact};
    }
    return {Rational(s, den), Rational(s + 1, den)};
}

Rational parse_rational(const std::string& s) {
    static const std::regex re(R"(^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$)");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw ParseError("not a rational: \"" + s + "\"");
    // GMP rejects an explicit leading '+', so strip it before converting.
    const auto to_integer = [](std::string digits) {
        if (!digits.empty() && digits.front() == '+') digits.erase(digits.begin());
        return Integer(digits);
    };
    const Integer num = to_integer(m[1].str());
    Integer den = 1;
    if (m[2].matched) {
        den = to_integer(m[2].str());
        if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
    }
    return Rational(num, den);
}

std::string format_rational(const Rational& x) {
    const Integer den = boost::multiprecision::denominator(x);
    std::string s = boost::multiprecision::numerator(x).str();
    if (den != 1) s += "/" + den.str();
    return s;
}

VecD to_double(const VecQ& v) {
    VecD out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
    return out;
}

MatD to_double(const MatQ& m) {
    MatD out(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = to_double(m(i, j));
    return out;
}

VecQ round_dyadic(const VecD& v, unsigned bits) {
    VecQ out(v.size());
    const double scale = std::ldexp(1.0, static_cast<int>(bits));
    const Integer den = Integer(1) << bits;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double scaled = v[i] * scale;
        if (!std::isfinite(scaled)) throw PreconditionError("round_dyadic: non-finite entry");
        Integer num(static_cast<long long>(std::llround(scaled)));
        out[i] = Rational(num, den);
    }
    return out;
}

Rational euler_upper_bound() {
    // Truncated series plus a remainder bound: e = sum 1/k! + R, R < 2/(K+1)!.
    Rational sum = 0, term = 1;
    constexpr unsigned K = 22;  // 23! ~ 2^74, comfortably past 2^-50
    for (unsigned k = 0; k <= K; ++k) {
        sum += term;
        term /= (k + 1);
    }
    return sum + 2 * term;
}

}  // namespace revlw
