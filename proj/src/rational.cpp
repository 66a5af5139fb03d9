#include "maxplus/rational.hpp"

#include <cctype>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rat parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rat magnitude;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        std::string_view num = body.substr(0, slash);
        std::string_view den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw ParseError("invalid rational '" + std::string(text) + "'");
        }
        Int numerator{std::string(num)};
        Int denominator{std::string(den)};
        if (denominator == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        magnitude = Rat(numerator) / Rat(denominator);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = body.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) {
            throw ParseError("invalid decimal '" + std::string(text) + "'");
        }
        Int scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Int digits = Int{std::string(whole)} * scale + Int{std::string(frac)};
        magnitude = Rat(digits) / Rat(scale);
    } else {
        if (!all_digits(body)) {
            throw ParseError("invalid number '" + std::string(text) + "'");
        }
        Int digits{std::string(body)};
        magnitude = Rat(digits);
    }
    return negative ? Rat(-magnitude) : magnitude;
}

std::string rat_str(const Rat& value) {
    return value.get_str();
}

std::string decimal_str(const Rat& value) {
    const Int& den = value.get_den();
    unsigned long twos = 0;
    unsigned long fives = 0;
    Int rest = den;
    while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1) {
        return rat_str(value);
    }
    unsigned long digits = twos > fives ? twos : fives;
    if (digits == 0) {
        return value.get_num().get_str();
    }
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Int scaled = value.get_num() * (scale / den);
    bool negative = scaled < 0;
    std::string s = Int(abs(scaled)).get_str();
    if (s.size() <= digits) {
        s.insert(0, digits + 1 - s.size(), '0');
    }
    s.insert(s.size() - digits, ".");
    return negative ? "-" + s : s;
}

Int rat_floor(const Rat& value) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

Int rat_ceil(const Rat& value) {
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

bool is_integer(const Rat& value) {
    return value.get_den() == 1;
}

Rat simplest_in_interval(const Rat& lo, const Rat& hi) {
    if (lo > hi) {
        throw DomainError("simplest_in_interval: empty interval");
    }
    if (lo <= 0 && 0 <= hi) {
        return Rat(0);
    }
    if (hi < 0) {
        return -simplest_in_interval(-hi, -lo);
    }
    // 0 < lo <= hi: peel off the integer part and recurse on the reciprocal.
    Int fl = rat_floor(lo);
    if (lo == Rat(fl)) {
        return lo;
    }
    if (hi >= Rat(fl) + 1) {
        return Rat(fl) + 1;
    }
    Rat lo_frac = lo - Rat(fl);
    Rat hi_frac = hi - Rat(fl);
    return Rat(fl) + 1 / simplest_in_interval(1 / hi_frac, 1 / lo_frac);
}

} // namespace maxplus
