#include "bellforge/rational.hpp"

#include <cctype>

namespace bellforge {

namespace {

// Decimal (optionally scientific) literal -> exact rational.
std::optional<mpq_class> decimal_to_mpq(const std::string& s) {
    std::string digits;
    long exp10 = 0;
    bool neg = false, seen_digit = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        digits += s[i];
        seen_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
        for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            digits += s[i];
            --exp10;
            seen_digit = true;
        }
    }
    if (!seen_digit) return std::nullopt;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        if (i >= s.size()) return std::nullopt;
        long e = 0;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i)
            e = e * 10 + (s[i] - '0');
        exp10 += eneg ? -e : e;
    }
    if (i != s.size()) return std::nullopt;
    // Base must be explicit: the string constructor auto-detects and would
    // read a leading zero (e.g. "025" from "0.25") as octal.
    mpz_class num(digits.empty() ? "0" : digits, 10);
    if (neg) num = -num;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 < 0 ? mpq_class(num, pow10) : mpq_class(num * pow10, 1);
    q.canonicalize();
    return q;
}

}  // namespace

std::optional<Rat> Rat::try_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0) return std::nullopt;
        if (den.set_str(s.substr(slash + 1), 10) != 0) return std::nullopt;
        if (den == 0) return std::nullopt;
        mpq_class q(num, den);
        q.canonicalize();
        return Rat(q);
    }
    if (auto q = decimal_to_mpq(s)) return Rat(*q);
    return std::nullopt;
}

Rat Rat::parse(const std::string& s) {
    if (auto r = try_parse(s)) return *r;
    throw std::invalid_argument("Rat: cannot parse '" + s + "'");
}

bool Rat::fits_int64(std::int64_t& num, std::int64_t& den) const {
    if (!v_.get_num().fits_slong_p() || !v_.get_den().fits_slong_p()) return false;
    num = v_.get_num().get_si();
    den = v_.get_den().get_si();
    return true;
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat abs(const Rat& r) { return r < Rat(0) ? -r : r; }

}  // namespace bellforge
