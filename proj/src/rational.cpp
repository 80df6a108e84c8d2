#include "arithlift/rational.hpp"

#include <cctype>

#include "arithlift/errors.hpp"

namespace arithlift {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Int parse_integer(const std::string& s) {
    std::string body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        neg = body[0] == '-';
        body = body.substr(1);
    }
    if (!all_digits(body)) throw ParseError("not an integer: '" + s + "'");
    Int v(body, 10);
    return neg ? Int(-v) : v;
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

Rat parse_rational(const std::string& raw) {
    std::string text = trim(raw);
    if (text.empty()) throw ParseError("empty rational");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num = parse_integer(trim(text.substr(0, slash)));
        Int den = parse_integer(trim(text.substr(slash + 1)));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string ip = text.substr(0, dot);
        std::string fp = text.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
        if (ip.empty()) ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
            throw ParseError("bad decimal '" + text + "'");
        Int den = 1;
        for (size_t i = 0; i < fp.size(); ++i) den *= 10;
        Int num = Int(ip + fp, 10);
        Rat r(neg ? Int(-num) : num, den);
        r.canonicalize();
        return r;
    }
    return Rat(parse_integer(text));
}

std::string to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rat frac(const Rat& x) { return x - Rat(floor_rat(x)); }

long valuation(const Int& x, long p) {
    if (x == 0) throw DomainError("valuation of zero");
    Int v = abs(x);
    long e = 0;
    while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) {
        v /= p;
        ++e;
    }
    return e;
}

long valuation(const Rat& x, long p) {
    if (x == 0) throw DomainError("valuation of zero");
    return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

double to_double(const Rat& x) { return x.get_d(); }

long double to_long_double(const Rat& x) {
    // Split into integer and fractional part to keep long double precision for
    // moderately sized numerators.
    Int q = floor_rat(x);
    Rat f = x - Rat(q);
    Int scaled = floor_rat(f * Rat(Int(1) << 62));
    long double fl = static_cast<long double>(scaled.get_ui()) / static_cast<long double>(1ULL << 62);
    Rat rest = f - Rat(scaled, Int(1) << 62);
    fl += static_cast<long double>(rest.get_d());
    return static_cast<long double>(q.get_d()) + fl;
}

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw DomainError("integer too large: " + x.get_str());
    return x.get_si();
}

Rat rat_pow(const Rat& base, long e) {
    Rat r = 1;
    Rat b = base;
    long k = e < 0 ? -e : e;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    if (e < 0) {
        if (r == 0) throw DomainError("zero to a negative power");
        r = 1 / r;
    }
    return r;
}

}  // namespace arithlift
