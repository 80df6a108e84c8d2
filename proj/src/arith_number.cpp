#include "arithlift/arith_number.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"

namespace arithlift {

ArithmeticNumber ArithmeticNumber::log_prime(long p, const Rat& coeff) {
    if (!is_prime(p)) throw DomainError("log_prime of non-prime " + std::to_string(p));
    ArithmeticNumber a;
    a.logp_[p] = coeff;
    a.prune();
    return a;
}

ArithmeticNumber ArithmeticNumber::euler_gamma(const Rat& coeff) {
    ArithmeticNumber a;
    a.gamma_ = coeff;
    return a;
}

ArithmeticNumber ArithmeticNumber::log_pi(const Rat& coeff) {
    ArithmeticNumber a;
    a.logpi_ = coeff;
    return a;
}

ArithmeticNumber ArithmeticNumber::lchi(const Rat& coeff) {
    ArithmeticNumber a;
    a.lchi_ = coeff;
    return a;
}

ArithmeticNumber ArithmeticNumber::log_of(const Rat& n) {
    if (n == 0) throw DomainError("log of zero");
    ArithmeticNumber a;
    for (auto& [p, e] : factorize(to_long(n.get_num()))) a.logp_[p] += e;
    if (n.get_den() != 1)
        for (auto& [p, e] : factorize(to_long(n.get_den()))) a.logp_[p] -= e;
    a.prune();
    return a;
}

Rat ArithmeticNumber::log_coeff(long p) const {
    auto it = logp_.find(p);
    return it == logp_.end() ? Rat(0) : it->second;
}

bool ArithmeticNumber::is_zero() const {
    return constant_ == 0 && logp_.empty() && gamma_ == 0 && logpi_ == 0 && lchi_ == 0;
}

bool ArithmeticNumber::supported_on_log_primes() const {
    return constant_ == 0 && gamma_ == 0 && logpi_ == 0 && lchi_ == 0;
}

void ArithmeticNumber::prune() {
    for (auto it = logp_.begin(); it != logp_.end();) {
        if (it->second == 0)
            it = logp_.erase(it);
        else
            ++it;
    }
}

ArithmeticNumber& ArithmeticNumber::operator+=(const ArithmeticNumber& o) {
    constant_ += o.constant_;
    for (auto& [p, c] : o.logp_) logp_[p] += c;
    gamma_ += o.gamma_;
    logpi_ += o.logpi_;
    lchi_ += o.lchi_;
    prune();
    return *this;
}

ArithmeticNumber& ArithmeticNumber::operator-=(const ArithmeticNumber& o) { return *this += -o; }

ArithmeticNumber& ArithmeticNumber::operator*=(const Rat& c) {
    constant_ *= c;
    for (auto& [p, v] : logp_) v *= c;
    gamma_ *= c;
    logpi_ *= c;
    lchi_ *= c;
    prune();
    return *this;
}

bool ArithmeticNumber::operator==(const ArithmeticNumber& o) const {
    return constant_ == o.constant_ && logp_ == o.logp_ && gamma_ == o.gamma_ && logpi_ == o.logpi_ &&
           lchi_ == o.lchi_;
}

long double ArithmeticNumber::evaluate_ld(long double lchi_value) const {
    long double v = to_long_double(constant_);
    for (auto& [p, c] : logp_) v += to_long_double(c) * std::log(static_cast<long double>(p));
    v += to_long_double(gamma_) * 0.577215664901532860606512090082402431L;
    v += to_long_double(logpi_) * std::log(static_cast<long double>(std::numbers::pi_v<long double>));
    v += to_long_double(lchi_) * lchi_value;
    return v;
}

double ArithmeticNumber::evaluate(double lchi_value) const {
    return static_cast<double>(evaluate_ld(lchi_value));
}

namespace {

void append_term(std::ostringstream& os, bool& first, const Rat& c, const std::string& sym) {
    if (c == 0) return;
    Rat a = c;
    if (first) {
        if (a < 0) {
            os << "-";
            a = -a;
        }
    } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
    }
    first = false;
    if (sym.empty()) {
        os << arithlift::to_string(a);
    } else if (a == 1) {
        os << sym;
    } else {
        os << arithlift::to_string(a) << "*" << sym;
    }
}

}  // namespace

std::string ArithmeticNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    append_term(os, first, constant_, "");
    for (auto& [p, c] : logp_) append_term(os, first, c, "log(" + std::to_string(p) + ")");
    append_term(os, first, gamma_, "gamma");
    append_term(os, first, logpi_, "log(pi)");
    append_term(os, first, lchi_, "LCHI");
    if (first) return "0";
    return os.str();
}

}  // namespace arithlift
