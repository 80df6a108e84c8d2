#include "arithlift/numtheory.hpp"

#include <algorithm>
#include <cstdlib>

#include "arithlift/errors.hpp"

namespace arithlift {

bool is_prime(long n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
    if (n == 0) throw DomainError("factorize(0)");
    n = std::labs(n);
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<long> prime_divisors(long n) {
    std::vector<long> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<long> prime_support(const Rat& x) {
    if (x == 0) throw DomainError("prime_support(0)");
    std::vector<long> out = prime_divisors(to_long(x.get_num()));
    for (long p : prime_divisors(to_long(x.get_den()))) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_squarefree(long n) {
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

std::vector<long> divisors(long n) {
    std::vector<long> out{1};
    for (auto& [p, e] : factorize(n)) {
        size_t base = out.size();
        long pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<char> sieve(static_cast<size_t>(n + 1), 1);
    for (long i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (long j = i * i; j <= n; j += i) sieve[j] = 0;
    }
    return out;
}

long sigma1(long n) {
    long s = 0;
    for (long d : divisors(n)) s += d;
    return s;
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long gcd_l(long a, long b) {
    a = std::labs(a);
    b = std::labs(b);
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long inverse_mod(long a, long m) {
    long g = m, x = 0, x1 = 1, a1 = mod(a, m);
    long g1 = a1;
    while (g1 != 0) {
        long q = g / g1;
        long t = g - q * g1;
        g = g1;
        g1 = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw DomainError("no inverse mod " + std::to_string(m));
    return mod(x, m);
}

long powmod(long b, long e, long m) {
    __int128 r = 1, base = mod(b, m);
    while (e > 0) {
        if (e & 1) r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<long>(r);
}

int legendre(long a, long p) {
    long r = mod(a, p);
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int kronecker(long a, long n) {
    if (n == 0) return std::labs(a) == 1 ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long r8 = mod(a, 8);
        if (r8 == 3 || r8 == 5) result = -result;
    }
    // Jacobi symbol for odd n.
    long aa = mod(a, n), nn = n;
    if (nn == 1) return result;
    while (aa != 0) {
        while (aa % 2 == 0) {
            aa /= 2;
            long r8 = nn % 8;
            if (r8 == 3 || r8 == 5) result = -result;
        }
        std::swap(aa, nn);
        if (aa % 4 == 3 && nn % 4 == 3) result = -result;
        aa %= nn;
    }
    return nn == 1 ? result : 0;
}

long factorial(long n) {
    long f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace arithlift
