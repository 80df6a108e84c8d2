#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "arithlift/rational.hpp"

namespace arithlift {

bool is_prime(long n);
// Prime factorization of |n| (n != 0) as (prime, exponent) pairs in increasing order.
std::vector<std::pair<long, int>> factorize(long n);
std::vector<long> prime_divisors(long n);
// Primes dividing numerator or denominator of a nonzero rational.
std::vector<long> prime_support(const Rat& x);
bool is_squarefree(long n);
std::vector<long> divisors(long n);
std::vector<long> primes_up_to(long n);
long sigma1(long n);
long mod(long a, long m);
long gcd_l(long a, long b);
long inverse_mod(long a, long m);
long powmod(long b, long e, long m);
// Legendre symbol (a/p) for an odd prime p.
int legendre(long a, long p);
// Kronecker symbol (a/n).
int kronecker(long a, long n);
long factorial(long n);

}  // namespace arithlift
