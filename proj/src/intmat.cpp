#include "arithlift/intmat.hpp"

#include <algorithm>

#include "arithlift/errors.hpp"

namespace arithlift {

RatMat rat_identity(size_t n) {
    RatMat m(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMat c(n, std::vector<Rat>(m, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

RatMat rat_transpose(const RatMat& a) {
    if (a.empty()) return {};
    RatMat t(a[0].size(), std::vector<Rat>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Rat rat_det(RatMat a) {
    size_t n = a.size();
    Rat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rat f = a[r][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

RatMat rat_inverse(const RatMat& a) {
    size_t n = a.size();
    RatMat m = a;
    RatMat inv = rat_identity(n);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) throw DomainError("singular matrix");
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        Rat f = 1 / m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] *= f;
            inv[c][j] *= f;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rat g = m[r][c];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= g * m[c][j];
                inv[r][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

IntMat hnf_rows(const IntMat& gens) {
    if (gens.empty()) throw DomainError("hnf of empty generator list");
    size_t n = gens[0].size();
    IntMat rows = gens;
    IntMat basis;
    for (size_t c = 0; c < n; ++c) {
        // Gather rows with nonzero entry in column c and fold them by extended gcd.
        size_t pivot = rows.size();
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            if (pivot == rows.size()) {
                pivot = i;
                continue;
            }
            Int g, u, v;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), rows[pivot][c].get_mpz_t(),
                       rows[i][c].get_mpz_t());
            Int a = rows[pivot][c] / g, b = rows[i][c] / g;
            std::vector<Int> np(n), ni(n);
            for (size_t j = 0; j < n; ++j) {
                np[j] = u * rows[pivot][j] + v * rows[i][j];
                ni[j] = -b * rows[pivot][j] + a * rows[i][j];
            }
            rows[pivot] = std::move(np);
            rows[i] = std::move(ni);
        }
        if (pivot == rows.size()) throw DomainError("generators do not have full rank");
        std::vector<Int> prow = rows[pivot];
        rows.erase(rows.begin() + static_cast<long>(pivot));
        if (prow[c] < 0)
            for (auto& x : prow) x = -x;
        basis.push_back(prow);
    }
    // Reduce entries above the diagonal.
    for (size_t c = 0; c < n; ++c)
        for (size_t i = 0; i < c; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), basis[i][c].get_mpz_t(), basis[c][c].get_mpz_t());
            if (q == 0) continue;
            for (size_t j = c; j < n; ++j) basis[i][j] -= q * basis[c][j];
        }
    return basis;
}

RatMat lattice_basis(const RatMat& gens) {
    Int den = 1;
    for (auto& row : gens)
        for (auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IntMat ig;
    for (auto& row : gens) {
        std::vector<Int> r;
        for (auto& x : row) {
            Rat y = x * den;
            r.push_back(y.get_num());
        }
        ig.push_back(r);
    }
    IntMat h = hnf_rows(ig);
    RatMat out;
    for (auto& row : h) {
        std::vector<Rat> r;
        for (auto& x : row) {
            Rat y(x, den);
            y.canonicalize();
            r.push_back(y);
        }
        out.push_back(r);
    }
    return out;
}

namespace {

IntMat int_identity(size_t n) {
    IntMat m(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void swap_rows(IntMat& m, size_t i, size_t j) { std::swap(m[i], m[j]); }
void swap_cols(IntMat& m, size_t i, size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
}
// row_i <- a row_i + b row_j, row_j <- c row_i + d row_j (simultaneous)
void combine_rows(IntMat& m, size_t i, size_t j, const Int& a, const Int& b, const Int& c, const Int& d) {
    for (size_t k = 0; k < m[i].size(); ++k) {
        Int x = m[i][k], y = m[j][k];
        m[i][k] = a * x + b * y;
        m[j][k] = c * x + d * y;
    }
}
void combine_cols(IntMat& m, size_t i, size_t j, const Int& a, const Int& b, const Int& c, const Int& d) {
    for (auto& row : m) {
        Int x = row[i], y = row[j];
        row[i] = a * x + b * y;
        row[j] = c * x + d * y;
    }
}

}  // namespace

SmithForm smith_form(const IntMat& input) {
    size_t n = input.size();
    size_t m = n ? input[0].size() : 0;
    IntMat a = input;
    IntMat X = int_identity(n), Y = int_identity(m);
    size_t k = 0;
    for (; k < std::min(n, m); ++k) {
        // Find a nonzero pivot with smallest absolute value in the remaining block.
        for (;;) {
            size_t pi = n, pj = m;
            for (size_t i = k; i < n; ++i)
                for (size_t j = k; j < m; ++j)
                    if (a[i][j] != 0 && (pi == n || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == n) goto done;
            swap_rows(a, k, pi);
            swap_rows(X, k, pi);
            swap_cols(a, k, pj);
            swap_cols(Y, k, pj);
            bool clean = true;
            for (size_t i = k + 1; i < n; ++i) {
                if (a[i][k] == 0) continue;
                Int g, u, v;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a[k][k].get_mpz_t(), a[i][k].get_mpz_t());
                Int p = a[k][k] / g, q = a[i][k] / g;
                combine_rows(a, k, i, u, v, -q, p);
                combine_rows(X, k, i, u, v, -q, p);
            }
            for (size_t j = k + 1; j < m; ++j) {
                if (a[k][j] == 0) continue;
                Int g, u, v;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a[k][k].get_mpz_t(), a[k][j].get_mpz_t());
                Int p = a[k][k] / g, q = a[k][j] / g;
                combine_cols(a, k, j, u, v, -q, p);
                combine_cols(Y, k, j, u, v, -q, p);
            }
            for (size_t i = k + 1; i < n; ++i)
                if (a[i][k] != 0) clean = false;
            if (!clean) continue;
            // Divisibility: if some entry is not divisible by the pivot, add its row.
            bool divisible = true;
            for (size_t i = k + 1; i < n && divisible; ++i)
                for (size_t j = k + 1; j < m; ++j)
                    if (a[i][j] % a[k][k] != 0) {
                        for (size_t t = 0; t < m; ++t) a[k][t] += a[i][t];
                        for (size_t t = 0; t < n; ++t) X[k][t] += X[i][t];
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (a[k][k] < 0) {
            for (auto& x : a[k]) x = -x;
            for (auto& x : X[k]) x = -x;
        }
    }
done:
    SmithForm out;
    out.X = X;
    out.Y = Y;
    for (size_t i = 0; i < std::min(n, m); ++i) out.diag.push_back(a[i][i]);
    return out;
}

}  // namespace arithlift
