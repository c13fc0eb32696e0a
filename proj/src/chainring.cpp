#include "arithtop/chainring.hpp"

#include <algorithm>

namespace arithtop {

namespace {

i64 mod_floor(i64 a, i64 m) {
    a %= m;
    return a < 0 ? a + m : a;
}

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<__int128>(a) * b % m); }

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace

ChainRing::ChainRing(int l, int d) : l_(l), d_(d) {
    if (!is_prime(l)) throw std::invalid_argument("ChainRing: l must be prime");
    if (d < 1) throw std::invalid_argument("ChainRing: d must be >= 1");
    M_ = (d + l - 2) / (l - 1) + 1;
    mod_ = 1;
    for (int k = 0; k < M_; ++k) {
        if (mod_ > (i64{1} << 62) / l) throw std::invalid_argument("ChainRing: l^M overflows");
        mod_ *= l;
    }
    // Phi_l(1+x) = sum_{k=1..l} C(l,k) x^{k-1}
    phi_.assign(static_cast<std::size_t>(l), 0);
    i64 binom = 1;
    for (int k = 1; k <= l; ++k) {
        binom = binom * (l - k + 1) / k;
        phi_[static_cast<std::size_t>(k - 1)] = binom;
    }
}

void ChainRing::reduce(std::vector<i64>& p) const {
    const std::size_t n = static_cast<std::size_t>(l_ - 1);
    for (std::size_t i = p.size(); i-- > n;) {
        const i64 c = mod_floor(p[i], mod_);
        p[i] = 0;
        if (c)
            for (std::size_t j = 0; j < n; ++j)
                p[i - n + j] = mod_floor(p[i - n + j] - mulmod(c, phi_[j], mod_), mod_);
    }
    p.resize(n);
    for (auto& c : p) c = mod_floor(c, mod_);
}

ChainRing::Elt ChainRing::pi() const {
    std::vector<i64> p(static_cast<std::size_t>(l_ - 1), 0);
    p.resize(std::max<std::size_t>(2, p.size()));
    p[1] = 1;
    reduce(p);
    return Elt{p};
}

ChainRing::Elt ChainRing::from_int(i64 k) const {
    std::vector<i64> p(static_cast<std::size_t>(l_ - 1), 0);
    if (p.empty()) p.resize(1);
    p[0] = mod_floor(k, mod_);
    reduce(p);
    return Elt{p};
}

ChainRing::Elt ChainRing::from_digits(const std::vector<int>& digits) const {
    if (static_cast<int>(digits.size()) != d_)
        throw std::invalid_argument("from_digits: need exactly d digits");
    Elt acc = zero(), p = one();
    const Elt piv = pi();
    for (int c : digits) {
        if (c < 0 || c >= l_) throw std::invalid_argument("from_digits: digit out of range");
        acc = add(acc, mul(from_int(c), p));
        p = mul(p, piv);
    }
    return acc;
}

ChainRing::Elt ChainRing::add(const Elt& a, const Elt& b) const {
    if (a.c.size() != static_cast<std::size_t>(l_ - 1) || b.c.size() != a.c.size())
        throw std::invalid_argument("chain ring operands from a different (l, d) context");
    std::vector<i64> p(a.c);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += b.c[i];
    reduce(p);
    return Elt{p};
}

ChainRing::Elt ChainRing::sub(const Elt& a, const Elt& b) const { return add(a, neg(b)); }

ChainRing::Elt ChainRing::neg(const Elt& a) const {
    std::vector<i64> p(a.c);
    for (auto& c : p) c = -c;
    reduce(p);
    return Elt{p};
}

ChainRing::Elt ChainRing::mul(const Elt& a, const Elt& b) const {
    if (a.c.size() != static_cast<std::size_t>(l_ - 1) || b.c.size() != a.c.size())
        throw std::invalid_argument("chain ring operands from a different (l, d) context");
    std::vector<i64> p(2 * static_cast<std::size_t>(l_ - 1), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            p[i + j] = mod_floor(p[i + j] + mulmod(a.c[i], b.c[j], mod_), mod_);
    }
    reduce(p);
    return Elt{p};
}

int ChainRing::valuation(const Elt& a) const {
    Elt q = a;
    for (int v = 0; v < d_; ++v) {
        if (mod_floor(q.c[0], static_cast<i64>(l_)) != 0) return v;
        q = div_pi(q);
    }
    return d_;
}

ChainRing::Elt ChainRing::div_pi(const Elt& a) const {
    // l = pi * w(pi) with w = -(C(l,2) + C(l,3) pi + ... + pi^{l-2});
    // write constant term q0 = l*m, subtract, shift, and add m*w.
    const i64 q0 = mod_floor(a.c[0], mod_);
    if (q0 % l_ != 0) throw std::domain_error("div_pi: element not divisible by pi");
    const i64 m = q0 / l_;
    std::vector<i64> out(static_cast<std::size_t>(l_ - 1), 0);
    for (std::size_t j = 1; j < a.c.size(); ++j) out[j - 1] = a.c[j];
    for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(l_); ++j) {
        // coefficient of x^j in w is -phi_[j+1]
        if (j < out.size()) out[j] = mod_floor(out[j] - mulmod(m, phi_[j + 1], mod_), mod_);
    }
    reduce(out);
    return Elt{out};
}

ChainRing::Elt ChainRing::unit_inverse(const Elt& a) const {
    if (valuation(a) != 0) throw std::domain_error("unit_inverse: not a unit");
    // Newton lift from the residue field
    i64 c0 = mod_floor(a.c[0], static_cast<i64>(l_));
    i64 inv0 = 1;
    for (i64 t = 1; t < l_; ++t)
        if (t * c0 % l_ == 1) {
            inv0 = t;
            break;
        }
    Elt y = from_int(inv0);
    const Elt two = from_int(2);
    for (int k = 0; k < M_ + 2; ++k) y = mul(y, sub(two, mul(a, y)));
    return y;
}

std::vector<int> ChainRing::digits(const Elt& a) const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(d_));
    Elt q = a;
    for (int k = 0; k < d_; ++k) {
        const int c = static_cast<int>(mod_floor(q.c[0], static_cast<i64>(l_)));
        out.push_back(c);
        Elt t = q;
        t.c[0] = mod_floor(t.c[0] - c, mod_);
        q = div_pi(t);
    }
    return out;
}

ElementaryDivisors snf(const ChainMatrix& M0) {
    if (!M0.ring) throw std::invalid_argument("snf: empty matrix");
    const ChainRing& R = *M0.ring;
    ChainMatrix M = M0;
    const int k = std::min(M.rows, M.cols);
    ElementaryDivisors out;
    out.d = R.d();

    for (int top = 0; top < k; ++top) {
        // minimal-valuation pivot, first in row-major order
        int bi = -1, bj = -1, bv = R.d();
        for (int i = top; i < M.rows; ++i)
            for (int j = top; j < M.cols; ++j) {
                const int v = R.valuation(M.at(i, j));
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bv >= R.d()) {
            // remaining block is zero
            for (int t = top; t < k; ++t) out.valuations.push_back(R.d());
            return out;
        }
        // move pivot to (top, top)
        if (bi != top)
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(top, j), M.at(bi, j));
        if (bj != top)
            for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, top), M.at(i, bj));
        // normalize pivot row by the pivot's unit part
        ChainRing::Elt u = M.at(top, top);
        for (int t = 0; t < bv; ++t) u = R.div_pi(u);
        const ChainRing::Elt uinv = R.unit_inverse(u);
        for (int j = top; j < M.cols; ++j) M.at(top, j) = R.mul(M.at(top, j), uinv);
        // clear the pivot column; valuations below stay >= bv since bv is the
        // global minimum, so the division is exact
        for (int i = top + 1; i < M.rows; ++i) {
            ChainRing::Elt f = M.at(i, top);
            if (R.valuation(f) >= R.d()) continue;
            for (int t = 0; t < bv; ++t) f = R.div_pi(f);
            for (int j = top; j < M.cols; ++j)
                M.at(i, j) = R.sub(M.at(i, j), R.mul(f, M.at(top, j)));
        }
        // clear the pivot row by column operations; the pivot column is zero
        // below (top,top) now, so only the row-top entries change
        for (int j = top + 1; j < M.cols; ++j) M.at(top, j) = R.zero();
        out.valuations.push_back(bv);
    }
    return out;
}

int e_d_from_divisors(const ElementaryDivisors& div, int d) {
    if (d < 1 || d > div.d) throw std::invalid_argument("e_d_from_divisors: need 1 <= d <= ring d");
    int cnt = 0;
    for (int v : div.valuations)
        if (v >= d) ++cnt;
    if (cnt == 0) throw std::domain_error("e_d_from_divisors: no zero divisor (inconsistent input)");
    return cnt - 1;
}

namespace {

// truncated product c *= (1 - t^k)^e for e of either sign
void mul_cyclotomic_power(std::vector<i64>& c, int k, i64 e, int D) {
    if (e >= 0) {
        for (i64 r = 0; r < e; ++r) {
            for (int i = D; i >= k; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - k)];
        }
    } else {
        // multiply by 1/(1-t^k) = 1 + t^k + t^{2k} + ...
        for (i64 r = 0; r < -e; ++r) {
            for (int i = k; i <= D; ++i) c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - k)];
        }
    }
}

}  // namespace

RankSequence zeta_rank_inversion(const std::vector<i64>& f, int D) {
    if (f.empty() || f[0] != 1) throw std::invalid_argument("zeta_rank_inversion: need f(0) = 1");
    std::vector<i64> target(static_cast<std::size_t>(D) + 1, 0);
    for (std::size_t i = 0; i < f.size() && i <= static_cast<std::size_t>(D); ++i) target[i] = f[i];

    RankSequence ranks;
    std::vector<i64> cur(static_cast<std::size_t>(D) + 1, 0);
    cur[0] = 1;
    for (int k = 1; k <= D; ++k) {
        // with a_1..a_{k-1} fixed, coefficient of t^k moves by -a_k
        const i64 a_k = cur[static_cast<std::size_t>(k)] - target[static_cast<std::size_t>(k)];
        ranks.a.push_back(a_k);
        mul_cyclotomic_power(cur, k, a_k, D);
    }
    return ranks;
}

std::vector<i64> expand_rank_product(const RankSequence& ranks, int D) {
    std::vector<i64> c(static_cast<std::size_t>(D) + 1, 0);
    c[0] = 1;
    for (std::size_t k = 0; k < ranks.a.size(); ++k)
        mul_cyclotomic_power(c, static_cast<int>(k) + 1, ranks.a[k], D);
    return c;
}

}  // namespace arithtop
