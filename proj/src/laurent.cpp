#include "arithtop/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace arithtop {

LaurentPoly LaurentPoly::monomial(i64 coeff, int exp) {
    LaurentPoly p;
    if (coeff) p.c_[exp] = coeff;
    return p;
}

i64 LaurentPoly::coeff(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? 0 : it->second;
}

int LaurentPoly::min_exp() const {
    if (c_.empty()) throw std::domain_error("min_exp of zero polynomial");
    return c_.begin()->first;
}

int LaurentPoly::max_exp() const {
    if (c_.empty()) throw std::domain_error("max_exp of zero polynomial");
    return c_.rbegin()->first;
}

i64 LaurentPoly::eval(i64 t) const {
    i64 s = 0;
    for (const auto& [e, v] : c_) {
        i64 p = 1;
        if (t == 1) {
            p = 1;
        } else if (t == -1) {
            p = (e % 2 == 0) ? 1 : -1;
        } else {
            if (e < 0) throw std::domain_error("eval: negative exponent");
            for (int k = 0; k < e; ++k) p *= t;
        }
        s += v * p;
    }
    return s;
}

void LaurentPoly::add(int e, i64 v) {
    if (!v) return;
    auto it = c_.find(e);
    if (it == c_.end()) {
        c_[e] = v;
    } else {
        it->second += v;
        if (!it->second) c_.erase(it);
    }
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    for (const auto& [e, v] : b.c_) a.add(e, v);
    return a;
}

LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    for (const auto& [e, v] : b.c_) a.add(e, -v);
    return a;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, va] : a.c_)
        for (const auto& [eb, vb] : b.c_) r.add(ea + eb, va * vb);
    return r;
}

LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly{} - a; }

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        const auto [e, v] = *it;
        if (!out.empty()) out += v < 0 ? " - " : " + ";
        else if (v < 0) out += "-";
        const i64 av = v < 0 ? -v : v;
        const bool unit_coeff = av == 1 && e != 0;
        if (!unit_coeff) out += std::to_string(av);
        if (e != 0) {
            out += "t";
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

namespace {

using Dense = std::vector<i64>;  // index = exponent, ordinary polynomial

Dense to_dense(const LaurentPoly& p) {
    const int lo = p.min_exp();
    Dense d(static_cast<std::size_t>(p.max_exp() - lo) + 1, 0);
    for (const auto& [e, v] : p.coeffs()) d[static_cast<std::size_t>(e - lo)] = v;
    return d;
}

void trim(Dense& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

i64 content(const Dense& a) {
    i64 g = 0;
    for (i64 v : a) g = std::gcd(g, v < 0 ? -v : v);
    return g;
}

void divide_scalar(Dense& a, i64 s) {
    for (auto& v : a) v /= s;
}

// gcd of primitive polynomials over Z[t]: primitive pseudo-remainder sequence
Dense poly_gcd_dense(Dense a, Dense b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        if (a.size() < b.size()) std::swap(a, b);
        if (b.empty()) break;
        // primitive pseudo remainder of a by b
        Dense r = a;
        const i64 lb = b.back();
        const i64 alb = lb < 0 ? -lb : lb;
        while (!r.empty() && r.size() >= b.size()) {
            const i64 lr = r.back();
            // r = lb*r - lr * t^(dr-db) * b kills the leading term
            for (auto& v : r) {
                if (v > (i64{1} << 61) / alb || v < -((i64{1} << 61) / alb))
                    throw std::overflow_error("poly gcd coefficient overflow");
                v *= lb;
            }
            const std::size_t shift = r.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= lr * b[i];
            trim(r);
            if (const i64 cr = content(r); cr > 1) divide_scalar(r, cr);
        }
        a = b;
        b = r;
    }
    trim(a);
    if (const i64 c = content(a); c > 1) divide_scalar(a, c);
    return a;
}

}  // namespace

LaurentPoly normalize_unit(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    const int lo = p.min_exp();
    LaurentPoly q;
    for (const auto& [e, v] : p.coeffs()) q.add(e - lo, v);
    if (q.coeffs().rbegin()->second < 0) q = -q;
    return q;
}

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    Dense da = to_dense(a), db = to_dense(b);
    // include contents: gcd of Laurent ideals = gcd of primitive parts times
    // gcd of contents
    const i64 ca = content(da), cb = content(db);
    Dense pa = da, pb = db;
    divide_scalar(pa, ca);
    divide_scalar(pb, cb);
    Dense g = poly_gcd_dense(pa, pb);
    const i64 cg = content(g);
    if (cg) divide_scalar(g, cg);
    const i64 c = std::gcd(ca, cb);
    LaurentPoly out;
    for (std::size_t i = 0; i < g.size(); ++i) out.add(static_cast<int>(i), g[i] * c);
    return normalize_unit(out);
}

i64 resultant_with_cyclotomic(const LaurentPoly& p, int n) {
    if (n < 1) throw std::invalid_argument("resultant: n must be >= 1");
    if (p.is_zero()) return 0;
    // |prod_{zeta^n=1} p(zeta)| = |det of multiplication by p on Z[t]/(t^n-1)|,
    // a circulant determinant; Bareiss keeps everything integral.
    std::vector<std::vector<__int128>> m(static_cast<std::size_t>(n),
                                         std::vector<__int128>(static_cast<std::size_t>(n), 0));
    const int lo = p.min_exp();
    for (int i = 0; i < n; ++i)
        for (const auto& [e, v] : p.coeffs()) {
            int col = ((e - lo + i) % n + n) % n;
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] += v;
        }
    __int128 prev = 1;
    int sign = 1;
    const __int128 lim = static_cast<__int128>(1) << 120;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;  // singular
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(piv)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                __int128 num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                if (num > lim || num < -lim) throw std::overflow_error("resultant overflow");
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    __int128 det = m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
    if (det < 0) det = -det;
    if (det > (static_cast<__int128>(1) << 62)) throw std::overflow_error("resultant exceeds 64 bits");
    (void)sign;
    return static_cast<i64>(det);
}

}  // namespace arithtop
