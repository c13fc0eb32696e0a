#include "arithtop/magnus.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace arithtop {

namespace {

i64 reduce_mod(i64 v, i64 m) {
    if (m <= 0) return v;
    v %= m;
    return v < 0 ? v + m : v;
}

i64 gcd_nonneg(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

NCSeries NCSeries::one(int rank, int degree, i64 modulus) {
    NCSeries s(rank, degree, modulus);
    s.set({}, 1);
    return s;
}

i64 NCSeries::coeff(const MultiIndex& m) const {
    auto it = c_.find(m);
    return it == c_.end() ? 0 : it->second;
}

void NCSeries::set(const MultiIndex& m, i64 v) {
    v = reduce_mod(v, modulus_);
    if (v == 0)
        c_.erase(m);
    else
        c_[m] = v;
}

void NCSeries::add(const MultiIndex& m, i64 v) { set(m, coeff(m) + v); }

NCSeries operator*(const NCSeries& a, const NCSeries& b) {
    NCSeries r(a.rank_, a.degree_, a.modulus_);
    for (const auto& [ma, ca] : a.c_) {
        for (const auto& [mb, cb] : b.c_) {
            if (static_cast<int>(ma.size() + mb.size()) > r.degree_) continue;
            MultiIndex m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            r.add(m, ca * cb);
        }
    }
    return r;
}

NCSeries operator+(NCSeries a, const NCSeries& b) {
    for (const auto& [m, c] : b.c_) a.add(m, c);
    return a;
}

NCSeries operator-(NCSeries a, const NCSeries& b) {
    for (const auto& [m, c] : b.c_) a.add(m, -c);
    return a;
}

namespace {

// (1 + X_g)^e truncated, via binomial coefficients; e may be negative
// (generalized binomials give the geometric-series expansion of the inverse).
NCSeries run_series(int g, i64 e, int rank, int degree, i64 modulus) {
    NCSeries s(rank, degree, modulus);
    s.set({}, 1);
    __int128 binom = 1;
    for (int k = 1; k <= degree; ++k) {
        // C(e,k) = C(e,k-1)*(e-k+1)/k, exact at every step
        binom = binom * (e - k + 1) / k;
        i64 b;
        if (modulus > 0) {
            __int128 r = binom % modulus;
            if (r < 0) r += modulus;
            b = static_cast<i64>(r);
        } else {
            b = static_cast<i64>(binom);
        }
        s.set(MultiIndex(static_cast<std::size_t>(k), g), b);
        if (binom == 0 && e > 0) break;  // positive exponent: binomial tail is 0
    }
    return s;
}

}  // namespace

NCSeries magnus_expand(const FreeWord& w, int rank, int degree, i64 modulus) {
    if (degree < 1) throw std::invalid_argument("magnus_expand: degree must be >= 1");
    if (w.max_generator() > rank) throw std::invalid_argument("magnus_expand: word exceeds rank");
    NCSeries r = NCSeries::one(rank, degree, modulus);
    for (const auto& [g, e] : w.runs()) r = r * run_series(g, e, rank, degree, modulus);
    return r;
}

GroupRing fox_derive(const FreeWord& w, int gen) {
    // product rule along the letters: d(uv) = du + u dv
    GroupRing out;
    FreeWord prefix;
    for (const auto& l : w.letters()) {
        if (l.gen == gen) {
            if (l.sign == 1) {
                out.add(prefix, 1);
            } else {
                out.add(multiply(prefix, FreeWord::generator(gen, -1)), -1);
            }
        }
        prefix = multiply(prefix, FreeWord::generator(l.gen, l.sign));
    }
    return out;
}

GroupRing fox_derive(const GroupRing& e, int gen) {
    GroupRing out;
    for (const auto& [w, c] : e.terms()) {
        GroupRing dw = fox_derive(w, gen);
        out += c * dw;
    }
    return out;
}

i64 higher_fox_eps(const FreeWord& w, const MultiIndex& I) {
    // innermost derivative first: eps(d_{i_1}(d_{i_2}(... d_{i_r} w)))
    GroupRing e(w);
    for (auto it = I.rbegin(); it != I.rend(); ++it) e = fox_derive(e, *it);
    return e.augmentation();
}

std::vector<MultiIndex> delta_index_set(const MultiIndex& I) {
    const int n = static_cast<int>(I.size());
    std::set<MultiIndex> out;
    // subsequences of length >= 2 obtained by deleting at least one position
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        MultiIndex J;
        for (int k = 0; k < n; ++k)
            if (!(mask & (1u << k))) J.push_back(I[k]);
        if (J.size() < 2) continue;
        for (std::size_t r = 0; r < J.size(); ++r) {
            MultiIndex rot(J.begin() + static_cast<long>(r), J.end());
            rot.insert(rot.end(), J.begin(), J.begin() + static_cast<long>(r));
            out.insert(rot);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<MultiIndex> proper_shuffles(const MultiIndex& I, const MultiIndex& J) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> void {
        if (i == I.size() && j == J.size()) {
            out.push_back(cur);
            return;
        }
        if (i < I.size()) {
            cur.push_back(I[i]);
            self(self, i + 1, j);
            cur.pop_back();
        }
        if (j < J.size()) {
            cur.push_back(J[j]);
            self(self, i, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

const MilnorEntry& MilnorTable::at(const MultiIndex& I) const {
    auto it = entries_.find(I);
    if (it == entries_.end()) {
        std::string s = "missing Milnor entry (";
        for (int v : I) s += std::to_string(v) + " ";
        throw std::out_of_range(s + ")");
    }
    return it->second;
}

namespace {

void enumerate_indices(int n, int len, MultiIndex& cur, const std::function<void(const MultiIndex&)>& f) {
    if (len == 0) {
        f(cur);
        return;
    }
    for (int i = 1; i <= n; ++i) {
        cur.push_back(i);
        enumerate_indices(n, len - 1, cur, f);
        cur.pop_back();
    }
}

// v_p(n!) by Legendre's formula
i64 factorial_valuation(i64 n, i64 p) {
    i64 v = 0;
    while (n > 0) {
        n /= p;
        v += n;
    }
    return v;
}

// gcd(C(B,t), m) without forming the binomial: per prime p | m,
// v_p(C(B,t)) = v_p(B!) - v_p(t!) - v_p((B-t)!)
i64 gcd_binomial_with(i64 B, i64 t, i64 m) {
    if (t < 0 || t > B) return m;  // C = 0 contributes nothing to the ideal
    i64 rest = m, out = 1;
    for (i64 p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        i64 e = 0;
        while (rest % p == 0) rest /= p, ++e;
        i64 v = factorial_valuation(B, p) - factorial_valuation(t, p) - factorial_valuation(B - t, p);
        for (i64 k = 0; k < std::min(e, v); ++k) out *= p;
    }
    if (rest > 1) {
        const i64 p = rest;
        i64 v = factorial_valuation(B, p) - factorial_valuation(t, p) - factorial_valuation(B - t, p);
        if (v >= 1) out *= p;
    }
    return out;
}

}  // namespace

MilnorTable milnor_table(const std::vector<FreeWord>& longitudes, int degree, i64 modulus,
                         i64 binom_base) {
    if (degree < 2) throw std::invalid_argument("milnor_table: degree must be >= 2");
    const int n = static_cast<int>(longitudes.size());
    MilnorTable table(n, degree, modulus);
    if (modulus > 0 && binom_base == 0) binom_base = modulus;

    std::vector<NCSeries> exp;
    exp.reserve(longitudes.size());
    for (const auto& y : longitudes) exp.push_back(magnus_expand(y, n, degree - 1, modulus));

    // mu values
    std::map<MultiIndex, i64> mu;
    for (int j = 1; j <= n; ++j) {
        for (int r = 1; r <= degree - 1; ++r) {
            MultiIndex cur;
            enumerate_indices(n, r, cur, [&](const MultiIndex& pre) {
                MultiIndex I = pre;
                I.push_back(j);
                mu[I] = exp[static_cast<std::size_t>(j - 1)].coeff(pre);
            });
        }
    }

    for (const auto& [I, v] : mu) {
        MilnorEntry e;
        e.mu = v;
        i64 g = 0;
        for (const auto& J : delta_index_set(I)) g = gcd_nonneg(g, mu.at(J));
        if (modulus > 0) {
            for (std::size_t t = 1; t <= I.size(); ++t)
                g = gcd_nonneg(g, gcd_binomial_with(binom_base, static_cast<i64>(t), modulus));
            g = gcd_nonneg(g, modulus);  // ideal lives in Z/m
        }
        e.delta = g;
        e.mubar = g > 0 ? ((v % g) + g) % g : v;
        table.set(I, e);
    }
    return table;
}

SymmetryReport check_symmetries(const MilnorTable& table) {
    SymmetryReport rep;
    const int n = table.n_components();
    const int D = table.degree();

    auto fmt = [](const MultiIndex& I) {
        std::string s = "(";
        for (std::size_t k = 0; k < I.size(); ++k) s += (k ? " " : "") + std::to_string(I[k]);
        return s + ")";
    };

    // cyclic symmetry: mubar(I) == mubar(rot I) mod gcd of the two deltas
    for (const auto& [I, e] : table.entries()) {
        MultiIndex R(I.begin() + 1, I.end());
        R.push_back(I.front());
        const MilnorEntry& f = table.at(R);
        const i64 g = gcd_nonneg(e.delta, f.delta);
        const i64 diff = e.mubar - f.mubar;
        const bool ok = g > 0 ? diff % g == 0 : diff == 0;
        ++rep.cyclic_checked;
        if (!ok)
            rep.violations.push_back("cyclic: mubar" + fmt(I) + " = " + std::to_string(e.mubar) +
                                     " vs mubar" + fmt(R) + " = " + std::to_string(f.mubar));
    }

    // shuffle relations: sum over proper shuffles of (I, J) followed by k
    for (int total = 2; total + 1 <= D; ++total) {
        for (int sl = 1; sl < total; ++sl) {
            MultiIndex curI;
            enumerate_indices(n, sl, curI, [&](const MultiIndex& I) {
                MultiIndex curJ;
                enumerate_indices(n, total - sl, curJ, [&](const MultiIndex& J) {
                    for (int k = 1; k <= n; ++k) {
                        i64 g = 0, sum = 0;
                        for (const auto& H : proper_shuffles(I, J)) {
                            MultiIndex HK = H;
                            HK.push_back(k);
                            const MilnorEntry& e = table.at(HK);
                            g = gcd_nonneg(g, e.delta);
                            sum += e.mubar;
                        }
                        const bool ok = g > 0 ? sum % g == 0 : sum == 0;
                        ++rep.shuffle_checked;
                        if (!ok)
                            rep.violations.push_back("shuffle: I=" + fmt(I) + " J=" + fmt(J) +
                                                     " k=" + std::to_string(k) +
                                                     " sum=" + std::to_string(sum) +
                                                     " gcd=" + std::to_string(g));
                    }
                });
            });
        }
    }
    return rep;
}

}  // namespace arithtop
