#include "arithtop/classgroup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace arithtop {

namespace {

i64 isqrt_i64(i64 n) {
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

i64 mod_floor(i64 a, i64 m) {
    a %= m;
    return a < 0 ? a + m : a;
}

constexpr i64 kDiscBound = 10'000'000;

bool reduced_indefinite(const QuadForm& f, i64 D, i64 sq) {
    if (f.b <= 0 || f.b >= sq + 1) return false;
    if (f.b * f.b >= D) return false;
    const __int128 t = 2 * static_cast<__int128>(f.a < 0 ? -f.a : f.a);
    // sqrt(D) - b < 2|a| < sqrt(D) + b, exact in integers
    if (D >= (t + f.b) * (t + f.b)) return false;
    if (t > f.b && (t - f.b) * (t - f.b) >= D) return false;
    return true;
}

QuadForm rho_step(const QuadForm& f, i64 D, i64 sq) {
    // (a,b,c) -> (c, r, (r^2-D)/4c) with r = -b mod 2|c| in the standard window
    const i64 c = f.c;
    const i64 ac = c < 0 ? -c : c;
    const i64 t = 2 * ac;
    i64 r = mod_floor(-f.b, t);
    if (ac > sq) {
        if (r > ac) r -= t;
    } else {
        while (r > sq) r -= t;
        while (r + t <= sq) r += t;
    }
    const __int128 num = static_cast<__int128>(r) * r - D;
    const __int128 c2 = num / (4 * static_cast<__int128>(c));
    if (c2 > (static_cast<__int128>(1) << 62) || c2 < -(static_cast<__int128>(1) << 62))
        throw std::overflow_error("rho_step: coefficient overflow");
    return {c, r, static_cast<i64>(c2)};
}

QuadForm reduce_indefinite(QuadForm f, i64 D, i64 sq) {
    for (int guard = 0; guard < 100000; ++guard) {
        if (reduced_indefinite(f, D, sq)) return f;
        f = rho_step(f, D, sq);
    }
    throw std::domain_error("indefinite reduction did not terminate");
}

QuadForm reduce_definite(QuadForm f, i64 /*D*/) {
    // positive definite (D < 0, a > 0): standard Gauss reduction
    auto normalize = [&](QuadForm g) {
        // b into (-a, a]
        const i64 r = g.a - mod_floor(g.a - g.b, 2 * g.a);
        const i64 q = (g.b - r) / (2 * g.a);
        const __int128 c2 = static_cast<__int128>(g.c) - static_cast<__int128>(q) * (g.b + r) / 2;
        if (c2 > (static_cast<__int128>(1) << 62)) throw std::overflow_error("definite reduce overflow");
        return QuadForm{g.a, r, static_cast<i64>(c2)};
    };
    f = normalize(f);
    for (int guard = 0; guard < 100000; ++guard) {
        if (f.a > f.c) {
            f = normalize({f.c, -f.b, f.a});
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
    throw std::domain_error("definite reduction did not terminate");
}

struct ExtGcd {
    i64 g, x, y;
};

ExtGcd ext_gcd(i64 a, i64 b) {
    if (b == 0) return {a < 0 ? -a : a, a < 0 ? i64{-1} : i64{1}, 0};
    ExtGcd e = ext_gcd(b, a % b);
    return {e.g, e.y, e.x - (a / b) * e.y};
}

QuadForm compose_reduced(QuadForm f1, QuadForm f2, i64 D, i64 sq) {
    // Dirichlet / united forms: arrange gcd(a1, a2) = 1, then solve the
    // congruences B = b1 mod 2a1, B = b2 mod 2a2.
    if (std::gcd(f1.a < 0 ? -f1.a : f1.a, f2.a < 0 ? -f2.a : f2.a) != 1) {
        // scan substitutions by growing box so the replacement stays small
        bool found = false;
        for (i64 box = 1; box <= 256 && !found; box *= 2) {
            for (i64 x = 0; x <= box && !found; ++x) {
                for (i64 y = -box; y <= box && !found; ++y) {
                    if (std::gcd(x, y < 0 ? -y : y) != 1) continue;
                    const i64 v = f2.a * x * x + f2.b * x * y + f2.c * y * y;
                    if (v == 0 || std::gcd(v < 0 ? -v : v, f1.a < 0 ? -f1.a : f1.a) != 1)
                        continue;
                    const ExtGcd e = ext_gcd(x, y);  // x*e.x + y*e.y = 1
                    const i64 z = -e.y, w = e.x;     // det(x y; z w) = 1
                    const i64 A = v;
                    const i64 B = 2 * f2.a * x * z + f2.b * (x * w + y * z) + 2 * f2.c * y * w;
                    const i64 C = f2.a * z * z + f2.b * z * w + f2.c * w * w;
                    f2 = {A, B, C};
                    found = true;
                }
            }
        }
        if (!found) throw std::domain_error("composition: no coprime representative found");
    }
    const i64 m1 = 2 * f1.a, m2 = 2 * f2.a;
    const ExtGcd e = ext_gcd(m1, m2);
    const i64 g = e.g;
    if ((f2.b - f1.b) % g != 0) throw std::domain_error("composition: congruences unsolvable");
    const i64 A = f1.a * f2.a;
    const i64 lcm = m1 / g * m2;
    const __int128 delta = static_cast<__int128>((f2.b - f1.b) / g) * e.x % (m2 / g);
    __int128 B128 = (f1.b + static_cast<__int128>(m1) * delta) % lcm;
    // shift B into [0, 2|A|) before squaring: B is only defined mod 2A
    const i64 twoA = 2 * (A < 0 ? -A : A);
    B128 %= twoA;
    if (B128 < 0) B128 += twoA;
    const i64 B = static_cast<i64>(B128);
    const __int128 num = static_cast<__int128>(B) * B - D;
    if (num % (4 * static_cast<__int128>(A)) != 0)
        throw std::domain_error("composition: B^2 != D mod 4a1a2");
    const __int128 C128 = num / (4 * static_cast<__int128>(A));
    if (C128 > (static_cast<__int128>(1) << 62) || C128 < -(static_cast<__int128>(1) << 62))
        throw std::overflow_error("composition: coefficient overflow");
    return D > 0 ? reduce_indefinite({A, B, static_cast<i64>(C128)}, D, sq)
             : reduce_definite({A, B, static_cast<i64>(C128)}, D);
}

class FormClassGroup {
  public:
    explicit FormClassGroup(i64 D) : D_(D), sq_(isqrt_i64(D > 0 ? D : 0)) {
        if (D > 0)
            build_indefinite();
        else
            build_definite();
    }

    [[nodiscard]] i64 order() const { return static_cast<i64>(reps_.size()); }

    [[nodiscard]] int id_class() const { return id_; }

    [[nodiscard]] int mul(int i, int j) const {
        const QuadForm f = compose(reps_[static_cast<std::size_t>(i)], reps_[static_cast<std::size_t>(j)]);
        return class_of_.at(canon(f));
    }

    [[nodiscard]] int pow(int i, i64 e) const {
        int r = id_, b = i;
        while (e > 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    [[nodiscard]] AbelianGroupStructure structure() const;

    [[nodiscard]] int class_count_with(i64 e, int* witness = nullptr) const {
        // number of classes x with x^e = id
        int cnt = 0;
        for (int x = 0; x < order(); ++x)
            if (pow(x, e) == id_) {
                ++cnt;
                if (witness) *witness = x;
            }
        return cnt;
    }

  private:
    i64 D_, sq_;
    std::vector<QuadForm> reps_;
    std::map<QuadForm, int> class_of_;
    int id_ = 0;

    [[nodiscard]] QuadForm canon(QuadForm f) const {
        return D_ > 0 ? reduce_indefinite(f, D_, sq_) : reduce_definite(f, D_);
    }

    void build_indefinite() {
        // enumerate reduced forms, group them into rho-cycles
        std::vector<QuadForm> forms;
        for (i64 b = 1; b <= sq_; ++b) {
            if ((D_ - b * b) % 4 != 0 && (D_ - b * b) % 4 != -3) {
                // b must match D mod 2; (b^2 - D) = 0 mod 4 below filters anyway
            }
            if (((b * b - D_) % 4 + 4) % 4 != 0) continue;
            const i64 n4 = (b * b - D_) / 4;  // = a*c < 0
            const i64 lo = (sq_ - b) / 2 + 1, hi = (sq_ + b) / 2;
            for (i64 aa = std::max<i64>(1, lo); aa <= hi; ++aa) {
                if (n4 % aa != 0) continue;
                for (const i64 a : {aa, -aa}) {
                    const i64 c = n4 / a;
                    QuadForm f{a, b, c};
                    if (std::gcd(std::gcd(f.a < 0 ? -f.a : f.a, f.b), f.c < 0 ? -f.c : f.c) != 1)
                        continue;
                    if (reduced_indefinite(f, D_, sq_)) forms.push_back(f);
                }
            }
        }
        std::sort(forms.begin(), forms.end());
        for (const QuadForm& f : forms) {
            if (class_of_.count(f)) continue;
            const int cid = static_cast<int>(reps_.size());
            // walk the rho-cycle
            QuadForm g = f;
            QuadForm best = f;
            do {
                class_of_[g] = cid;
                if (g < best) best = g;
                g = reduce_indefinite(rho_step(g, D_, sq_), D_, sq_);
            } while (!(g == f));
            reps_.push_back(best);
        }
        // re-key representative list by canonical (minimal) form per cycle
        id_ = class_of_.at(canon(principal_form()));
    }

    void build_definite() {
        std::vector<QuadForm> forms;
        const i64 absD = -D_;
        for (i64 a = 1; a * a * 3 <= absD + 3; ++a) {
            for (i64 b = -a + 1; b <= a; ++b) {
                if (((b * b - D_) % (4 * a)) != 0) continue;
                const i64 c = (b * b - D_) / (4 * a);
                if (c < a) continue;
                if (a == c && b < 0) continue;
                QuadForm f{a, b, c};
                if (std::gcd(std::gcd(f.a, f.b < 0 ? -f.b : f.b), f.c) != 1) continue;
                forms.push_back(f);
            }
        }
        std::sort(forms.begin(), forms.end());
        for (const QuadForm& f : forms) {
            class_of_[f] = static_cast<int>(reps_.size());
            reps_.push_back(f);
        }
        id_ = class_of_.at(canon(principal_form()));
    }

    [[nodiscard]] QuadForm principal_form() const {
        if (D_ > 0) {
            i64 b = sq_;
            if (((b ^ D_) & 1) != 0) --b;  // match parity of D
            return {1, b, (b * b - D_) / 4};
        }
        const i64 b = mod_floor(D_, 2);
        return {1, b, (b * b - D_) / 4};
    }

    [[nodiscard]] QuadForm compose(QuadForm f1, QuadForm f2) const {
        return compose_reduced(f1, f2, D_, sq_);
    }
};

AbelianGroupStructure FormClassGroup::structure() const {
    AbelianGroupStructure out;
    const i64 h = order();
    if (h == 1) return out;
    // primary decomposition from counts of solutions of x^{p^j} = id
    i64 rem = h;
    std::map<i64, std::vector<int>> primary;  // p -> exponent multiset
    for (i64 p = 2; p <= rem; ++p) {
        if (rem % p != 0) continue;
        int e = 0;
        i64 hp = 1;
        while (rem % p == 0) {
            rem /= p;
            ++e;
            hp *= p;
        }
        // counts c_j = #\{x : x^{p^j} = id\} = p^{#\{i : a_i >= 1\} + ... }
        std::vector<int> ge(static_cast<std::size_t>(e) + 1, 0);  // ge[j] = #\{i : a_i >= j\}
        i64 prev = 1;
        i64 pj = 1;
        for (int j = 1; j <= e; ++j) {
            pj *= p;
            const i64 cnt = class_count_with(pj);
            i64 ratio = cnt / prev;
            prev = cnt;
            int r = 0;
            while (ratio > 1) {
                ratio /= p;
                ++r;
            }
            ge[static_cast<std::size_t>(j)] = r;
        }
        std::vector<int>& exps = primary[p];
        for (int idx = 0; idx < ge[1]; ++idx) {
            int ai = 0;
            for (int j = 1; j <= e; ++j)
                if (idx < ge[static_cast<std::size_t>(j)]) ai = j;
            exps.push_back(ai);
        }
    }
    // merge primary parts into invariant factors d_1 | d_2 | ...
    std::size_t k = 0;
    for (auto& [p, exps] : primary) k = std::max(k, exps.size());
    std::vector<i64> inv(k, 1);
    for (auto& [p, exps] : primary) {
        std::sort(exps.begin(), exps.end());  // ascending
        for (std::size_t i = 0; i < exps.size(); ++i) {
            i64 q = 1;
            for (int t = 0; t < exps[i]; ++t) q *= p;
            inv[k - exps.size() + i] *= q;
        }
    }
    out.invariant_factors.assign(inv.begin(), inv.end());
    std::erase(out.invariant_factors, 1);
    return out;
}

}  // namespace

bool is_fundamental_discriminant(i64 D) {
    if (D == 0 || D == 1) return false;
    auto squarefree = [](i64 n) {
        if (n < 0) n = -n;
        for (i64 d = 2; d * d <= n; ++d)
            if (n % (d * d) == 0) return false;
        return true;
    };
    const i64 r = mod_floor(D, 4);
    if (r == 1) return squarefree(D);
    if (r == 0) {
        const i64 m = D / 4;
        const i64 mr = mod_floor(m, 4);
        return (mr == 2 || mr == 3) && squarefree(m);
    }
    return false;
}

AbelianGroupStructure narrow_class_group(i64 D) {
    if (D > kDiscBound || D < -kDiscBound)
        throw std::invalid_argument("narrow_class_group: |D| exceeds the desk-scale bound");
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("narrow_class_group: not a fundamental discriminant");
    return FormClassGroup(D).structure();
}

QuadForm reduce_form(QuadForm f, i64 D) {
    if (f.discriminant() != D) throw std::invalid_argument("reduce_form: discriminant mismatch");
    return D > 0 ? reduce_indefinite(f, D, isqrt_i64(D)) : reduce_definite(f, D);
}

QuadForm compose_forms(QuadForm f1, QuadForm f2, i64 D) {
    if (f1.discriminant() != D || f2.discriminant() != D)
        throw std::invalid_argument("compose_forms: discriminant mismatch");
    return compose_reduced(f1, f2, D, isqrt_i64(D > 0 ? D : 0));
}

bool equivalent_forms(QuadForm f, QuadForm g, i64 D) {
    const i64 sq = isqrt_i64(D > 0 ? D : 0);
    QuadForm rf = reduce_form(f, D);
    const QuadForm rg = reduce_form(g, D);
    if (D < 0) return rf == rg;
    // same rho-cycle
    const QuadForm start = rf;
    do {
        if (rf == rg) return true;
        rf = reduce_indefinite(rho_step(rf, D, sq), D, sq);
    } while (!(rf == start));
    return false;
}

QuadForm principal_form_of(i64 D) {
    if (D > 0) {
        const i64 sq = isqrt_i64(D);
        i64 b = sq;
        if (((b ^ D) & 1) != 0) --b;
        return reduce_form({1, b, (b * b - D) / 4}, D);
    }
    const i64 b = ((D % 2) + 2) % 2;
    return reduce_form({1, b, (b * b - D) / 4}, D);
}

AbelianGroupStructure sylow_part(const AbelianGroupStructure& g, i64 l) {
    AbelianGroupStructure out;
    for (i64 d : g.invariant_factors) {
        i64 q = 1;
        while (d % l == 0) {
            d /= l;
            q *= l;
        }
        if (q > 1) out.invariant_factors.push_back(q);
    }
    std::sort(out.invariant_factors.begin(), out.invariant_factors.end());
    return out;
}

GenusReport genus_rank_check(i64 D) {
    GenusReport rep;
    if (D <= 0) throw std::invalid_argument("genus_rank_check: D must be positive");
    i64 m = D;
    for (i64 p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            ++rep.n_ramified;
            if (p == 2 || p % 4 != 1)
                throw std::invalid_argument("genus_rank_check: prime factors must be odd and 1 mod 4");
            while (m % p == 0) m /= p;
        }
    if (m > 1) {
        ++rep.n_ramified;
        if (m % 4 != 1) throw std::invalid_argument("genus_rank_check: prime factors must be 1 mod 4");
    }
    const AbelianGroupStructure g = narrow_class_group(D);
    for (i64 d : g.invariant_factors)
        if (d % 2 == 0) ++rep.two_rank;
    rep.ok = rep.two_rank == rep.n_ramified - 1;
    return rep;
}

OracleComparison predict_vs_oracle(const PrimeSet& S, int d_max) {
    if (S.l != 2)
        throw std::invalid_argument(
            "predict_vs_oracle: the form-class oracle computes quadratic narrow class groups, so "
            "only l = 2 predictions can be compared");
    OracleComparison cmp;
    const ClassGroupPrediction pred = class_group_prediction(S, d_max);
    cmp.predicted_e = pred.e;

    i64 D = 1;
    for (i64 p : S.primes) D *= p;
    const AbelianGroupStructure g = narrow_class_group(D);
    cmp.oracle_sylow = sylow_part(g, S.l);
    for (int d = 1; d <= d_max; ++d) {
        int cnt = 0;
        for (i64 f : cmp.oracle_sylow.invariant_factors) {
            int v = 0;
            while (f % S.l == 0) {
                f /= S.l;
                ++v;
            }
            if (v >= d) ++cnt;
        }
        cmp.oracle_e.push_back(cnt);
    }
    cmp.pass = cmp.predicted_e == cmp.oracle_e;
    return cmp;
}

}  // namespace arithtop
