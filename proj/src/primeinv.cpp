#include "arithtop/primeinv.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace arithtop {

namespace {

i64 mod_floor(i64 a, i64 m) {
    a %= m;
    return a < 0 ? a + m : a;
}

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<__int128>(a) * b % m); }

i64 isqrt_i64(i64 n) {
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

i64 mod_pow(i64 base, i64 exp, i64 mod) {
    base = mod_floor(base, mod);
    i64 r = 1 % mod;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, mod);
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return r;
}

int legendre(i64 a, i64 p) {
    if (p <= 2 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
    a = mod_floor(a, p);
    if (a == 0) return 0;
    const i64 r = mod_pow(a, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

i64 smallest_primitive_root(i64 p) {
    std::vector<i64> prime_factors;
    i64 m = p - 1;
    for (i64 d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) prime_factors.push_back(m);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (i64 q : prime_factors)
            if (mod_pow(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::domain_error("no primitive root (p not prime?)");
}

i64 sqrt_mod(i64 a, i64 p) {
    a = mod_floor(a, p);
    if (a == 0) return 0;
    if (legendre(a, p) != 1) throw std::domain_error("sqrt_mod: not a quadratic residue");
    if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    i64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    i64 z = 2;
    while (legendre(z, p) != -1) ++z;
    int m = s;
    i64 c = mod_pow(z, q, p);
    i64 t = mod_pow(a, q, p);
    i64 r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
        int i = 0;
        for (i64 tt = t; tt != 1; tt = mulmod(tt, tt, p)) ++i;
        i64 b = c;
        for (int k = 0; k < m - i - 1; ++k) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

PrimeSet::PrimeSet(int l_in, std::vector<i64> ps) : l(l_in), primes(std::move(ps)) {
    if (!arithtop::is_prime(l)) throw std::invalid_argument("PrimeSet: l must be prime");
    std::vector<i64> sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("PrimeSet: primes must be distinct");
    for (i64 p : primes) {
        if (p <= 2 || !arithtop::is_prime(p))
            throw std::invalid_argument("PrimeSet: " + std::to_string(p) + " is not an odd prime");
        if ((p - 1) % l != 0)
            throw std::invalid_argument("PrimeSet: " + std::to_string(p) + " is not 1 mod " +
                                        std::to_string(l));
    }
    e_s = 1;
    while (true) {
        i64 le = 1;
        for (int k = 0; k <= e_s; ++k) le *= l;
        bool all = !primes.empty();
        for (i64 p : primes)
            if ((p - 1) % le != 0) all = false;
        if (!all) break;
        ++e_s;
    }
}

PrimeSet primeset_from_json_text(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<i64> ps;
    for (const auto& v : j.at("primes")) ps.push_back(v.get<i64>());
    return PrimeSet(j.at("l").get<int>(), std::move(ps));
}

i64 power_residue_index(i64 a, i64 p, i64 m) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("power_residue_index: p must be an odd prime");
    if (m < 1 || (p - 1) % m != 0)
        throw std::invalid_argument("power_residue_index: need p = 1 mod m");
    if (mod_floor(a, p) == 0) throw std::invalid_argument("power_residue_index: gcd(a, p) != 1");
    const i64 g = smallest_primitive_root(p);
    const i64 t = mod_pow(a, (p - 1) / m, p);
    const i64 h = mod_pow(g, (p - 1) / m, p);
    i64 x = 1;
    for (i64 k = 0; k < m; ++k) {
        if (x == t) return k;
        x = mulmod(x, h, p);
    }
    throw std::domain_error("power_residue_index: discrete log not found");
}

i64 lk_l(i64 p_i, i64 p_j, int l) { return power_residue_index(p_j, p_i, l); }

i64 redei_search_cap() {
    if (const char* env = std::getenv("ARITHTOP_SEARCH_CAP")) {
        const i64 v = std::atoll(env);
        if (v > 0) return v;
    }
    return 1 << 14;
}

namespace {

// primitive solutions of a^2 = p1 b^2 + p2 c^2 with b even and sign of a
// flipped so a + b = 1 mod 4; prefers solutions with p3 dividing neither b
// nor c so the symbol evaluation stays nondegenerate
std::vector<RedeiWitness> redei_solutions(i64 p1, i64 p2, i64 avoid, i64 cap, int want) {
    std::vector<RedeiWitness> out;
    for (i64 bound = 64; bound <= cap && static_cast<int>(out.size()) < want; bound *= 2) {
        out.clear();
        for (i64 c = 1; c <= bound && static_cast<int>(out.size()) < want; ++c) {
            for (i64 b = 2; b <= bound; b += 2) {
                const i64 n = p1 * b * b + p2 * c * c;
                const i64 a = isqrt_i64(n);
                if (a * a != n) continue;
                if (std::gcd(a, b) != 1) continue;
                if (avoid > 1 && (b % avoid == 0 || c % avoid == 0)) continue;
                const i64 aa = (a + b) % 4 == 1 ? a : -a;
                out.push_back({aa, b, c});
                if (static_cast<int>(out.size()) >= want) break;
            }
        }
    }
    return out;
}

}  // namespace

RedeiResult redei_triple(i64 p1, i64 p2, i64 p3, i64 search_cap) {
    for (i64 p : {p1, p2, p3}) {
        if (!is_prime(p) || p % 4 != 1)
            throw std::invalid_argument("redei_triple: primes must be = 1 mod 4");
    }
    if (p1 == p2 || p1 == p3 || p2 == p3)
        throw std::invalid_argument("redei_triple: primes must be distinct");
    for (auto [x, y] : {std::pair{p1, p2}, {p1, p3}, {p2, p3}})
        if (legendre(x, y) != 1)
            throw std::invalid_argument("redei_triple: Delta-condition fails (a pairwise symbol is -1)");

    if (search_cap <= 0) search_cap = redei_search_cap();
    auto sols = redei_solutions(p1, p2, p3, search_cap, 1);
    if (sols.empty()) {
        // fall back to solutions without the p3-avoidance
        sols = redei_solutions(p1, p2, 1, search_cap, 1);
        if (sols.empty())
            throw std::domain_error(
                "redei_triple: no normalized solution within search cap; raise ARITHTOP_SEARCH_CAP");
    }
    const RedeiWitness& wit = sols.front();

    // route (a): evaluate (a + b sqrt(p1)) at a prime above p3
    const i64 s = sqrt_mod(mod_floor(p1, p3), p3);
    i64 v = mod_floor(wit.a + wit.b % p3 * s, p3);
    if (v == 0) v = mod_floor(wit.a - wit.b % p3 * s, p3);
    if (v == 0) throw std::domain_error("redei_triple: degenerate evaluation (both conjugates vanish)");
    const int sym_a = legendre(v, p3);

    // route (b): distinct roots of x^4 - 2a x^2 + p2 c^2 mod p3
    int roots = 0;
    const i64 A = mod_floor(-2 * wit.a, p3);
    const i64 B = mod_floor(mulmod(mod_floor(p2, p3), mulmod(wit.c, wit.c, p3), p3), p3);
    for (i64 x = 0; x < p3; ++x) {
        const i64 x2 = mulmod(x, x, p3);
        const i64 val = mod_floor(mulmod(x2, x2, p3) + mulmod(A, x2, p3) + B, p3);
        if (val == 0) ++roots;
    }
    const int sym_b = roots >= 2 ? 1 : -1;

    if (sym_a != sym_b)
        throw std::domain_error("redei_triple: normalized-solution route and quartic route disagree");
    return RedeiResult{sym_a, wit, roots};
}

const ArithMilnorEntry& ArithMilnorTable::at(const MultiIndex& I) const {
    auto it = entries_.find(I);
    if (it == entries_.end()) {
        std::string s = "missing arithmetic mu entry (";
        for (int v : I) s += std::to_string(v) + " ";
        throw std::out_of_range(s + "); supply it via a user mu-hat table");
    }
    return it->second;
}

ArithMilnorTable arith_milnor_table(const PrimeSet& S, i64 m,
                                    const std::optional<std::string>& user_table_json) {
    // m must be a power of l dividing l^e_s
    i64 mm = m;
    int e = 0;
    while (mm > 1 && mm % S.l == 0) {
        mm /= S.l;
        ++e;
    }
    if (mm != 1 || e < 1 || e > S.e_s)
        throw std::invalid_argument("arith_milnor_table: m must be a power of l dividing l^e_S");

    ArithMilnorTable table(S.l, S.n(), S.e_s);
    const int n = S.n();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            ArithMilnorEntry ent;
            ent.precision = e;
            i64 modv = 1;
            for (int k = 0; k < e; ++k) modv *= S.l;
            ent.value = i == j ? 0
                               : power_residue_index(S.primes[static_cast<std::size_t>(j - 1)],
                                                     S.primes[static_cast<std::size_t>(i - 1)], modv);
            table.set({i, j}, ent);
        }

    if (S.l == 2) {
        // triples via Redei where the Delta-condition holds (mod 2 only)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    bool cond = true;
                    for (auto [x, y] : {std::pair{i, j}, {j, i}, {i, k}, {k, i}, {j, k}, {k, j}})
                        if (table.at({x, y}).value % 2 != 0) cond = false;
                    if (!cond) continue;  // entry unavailable; Redei needs +1 pairwise symbols
                    const RedeiResult r = redei_triple(S.primes[static_cast<std::size_t>(i - 1)],
                                                       S.primes[static_cast<std::size_t>(j - 1)],
                                                       S.primes[static_cast<std::size_t>(k - 1)]);
                    table.set({i, j, k}, {r.symbol == 1 ? 0 : 1, 1, Provenance::computed});
                }
        // repeated-index triples vanish mod 2 for this congruence family
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    if (i == j || j == k || i == k) table.set({i, j, k}, {0, 1, Provenance::computed});
    }

    if (user_table_json) merge_user_table(table, *user_table_json);
    return table;
}

void merge_user_table(ArithMilnorTable& table, const std::string& json_text) {
    using nlohmann::json;
    const json j = json::parse(json_text);
    const i64 m = j.at("m").get<i64>();
    i64 mm = m;
    int prec = 0;
    while (mm > 1 && mm % table.l() == 0) {
        mm /= table.l();
        ++prec;
    }
    if (mm != 1 || prec < 1)
        throw std::invalid_argument("user mu table: m must be a power of l");
    for (const auto& [key, val] : j.at("entries").items()) {
        std::istringstream is(key);
        MultiIndex I;
        int x;
        while (is >> x) {
            if (x < 1 || x > table.n())
                throw std::invalid_argument("user mu table: index out of range in '" + key + "'");
            I.push_back(x);
        }
        if (I.size() < 2) throw std::invalid_argument("user mu table: indices need length >= 2");
        table.set(I, {mod_floor(val.get<i64>(), m), prec, Provenance::user_supplied});
    }
}

RedeiMatrix redei_matrix(const PrimeSet& S) {
    RedeiMatrix R;
    R.l = S.l;
    const int n = S.n();
    R.m.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        int diag = 0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int v = static_cast<int>(lk_l(S.primes[static_cast<std::size_t>(i)],
                                                S.primes[static_cast<std::size_t>(j)], S.l) % S.l);
            R.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            diag = (diag + v) % S.l;
        }
        R.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = (S.l - diag) % S.l;
    }
    // rank over F_l
    auto M = R.m;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] % S.l != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[static_cast<std::size_t>(rank)], M[static_cast<std::size_t>(piv)]);
        // scale pivot row to 1
        int inv = 1;
        const int pv = M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        for (int t = 1; t < S.l; ++t)
            if (t * pv % S.l == 1) inv = t;
        for (auto& x : M[static_cast<std::size_t>(rank)]) x = x * inv % S.l;
        for (int r = 0; r < n; ++r) {
            if (r == rank) continue;
            const int f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f)
                for (int cc = 0; cc < n; ++cc)
                    M[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] =
                        ((M[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -
                          f * M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(cc)]) % S.l + S.l) % S.l;
        }
        ++rank;
    }
    R.rank = rank;
    R.e2 = n - 1 - rank;
    return R;
}

ChainMatrix t_s_matrix(const ArithMilnorTable& table, const ChainRing& ring) {
    const int n = table.n();
    const int d = ring.d();
    const int l = ring.l();
    if (l != table.l()) throw std::invalid_argument("t_s_matrix: ring and table disagree on l");
    ChainMatrix T(ring, n, n);
    std::vector<ChainRing::Elt> pis{ring.one()};
    for (int k = 0; k < d; ++k) pis.push_back(ring.mul(pis.back(), ring.pi()));

    // coefficient of pi^r needs mu known mod l^ceil((d-r)/(l-1))
    auto need = [&](int r) { return (d - r + l - 2) / (l - 1); };
    auto get = [&](const MultiIndex& I, int r) -> i64 {
        const ArithMilnorEntry& e = table.at(I);
        if (e.precision < need(r)) {
            std::string s = "t_s_matrix: entry (";
            for (int v : I) s += std::to_string(v) + " ";
            throw std::domain_error(s + ") known mod l^" + std::to_string(e.precision) +
                                    " but level d = " + std::to_string(d) + " needs l^" +
                                    std::to_string(need(r)));
        }
        return e.value;
    };

    std::function<void(int, MultiIndex&, const std::function<void(const MultiIndex&)>&)> walk =
        [&](int len, MultiIndex& cur, const std::function<void(const MultiIndex&)>& f) {
            if (len == 0) {
                f(cur);
                return;
            }
            for (int i = 1; i <= n; ++i) {
                cur.push_back(i);
                walk(len - 1, cur, f);
                cur.pop_back();
            }
        };

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            ChainRing::Elt acc = ring.zero();
            if (i == j) {
                for (int r = 1; r <= d - 1; ++r) {
                    MultiIndex cur;
                    walk(r, cur, [&](const MultiIndex& pre) {
                        if (pre.back() == i) return;
                        MultiIndex I = pre;
                        I.push_back(i);
                        const i64 m = get(I, r);
                        if (m) acc = ring.sub(acc, ring.mul(ring.from_int(m), pis[static_cast<std::size_t>(r)]));
                    });
                }
            } else {
                const i64 m1 = get({j, i}, 1);
                if (m1) acc = ring.add(acc, ring.mul(ring.from_int(m1), pis[1]));
                for (int r = 1; r <= d - 2; ++r) {
                    MultiIndex cur;
                    walk(r, cur, [&](const MultiIndex& pre) {
                        MultiIndex I = pre;
                        I.push_back(j);
                        I.push_back(i);
                        const i64 m = get(I, r + 1);
                        if (m) acc = ring.add(acc, ring.mul(ring.from_int(m), pis[static_cast<std::size_t>(r + 1)]));
                    });
                }
            }
            T.at(i - 1, j - 1) = acc;
        }
    return T;
}

ClassGroupPrediction class_group_prediction(const PrimeSet& S, int d_max,
                                            const std::optional<std::string>& user_table_json) {
    if (d_max < 2) throw std::invalid_argument("class_group_prediction: d_max >= 2");
    ClassGroupPrediction out;
    out.l = S.l;
    out.n = S.n();
    out.e.push_back(S.n() - 1);  // e_1 from genus theory
    i64 m = 1;
    for (int k = 0; k < S.e_s; ++k) m *= S.l;
    const ArithMilnorTable table = arith_milnor_table(S, m, user_table_json);
    for (int d = 2; d <= d_max; ++d) {
        const ChainRing ring(S.l, d);
        const ChainMatrix T = t_s_matrix(table, ring);
        const ElementaryDivisors div = snf(T);
        out.e.push_back(e_d_from_divisors(div, d));
        if (out.e.back() > out.e[out.e.size() - 2])
            throw std::domain_error("class_group_prediction: e_d increased with d (inconsistent data)");
    }
    // invariant factors are pinned once the sequence hits 0:
    // #\{i : a_i >= d\} = e_d
    if (out.e.back() == 0) {
        out.complete = true;
        for (int d = static_cast<int>(out.e.size()); d >= 1; --d) {
            const int count = out.e[static_cast<std::size_t>(d - 1)];
            while (static_cast<int>(out.invariant_exponents.size()) < count)
                out.invariant_exponents.push_back(d);
        }
        std::sort(out.invariant_exponents.begin(), out.invariant_exponents.end());
    }
    return out;
}

int gauss_sum_symbol(i64 p, i64 q) {
    if (p == q) throw std::invalid_argument("gauss_sum_symbol: p and q must be distinct");
    if (!is_prime(p) || !is_prime(q) || p == 2 || q == 2)
        throw std::invalid_argument("gauss_sum_symbol: need distinct odd primes");
    // work in F_q[x] / Phi_p(x), Phi_p = x^{p-1} + ... + 1
    const std::size_t deg = static_cast<std::size_t>(p - 1);
    auto mul = [&](const std::vector<i64>& A, const std::vector<i64>& B) {
        std::vector<i64> C(2 * deg - 1, 0);
        for (std::size_t i = 0; i < deg; ++i) {
            if (!A[i]) continue;
            for (std::size_t j = 0; j < deg; ++j)
                if (B[j]) C[i + j] = (C[i + j] + mulmod(A[i], B[j], q)) % q;
        }
        for (std::size_t i = C.size(); i-- > deg;) {
            const i64 c = C[i];
            if (!c) continue;
            C[i] = 0;
            for (std::size_t j = 0; j < deg; ++j)
                C[i - deg + j] = mod_floor(C[i - deg + j] - c, q);
        }
        C.resize(deg);
        return C;
    };
    std::vector<i64> g(deg, 0);
    for (i64 x = 0; x < p; ++x) {
        const i64 e = mulmod(x, x, p);
        if (static_cast<std::size_t>(e) == deg) {
            for (std::size_t j = 0; j < deg; ++j) g[j] = mod_floor(g[j] - 1, q);
        } else {
            g[static_cast<std::size_t>(e)] = (g[static_cast<std::size_t>(e)] + 1) % q;
        }
    }
    std::vector<i64> r(deg, 0);
    r[0] = 1;
    i64 e = q - 1;
    std::vector<i64> base = g;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    for (std::size_t i = 1; i < deg; ++i)
        if (r[i] != 0) throw std::domain_error("gauss_sum_symbol: nonconstant result (degenerate field)");
    if (r[0] == 1) return 1;
    if (r[0] == q - 1) return -1;
    throw std::domain_error("gauss_sum_symbol: result is not +-1");
}

}  // namespace arithtop
