#include "arithtop/covering.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace arithtop {

Perm perm_identity(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
    Perm c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
}

Perm perm_inverse(const Perm& a) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return c;
}

bool is_permutation(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

FiniteAction action_from_json_text(const std::string& text) {
    using nlohmann::json;
    const json j = json::parse(text);
    FiniteAction act;
    act.degree = j.at("degree").get<int>();
    for (const auto& [name, arr] : j.at("gens").items()) {
        Perm p;
        for (const auto& v : arr) p.push_back(v.get<int>() - 1);  // 1-based in JSON
        act.gens[name] = p;
    }
    validate_action(act);
    return act;
}

namespace {

std::vector<std::vector<int>> orbits_of(const std::vector<Perm>& gens, int n) {
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::queue<int> q;
        q.push(s);
        comp[static_cast<std::size_t>(s)] = id;
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            out[static_cast<std::size_t>(id)].push_back(x);
            for (const Perm& g : gens) {
                for (int y : {g[static_cast<std::size_t>(x)],
                              perm_inverse(g)[static_cast<std::size_t>(x)]}) {
                    if (comp[static_cast<std::size_t>(y)] < 0) {
                        comp[static_cast<std::size_t>(y)] = id;
                        q.push(y);
                    }
                }
            }
        }
    }
    return out;
}

std::vector<Perm> close_subgroup(const std::vector<Perm>& gens, int n, std::size_t max_order) {
    std::set<Perm> elems{perm_identity(n)};
    std::queue<Perm> q;
    q.push(perm_identity(n));
    while (!q.empty()) {
        const Perm x = q.front();
        q.pop();
        for (const Perm& g : gens) {
            const Perm y = perm_mul(g, x);
            if (elems.insert(y).second) {
                if (elems.size() > max_order) throw std::domain_error("group too large to materialize");
                q.push(y);
            }
        }
    }
    return {elems.begin(), elems.end()};
}

}  // namespace

void validate_action(const FiniteAction& act) {
    if (act.degree < 1) throw std::invalid_argument("action: degree must be >= 1");
    if (!act.gens.count("tau") || !act.gens.count("sigma"))
        throw std::invalid_argument("action: gens must include tau and sigma");
    for (const auto& [name, p] : act.gens) {
        if (static_cast<int>(p.size()) != act.degree)
            throw std::invalid_argument("action: permutation '" + name + "' has wrong degree");
        if (!is_permutation(p)) throw std::invalid_argument("action: '" + name + "' is not a permutation");
    }
    std::vector<Perm> gens;
    for (const auto& [name, p] : act.gens) gens.push_back(p);
    if (orbits_of(gens, act.degree).size() != 1)
        throw std::invalid_argument("action: not transitive");
    // <tau> normal in <tau, sigma>: sigma tau sigma^-1 must be a power of tau;
    // walk the whole cyclic group <tau> (its order can exceed the degree)
    const Perm& tau = act.tau();
    const Perm& sigma = act.sigma();
    const Perm conj = perm_mul(perm_mul(sigma, tau), perm_inverse(sigma));
    const Perm id = perm_identity(act.degree);
    bool ok = conj == id;
    Perm power = tau;
    for (long guard = 0; !ok && guard < 1'000'000; ++guard) {
        if (power == conj) ok = true;
        if (power == id) break;
        power = perm_mul(power, tau);
    }
    if (!ok) throw std::invalid_argument("action: <tau> is not normal in <tau, sigma>");
}

Decomposition decompose(const FiniteAction& act) {
    validate_action(act);
    Decomposition dec;
    dec.n = act.degree;
    const Perm& tau = act.tau();
    const Perm& sigma = act.sigma();

    const auto d_orbits = orbits_of({tau, sigma}, act.degree);
    const auto t_orbits = orbits_of({tau}, act.degree);
    std::vector<int> t_block(static_cast<std::size_t>(act.degree), -1);
    for (std::size_t b = 0; b < t_orbits.size(); ++b)
        for (int x : t_orbits[b]) t_block[static_cast<std::size_t>(x)] = static_cast<int>(b);

    for (const auto& orb : d_orbits) {
        OrbitData od;
        od.points = orb;
        std::sort(od.points.begin(), od.points.end());
        // sigma-orbit length on the tau-blocks inside this orbit
        const int b0 = t_block[static_cast<std::size_t>(orb.front())];
        std::set<int> seen{b0};
        int b = b0;
        for (int steps = 0; steps < act.degree + 1; ++steps) {
            const int x = t_orbits[static_cast<std::size_t>(b)].front();
            b = t_block[static_cast<std::size_t>(sigma[static_cast<std::size_t>(x)])];
            if (b == b0) break;
            seen.insert(b);
        }
        od.f = static_cast<int>(seen.size());
        // every tau-block inside the orbit must be hit (sigma acts
        // transitively on blocks since tau acts trivially on them)
        std::set<int> blocks_in_orbit;
        for (int x : orb) blocks_in_orbit.insert(t_block[static_cast<std::size_t>(x)]);
        if (blocks_in_orbit.size() != seen.size())
            throw std::domain_error("decompose: sigma is not transitive on tau-blocks (invalid peripheral data)");
        if (static_cast<int>(orb.size()) % od.f != 0)
            throw std::domain_error("decompose: non-integral ramification index");
        od.e = static_cast<int>(orb.size()) / od.f;
        dec.orbits.push_back(std::move(od));
    }
    std::sort(dec.orbits.begin(), dec.orbits.end(),
              [](const OrbitData& a, const OrbitData& b) { return a.points < b.points; });
    return dec;
}

GaloisReport galois_check(const FiniteAction& act) {
    GaloisReport rep;
    std::vector<Perm> gens;
    for (const auto& [name, p] : act.gens) gens.push_back(p);
    const auto full = close_subgroup(gens, act.degree, 1u << 20);
    rep.regular = static_cast<i64>(full.size()) == act.degree;
    if (!rep.regular) {
        rep.violations.push_back("action is not regular (group order " + std::to_string(full.size()) +
                                 " != degree " + std::to_string(act.degree) + ")");
        return rep;
    }
    const Decomposition dec = decompose(act);
    rep.r = dec.r();
    rep.e = dec.orbits.front().e;
    rep.f = dec.orbits.front().f;
    for (const auto& o : dec.orbits)
        if (o.e != rep.e || o.f != rep.f)
            rep.violations.push_back("e or f varies across orbits in the Galois case");
    const auto inertia = close_subgroup({act.tau()}, act.degree, 1u << 20);
    const auto decomp = close_subgroup({act.tau(), act.sigma()}, act.degree, 1u << 20);
    rep.inertia_order = static_cast<i64>(inertia.size());
    rep.decomposition_order = static_cast<i64>(decomp.size());
    if (rep.inertia_order != rep.e)
        rep.violations.push_back("#I != e (" + std::to_string(rep.inertia_order) + " vs " +
                                 std::to_string(rep.e) + ")");
    if (rep.decomposition_order != static_cast<i64>(rep.e) * rep.f)
        rep.violations.push_back("#D != e*f");
    if (static_cast<i64>(rep.e) * rep.f * rep.r != act.degree)
        rep.violations.push_back("n != e*f*r");
    // D/I cyclic generated by sigma: the least k > 0 with sigma^k in I must
    // equal [D : I]
    std::set<Perm> iset(inertia.begin(), inertia.end());
    Perm s = act.sigma();
    i64 k = 1;
    while (!iset.count(s)) {
        s = perm_mul(s, act.sigma());
        ++k;
        if (k > rep.decomposition_order + 1) break;
    }
    rep.quotient_cyclic = k == rep.decomposition_order / std::max<i64>(1, rep.inertia_order);
    if (!rep.quotient_cyclic) rep.violations.push_back("D/I is not cyclic generated by sigma");
    return rep;
}

PermGroup::PermGroup(std::vector<Perm> generators, std::size_t max_order) {
    if (generators.empty()) throw std::invalid_argument("PermGroup: need at least one generator");
    degree_ = static_cast<int>(generators.front().size());
    for (const Perm& g : generators) {
        if (static_cast<int>(g.size()) != degree_ || !is_permutation(g))
            throw std::invalid_argument("PermGroup: bad generator");
    }
    elems_ = close_subgroup(generators, degree_, max_order);
    for (std::size_t i = 0; i < elems_.size(); ++i) index_[elems_[i]] = static_cast<int>(i);
}

TransferResult transfer_kernel(const std::vector<Perm>& group_gens,
                               const std::vector<Perm>& subgroup_gens) {
    const PermGroup G(group_gens, 100000);
    const int n = G.degree();
    const Perm id = perm_identity(n);
    std::vector<Perm> hgens = subgroup_gens;
    if (hgens.empty()) hgens.push_back(id);
    const PermGroup H(hgens, 100000);
    for (const Perm& h : H.elements())
        if (!G.contains(h)) throw std::invalid_argument("transfer_kernel: H is not contained in Gamma");

    TransferResult res;
    res.group_order = G.order();
    res.subgroup_order = H.order();
    if (res.group_order % res.subgroup_order != 0)
        throw std::domain_error("transfer_kernel: Lagrange violation (H not a subgroup?)");
    res.index = res.group_order / res.subgroup_order;

    // Gamma/H abelian <=> [Gamma, Gamma] <= H
    for (const Perm& a : group_gens)
        for (const Perm& b : group_gens) {
            const Perm c = perm_mul(perm_mul(a, b), perm_mul(perm_inverse(a), perm_inverse(b)));
            if (!H.contains(c)) throw std::invalid_argument("transfer_kernel: Gamma/H is not abelian");
        }

    // commutator subgroups as element sets
    auto derived = [&](const PermGroup& K) {
        std::vector<Perm> cgens;
        for (const Perm& a : K.elements())
            for (const Perm& b : K.elements())
                cgens.push_back(perm_mul(perm_mul(a, b), perm_mul(perm_inverse(a), perm_inverse(b))));
        return PermGroup(cgens, 100000);
    };
    const PermGroup Gp = derived(G);
    const PermGroup Hp = derived(H);

    // right coset representatives of H in Gamma
    std::vector<Perm> reps;
    std::set<Perm> covered;
    for (const Perm& g : G.elements()) {
        bool found = false;
        for (const Perm& h : H.elements())
            if (covered.count(perm_mul(h, g))) {
                found = true;
                break;
            }
        if (!found) {
            reps.push_back(g);
            covered.insert(g);
        }
    }

    // transfer of g: prod over i of r_i g r_{j(i)}^{-1}, evaluated mod H'
    auto transfer_of = [&](const Perm& g) {
        Perm prod = id;
        for (const Perm& r : reps) {
            const Perm rg = perm_mul(r, g);
            // find the representative r_j with H r_j = H r g
            for (const Perm& r2 : reps) {
                const Perm h = perm_mul(rg, perm_inverse(r2));
                if (H.contains(h)) {
                    prod = perm_mul(prod, h);  // order immaterial modulo H'
                    break;
                }
            }
        }
        return prod;
    };

    // canonical form mod a derived subgroup
    auto canon_mod = [&](const Perm& g, const PermGroup& prime) {
        Perm best = g;
        for (const Perm& q : prime.elements()) {
            const Perm cand = perm_mul(g, q);
            if (cand < best) best = cand;
        }
        return best;
    };

    // kernel of V : Gamma/Gamma' -> H/H'
    std::map<Perm, Perm> image_of_coset;  // canonical Gamma' coset -> canonical H' coset of V
    for (const Perm& g : G.elements()) {
        const Perm key = canon_mod(g, Gp);
        if (image_of_coset.count(key)) continue;
        image_of_coset[key] = canon_mod(transfer_of(g), Hp);
    }
    const Perm trivial = canon_mod(id, Hp);
    std::vector<Perm> kernel_elems;  // as Gamma'-coset representatives
    for (const auto& [coset, img] : image_of_coset)
        if (img == trivial) kernel_elems.push_back(coset);
    res.kernel_order = static_cast<i64>(kernel_elems.size());
    res.divisible_by_index = res.kernel_order % res.index == 0;

    // kernel structure: treat kernel cosets as an abelian group under
    // multiplication followed by canonicalization
    {
        std::vector<Perm> elems = kernel_elems;
        // build a tiny wrapper: represent each coset by its canonical perm and
        // multiply via canon_mod; reuse abelian_structure by mapping cosets to
        // permutations is unsound in general, so compute orders directly.
        AbelianGroupStructure st;
        const i64 h = res.kernel_order;
        if (h > 1) {
            auto cmul = [&](const Perm& a, const Perm& b) { return canon_mod(perm_mul(a, b), Gp); };
            auto cpow = [&](const Perm& a, i64 e) {
                Perm r = canon_mod(id, Gp), b = a;
                while (e > 0) {
                    if (e & 1) r = cmul(r, b);
                    b = cmul(b, b);
                    e >>= 1;
                }
                return r;
            };
            const Perm cid = canon_mod(id, Gp);
            std::map<i64, std::vector<int>> primary;
            i64 rem = h;
            for (i64 p = 2; p <= rem; ++p) {
                if (rem % p != 0) continue;
                int e = 0;
                while (rem % p == 0) {
                    rem /= p;
                    ++e;
                }
                std::vector<int> ge(static_cast<std::size_t>(e) + 1, 0);
                i64 prev = 1, pj = 1;
                for (int j = 1; j <= e; ++j) {
                    pj *= p;
                    i64 cnt = 0;
                    for (const Perm& x : elems)
                        if (cpow(x, pj) == cid) ++cnt;
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
            std::size_t kk = 0;
            for (auto& [p, exps] : primary) kk = std::max(kk, exps.size());
            std::vector<i64> inv(kk, 1);
            for (auto& [p, exps] : primary) {
                std::sort(exps.begin(), exps.end());
                for (std::size_t i = 0; i < exps.size(); ++i) {
                    i64 q = 1;
                    for (int t = 0; t < exps[i]; ++t) q *= p;
                    inv[kk - exps.size() + i] *= q;
                }
            }
            st.invariant_factors.assign(inv.begin(), inv.end());
            std::erase(st.invariant_factors, 1);
        }
        res.kernel = st;
    }
    return res;
}

}  // namespace arithtop
