#include "arithtop/linkinv.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace arithtop {

namespace {

struct PDAnalysis {
    std::map<int, int> succ;                 // edge -> next edge along orientation
    std::vector<std::vector<int>> comps;     // edge cycles, one per component
    std::map<int, int> comp_of_edge;
    std::map<int, int> arc_of_edge;          // 0-based arc ids
    int n_arcs = 0;
    std::map<int, std::tuple<int, int, int, int>> under_in;  // edge -> (crossing, over_arc, sign, to_arc)
};

PDAnalysis analyze(const PDCode& pd) {
    PDAnalysis out;
    std::map<int, int> occurrences;
    for (const auto& cr : pd.crossings) {
        if (cr.sign != 1 && cr.sign != -1) throw std::invalid_argument("PD: sign must be +-1");
        for (int e : cr.e) {
            if (e < 1) throw std::invalid_argument("PD: edge labels must be positive");
            ++occurrences[e];
        }
    }
    for (const auto& [e, c] : occurrences)
        if (c != 2)
            throw std::invalid_argument("PD: edge " + std::to_string(e) + " occurs " +
                                        std::to_string(c) + " times (want 2)");

    auto set_succ = [&](int u, int v) {
        auto it = out.succ.find(u);
        if (it != out.succ.end() && it->second != v)
            throw std::invalid_argument("PD: inconsistent orientation at edge " + std::to_string(u));
        out.succ[u] = v;
    };
    for (const auto& cr : pd.crossings) {
        const auto [a, b, c, d] = std::tuple{cr.e[0], cr.e[1], cr.e[2], cr.e[3]};
        set_succ(a, c);
        if (cr.sign == 1)
            set_succ(d, b);
        else
            set_succ(b, d);
    }
    if (out.succ.size() != occurrences.size())
        throw std::invalid_argument("PD: orientation map incomplete (bad under/over structure)");
    {
        std::set<int> heads;
        for (const auto& [u, v] : out.succ)
            if (!heads.insert(v).second)
                throw std::invalid_argument("PD: edge " + std::to_string(v) + " has two predecessors");
    }

    // components = cycles of succ
    for (const auto& [e0, _] : occurrences) {
        if (out.comp_of_edge.count(e0)) continue;
        std::vector<int> cyc{e0};
        out.comp_of_edge[e0] = static_cast<int>(out.comps.size());
        for (int x = out.succ.at(e0); x != e0; x = out.succ.at(x)) {
            out.comp_of_edge[x] = static_cast<int>(out.comps.size());
            cyc.push_back(x);
        }
        out.comps.push_back(std::move(cyc));
    }

    // arcs: union over-in/over-out edge pairs
    std::map<int, int> parent;
    for (const auto& [e, _] : occurrences) parent[e] = e;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& cr : pd.crossings) parent[find(cr.e[1])] = find(cr.e[3]);
    for (const auto& [e, _] : occurrences) {
        const int r = find(e);
        if (!out.arc_of_edge.count(r)) out.arc_of_edge[r] = out.n_arcs++;
        out.arc_of_edge[e] = out.arc_of_edge[r];
    }

    for (std::size_t ci = 0; ci < pd.crossings.size(); ++ci) {
        const auto& cr = pd.crossings[ci];
        out.under_in[cr.e[0]] = {static_cast<int>(ci), out.arc_of_edge.at(cr.e[1]), cr.sign,
                                 out.arc_of_edge.at(cr.e[2])};
    }
    return out;
}

}  // namespace

PDCode parse_pd_text(std::istream& in) {
    PDCode pd;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "O") {
            ++pd.free_loops;
            continue;
        }
        if (tok.size() < 2 || tok[0] != 'X')
            throw std::invalid_argument("PD text: bad token '" + tok + "'");
        // X[a,b,c,d]
        std::array<int, 4> e{};
        if (std::sscanf(tok.c_str(), "X[%d,%d,%d,%d]", &e[0], &e[1], &e[2], &e[3]) != 4)
            throw std::invalid_argument("PD text: bad crossing '" + tok + "'");
        std::string sgn;
        if (!(ls >> sgn) || (sgn != "+" && sgn != "-" && sgn != "+1" && sgn != "-1"))
            throw std::invalid_argument("PD text: crossing needs a sign (+ or -)");
        pd.crossings.push_back({e, sgn[0] == '+' ? 1 : -1});
    }
    return pd;
}

PDCode parse_pd_text(const std::string& text) {
    std::istringstream in(text);
    return parse_pd_text(in);
}

WirtingerPresentation pd_to_wirtinger(const PDCode& pd) {
    PDAnalysis an = analyze(pd);
    WirtingerPresentation w;
    w.n_components = static_cast<int>(an.comps.size()) + pd.free_loops;
    w.n_generators = an.n_arcs + pd.free_loops;
    w.component_of_arc.assign(static_cast<std::size_t>(w.n_generators), -1);
    for (const auto& [e, arc] : an.arc_of_edge)
        w.component_of_arc[static_cast<std::size_t>(arc)] = an.comp_of_edge.at(e);

    for (const auto& cr : pd.crossings) {
        const int in_arc = an.arc_of_edge.at(cr.e[0]) + 1;
        const int out_arc = an.arc_of_edge.at(cr.e[2]) + 1;
        const int over = an.arc_of_edge.at(cr.e[1]) + 1;
        const FreeWord rhs = conjugate(FreeWord::generator(over, cr.sign), FreeWord::generator(in_arc));
        w.relators.push_back(multiply(FreeWord::generator(out_arc), invert(rhs)));
    }

    for (std::size_t k = 0; k < an.comps.size(); ++k) {
        const auto& cyc = an.comps[k];
        const int start = *std::min_element(cyc.begin(), cyc.end());
        w.base_arc_of_component.push_back(an.arc_of_edge.at(start));
        std::vector<UnderPass> walk;
        const std::size_t i0 = static_cast<std::size_t>(
            std::find(cyc.begin(), cyc.end(), start) - cyc.begin());
        for (std::size_t t = 0; t < cyc.size(); ++t) {
            const int e = cyc[(i0 + t) % cyc.size()];
            auto it = an.under_in.find(e);
            if (it != an.under_in.end()) {
                const auto [ci, over_arc, sign, to_arc] = it->second;
                walk.push_back({over_arc, sign, to_arc});
            }
        }
        w.traversal.push_back(std::move(walk));
    }
    for (int fl = 0; fl < pd.free_loops; ++fl) {
        const int arc = an.n_arcs + fl;
        w.component_of_arc[static_cast<std::size_t>(arc)] =
            static_cast<int>(an.comps.size()) + fl;
        w.base_arc_of_component.push_back(arc);
        w.traversal.emplace_back();
    }
    return w;
}

LinkPresentation LinkPresentation::from_longitudes(std::vector<FreeWord> ys) {
    LinkPresentation lp;
    lp.n = static_cast<int>(ys.size());
    lp.longitudes = std::move(ys);
    for (int i = 1; i <= lp.n; ++i) {
        lp.relators.push_back(commutator(FreeWord::generator(i), lp.longitudes[static_cast<std::size_t>(i - 1)]));
        if (lp.longitudes[static_cast<std::size_t>(i - 1)].max_generator() > lp.n)
            throw std::invalid_argument("longitude uses generator beyond component count");
    }
    return lp;
}

LinkPresentation wirtinger_longitudes(const WirtingerPresentation& w, int depth) {
    if (depth < 1) throw std::invalid_argument("wirtinger_longitudes: depth must be >= 1");
    const int n = w.n_components;
    const std::size_t n_arcs = static_cast<std::size_t>(w.n_generators);

    // Arc expressions in the base meridians. Each pass propagates the
    // conjugation along every component using the previous pass's over-arc
    // expressions, which raises the lower-central-series accuracy by one; the
    // base arc stays the bare meridian by definition.
    std::vector<FreeWord> expr(n_arcs);
    for (std::size_t a = 0; a < n_arcs; ++a)
        expr[a] = FreeWord::generator(w.component_of_arc[a] + 1);

    for (int pass = 0; pass < depth; ++pass) {
        std::vector<FreeWord> next = expr;
        for (int k = 0; k < n; ++k) {
            FreeWord cur = FreeWord::generator(k + 1);
            for (const auto& up : w.traversal[static_cast<std::size_t>(k)]) {
                cur = conjugate(power(expr[static_cast<std::size_t>(up.over_arc)], up.sign), cur);
                next[static_cast<std::size_t>(up.to_arc)] = cur;
            }
            next[static_cast<std::size_t>(w.base_arc_of_component[static_cast<std::size_t>(k)])] =
                FreeWord::generator(k + 1);
        }
        expr = next;
    }

    std::vector<FreeWord> longs;
    for (int k = 0; k < n; ++k) {
        FreeWord word;
        for (const auto& up : w.traversal[static_cast<std::size_t>(k)])
            word = multiply(power(expr[static_cast<std::size_t>(up.over_arc)], up.sign), word);
        const i64 framing = word.exponent_sum(k + 1);
        word = multiply(word, FreeWord::generator(k + 1, -framing));
        longs.push_back(word);
    }
    return LinkPresentation::from_longitudes(std::move(longs));
}

std::vector<std::vector<i64>> linking_numbers(const LinkPresentation& lp) {
    const int n = lp.n;
    std::vector<std::vector<i64>> lk(static_cast<std::size_t>(n), std::vector<i64>(static_cast<std::size_t>(n), 0));
    for (int j = 1; j <= n; ++j) {
        const FreeWord& y = lp.longitudes[static_cast<std::size_t>(j - 1)];
        if (y.exponent_sum(j) != 0)
            throw std::domain_error("framing violation: longitude " + std::to_string(j) +
                                    " has nonzero self-exponent");
        for (int i = 1; i <= n; ++i)
            if (i != j) lk[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = y.exponent_sum(i);
    }
    return lk;
}

std::vector<std::vector<i64>> nilpotent_matrix(const FreeWord& w, const MultiIndex& I, int rank,
                                               i64 delta) {
    const int r = static_cast<int>(I.size());
    NCSeries s = magnus_expand(w, rank, std::max(1, r - 1));
    std::vector<std::vector<i64>> m(static_cast<std::size_t>(r), std::vector<i64>(static_cast<std::size_t>(r), 0));
    auto red = [&](i64 v) { return delta > 0 ? ((v % delta) + delta) % delta : v; };
    for (int s_i = 0; s_i < r; ++s_i) {
        m[static_cast<std::size_t>(s_i)][static_cast<std::size_t>(s_i)] = red(1);
        for (int t_i = s_i + 1; t_i < r; ++t_i) {
            MultiIndex mono(I.begin() + s_i, I.begin() + t_i);
            m[static_cast<std::size_t>(s_i)][static_cast<std::size_t>(t_i)] = red(s.coeff(mono));
        }
    }
    return m;
}

namespace {

std::vector<std::vector<i64>> mat_mul_mod(const std::vector<std::vector<i64>>& A,
                                          const std::vector<std::vector<i64>>& B, i64 m) {
    const std::size_t r = A.size();
    std::vector<std::vector<i64>> C(r, std::vector<i64>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            if (!A[i][k]) continue;
            for (std::size_t j = 0; j < r; ++j) {
                C[i][j] += A[i][k] * B[k][j];
                if (m > 0) C[i][j] = ((C[i][j] % m) + m) % m;
            }
        }
    return C;
}

bool is_identity_mod(const std::vector<std::vector<i64>>& A, i64 m) {
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) {
            i64 want = i == j ? 1 : 0;
            i64 have = A[i][j];
            if (m > 0) {
                want = ((want % m) + m) % m;
                have = ((have % m) + m) % m;
            }
            if (want != have) return false;
        }
    return true;
}

}  // namespace

NilpotentRep nilpotent_rep(const LinkPresentation& lp, const MultiIndex& I, i64 delta,
                           i64 expected_mubar) {
    NilpotentRep rep;
    rep.r = static_cast<int>(I.size());
    rep.modulus = delta;
    rep.index = I;
    if (rep.r < 2) throw std::invalid_argument("nilpotent_rep: |I| must be >= 2");

    for (const auto& rel : lp.relators) {
        auto m = nilpotent_matrix(rel, I, lp.n, delta);
        if (!is_identity_mod(m, delta))
            rep.violations.push_back("relator " + to_string(rel) + " does not map to identity");
    }

    const int last = I.back();
    rep.longitude_matrix = nilpotent_matrix(lp.longitudes[static_cast<std::size_t>(last - 1)], I, lp.n, delta);
    rep.corner = rep.longitude_matrix.front().back();
    auto red = [&](i64 v) { return delta > 0 ? ((v % delta) + delta) % delta : v; };
    if (red(rep.corner) != red(expected_mubar))
        rep.violations.push_back("corner of rho_I(y) is " + std::to_string(rep.corner) +
                                 ", expected mubar = " + std::to_string(expected_mubar));
    for (int s = 0; s < rep.r; ++s)
        for (int t = s + 1; t < rep.r; ++t) {
            if (s == 0 && t == rep.r - 1) continue;
            if (red(rep.longitude_matrix[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]) != 0)
                rep.violations.push_back("rho_I(y) has a nonzero off-corner entry");
        }
    return rep;
}

AlexanderMatrix alexander_matrix(const WirtingerPresentation& w) {
    AlexanderMatrix M;
    M.rows = static_cast<int>(w.relators.size());
    M.cols = w.n_generators;
    M.a.assign(static_cast<std::size_t>(M.rows) * M.cols, LaurentPoly{});
    for (int i = 0; i < M.rows; ++i) {
        for (int j = 1; j <= M.cols; ++j) {
            const GroupRing d = fox_derive(w.relators[static_cast<std::size_t>(i)], j);
            LaurentPoly p;
            for (const auto& [word, c] : d.terms()) {
                i64 total = 0;  // psi: every meridian -> t
                for (const auto& [g, e] : word.runs()) total += e;
                p.add(static_cast<int>(total), c);
            }
            M.at(i, j - 1) = p;
        }
    }
    return M;
}

LaurentPoly alexander_polynomial_dropping(const WirtingerPresentation& w, int drop_col) {
    if (w.n_components != 1)
        throw std::invalid_argument("alexander_polynomial: knot (one component) required");
    const AlexanderMatrix M = alexander_matrix(w);
    const int n = M.cols;
    if (n == 0 || M.rows == 0) return LaurentPoly(1);  // crossingless unknot
    if (drop_col < 0 || drop_col >= n) throw std::invalid_argument("bad column");

    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
        if (j != drop_col) cols.push_back(j);

    // gcd over all (n-1)-row choices of the determinant
    LaurentPoly g;
    std::vector<int> rows(static_cast<std::size_t>(n - 1));
    std::vector<int> choice;
    auto det = [&](const std::vector<int>& rsel) {
        // Laurent determinant by cofactor expansion (n <= ~12 at desk scale)
        const int m = static_cast<int>(rsel.size());
        std::vector<LaurentPoly> sub(static_cast<std::size_t>(m) * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                sub[static_cast<std::size_t>(i) * m + j] = M.at(rsel[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        // fraction-free Gaussian elimination is awkward over Z[t^\pm];
        // cofactor expansion along the first column with memo on row sets
        std::function<LaurentPoly(std::vector<int>, int)> go = [&](std::vector<int> rr, int c0) -> LaurentPoly {
            if (rr.size() == 1) return sub[static_cast<std::size_t>(rr[0]) * m + c0];
            LaurentPoly acc;
            int sgn = 1;
            for (std::size_t k = 0; k < rr.size(); ++k) {
                const LaurentPoly& pivot = sub[static_cast<std::size_t>(rr[k]) * m + c0];
                if (!pivot.is_zero()) {
                    std::vector<int> rest;
                    for (std::size_t t = 0; t < rr.size(); ++t)
                        if (t != k) rest.push_back(rr[t]);
                    LaurentPoly minor = go(rest, c0 + 1);
                    LaurentPoly term = pivot * minor;
                    if (sgn < 0) term = -term;
                    acc = acc + term;
                }
                sgn = -sgn;
            }
            return acc;
        };
        std::vector<int> rr(static_cast<std::size_t>(m));
        std::iota(rr.begin(), rr.end(), 0);
        return go(rr, 0);
    };

    // iterate over row subsets of size n-1
    std::vector<int> idx(static_cast<std::size_t>(n - 1));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        g = laurent_gcd(g, det(idx));
        // next combination
        int i = n - 2;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == M.rows - (n - 1) + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n - 1; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (g.is_zero()) throw std::domain_error("alexander_polynomial: zero polynomial (degenerate input)");
    return normalize_unit(g);
}

LaurentPoly alexander_polynomial(const WirtingerPresentation& w) {
    if (w.n_generators == 0) return LaurentPoly(1);
    return alexander_polynomial_dropping(w, 0);
}

i64 branched_cover_order(const LaurentPoly& delta, int n) {
    if (n < 1) throw std::invalid_argument("branched_cover_order: n >= 1");
    if (delta.is_zero()) return 0;
    return resultant_with_cyclotomic(delta, n);
}

IwasawaFit iwasawa_growth_check(const LaurentPoly& delta, int p, int n_max) {
    if (n_max < 3) throw std::invalid_argument("iwasawa_growth_check: need n_max >= 3");
    IwasawaFit fit;
    i64 pn = 1;
    for (int n = 1; n <= n_max; ++n) {
        pn *= p;
        const i64 order = branched_cover_order(delta, static_cast<int>(pn));
        if (order == 0) throw std::domain_error("iwasawa_growth_check: infinite order encountered");
        int v = 0;
        i64 o = order;
        while (o % p == 0) {
            o /= p;
            ++v;
        }
        fit.valuations.push_back(v);
    }
    // solve v_n = lambda n + mu p^n + nu on the last three points, exactly
    // over the rationals, then verify integrality and report residuals
    const int n3 = n_max - 2, n2 = n_max - 1, n1 = n_max;
    auto pw = [&](int n) {
        i64 r = 1;
        for (int k = 0; k < n; ++k) r *= p;
        return r;
    };
    const i64 v1 = fit.valuations[static_cast<std::size_t>(n1 - 1)];
    const i64 v2 = fit.valuations[static_cast<std::size_t>(n2 - 1)];
    const i64 v3 = fit.valuations[static_cast<std::size_t>(n3 - 1)];
    // second differences to isolate mu: (v1 - v2) - (v2 - v3) = mu (p^n1 - 2 p^n2 + p^n3)
    const i64 d2 = (v1 - v2) - (v2 - v3);
    const i64 q2 = pw(n1) - 2 * pw(n2) + pw(n3);
    fit.exact_tail = false;
    if (d2 % q2 == 0) {
        fit.mu = d2 / q2;
        const i64 rest = (v1 - v2) - fit.mu * (pw(n1) - pw(n2));
        fit.lambda = rest;  // (n1 - n2) = 1
        fit.nu = v1 - fit.lambda * n1 - fit.mu * pw(n1);
        fit.exact_tail = true;
        for (int n : {n1, n2, n3}) {
            if (fit.valuations[static_cast<std::size_t>(n - 1)] != fit.lambda * n + fit.mu * pw(n) + fit.nu)
                fit.exact_tail = false;
        }
        for (int n = 1; n <= n_max; ++n)
            fit.residuals.push_back(fit.valuations[static_cast<std::size_t>(n - 1)] -
                                    (fit.lambda * n + fit.mu * pw(n) + fit.nu));
    }
    fit.mu_positive = fit.exact_tail && fit.mu > 0;
    return fit;
}

ChainMatrix t_l_matrix(const MilnorTable& table, const ChainRing& ring) {
    const int n = table.n_components();
    const int d = ring.d();
    if (table.degree() < d)
        throw std::invalid_argument("t_l_matrix: table degree must reach d");
    ChainMatrix T(ring, n, n);
    std::vector<ChainRing::Elt> pis{ring.one()};
    for (int k = 0; k < d; ++k) pis.push_back(ring.mul(pis.back(), ring.pi()));

    // enumerate prefixes of length r over 1..n
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

    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            ChainRing::Elt acc = ring.zero();
            if (i == j) {
                for (int r = 1; r <= d - 1; ++r) {
                    MultiIndex cur;
                    walk(r, cur, [&](const MultiIndex& pre) {
                        if (pre.back() == i) return;
                        MultiIndex I = pre;
                        I.push_back(i);
                        const i64 m = table.at(I).mu;
                        if (m) acc = ring.sub(acc, ring.mul(ring.from_int(m), pis[static_cast<std::size_t>(r)]));
                    });
                }
            } else {
                const i64 m1 = table.at({j, i}).mu;
                if (m1) acc = ring.add(acc, ring.mul(ring.from_int(m1), pis[1]));
                for (int r = 1; r <= d - 2; ++r) {
                    MultiIndex cur;
                    walk(r, cur, [&](const MultiIndex& pre) {
                        MultiIndex I = pre;
                        I.push_back(j);
                        I.push_back(i);
                        const i64 m = table.at(I).mu;
                        if (m) acc = ring.add(acc, ring.mul(ring.from_int(m), pis[static_cast<std::size_t>(r + 1)]));
                    });
                }
            }
            T.at(i - 1, j - 1) = acc;
        }
    }
    return T;
}

CoverRanks cover_homology_ranks(const LinkPresentation& lp, int l, int d_max) {
    if (d_max < 1) throw std::invalid_argument("cover_homology_ranks: d_max >= 1");
    CoverRanks out;
    out.n = lp.n;
    const int deg = std::max(2, d_max);
    const MilnorTable table = milnor_table(lp.longitudes, deg);
    const ChainRing ring(l, deg);
    const ChainMatrix T = t_l_matrix(table, ring);

    // row sums must vanish (forces the last elementary divisor to be zero)
    for (int i = 0; i < lp.n; ++i) {
        ChainRing::Elt s = ring.zero();
        for (int j = 0; j < lp.n; ++j) s = ring.add(s, T.at(i, j));
        if (!ring.is_zero(s))
            throw std::domain_error("t_l_matrix row sum nonzero; last elementary divisor would not vanish");
    }

    const ElementaryDivisors div = snf(T);
    out.divisor_valuations = div.valuations;
    for (int d = 1; d <= d_max; ++d) out.e.push_back(e_d_from_divisors(div, d));
    if (out.e.front() != lp.n - 1)
        throw std::domain_error("e_1 != n-1: input violates the genus-theory rank");
    return out;
}

LinkInput link_from_json_text(const std::string& text) {
    using nlohmann::json;
    LinkInput out;
    json j = json::parse(text);
    if (j.contains("pd")) {
        PDCode pd;
        const auto& arr = j.at("pd");
        const auto& signs = j.at("signs");
        if (signs.size() != arr.size())
            throw std::invalid_argument("link JSON: signs and pd must have equal length");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const auto& q = arr[k];
            if (q.size() != 4) throw std::invalid_argument("link JSON: pd entries are 4-tuples");
            pd.crossings.push_back(
                {{q[0].get<int>(), q[1].get<int>(), q[2].get<int>(), q[3].get<int>()},
                 signs[k].get<int>()});
        }
        pd.free_loops = j.value("free_loops", 0);
        out.pd = pd;
    } else if (j.contains("longitudes")) {
        const int n = j.at("n").get<int>();
        std::vector<FreeWord> ys;
        FreeGroup F(n);
        for (const auto& s : j.at("longitudes")) ys.push_back(F.parse(s.get<std::string>()));
        if (static_cast<int>(ys.size()) != n)
            throw std::invalid_argument("link JSON: need n longitudes");
        out.presentation = LinkPresentation::from_longitudes(std::move(ys));
    } else {
        throw std::invalid_argument("link JSON: need 'pd' or 'longitudes'");
    }
    return out;
}

}  // namespace arithtop
