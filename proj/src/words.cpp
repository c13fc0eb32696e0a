#include "arithtop/words.hpp"

#include <cctype>
#include <sstream>

namespace arithtop {

void FreeWord::push_run(int g, i64 e) {
    if (e == 0) return;
    if (!runs_.empty() && runs_.back().first == g) {
        runs_.back().second += e;
        if (runs_.back().second == 0) runs_.pop_back();
    } else {
        runs_.emplace_back(g, e);
    }
}

FreeWord FreeWord::generator(int g, i64 exp) {
    if (g < 1) throw std::invalid_argument("generator index must be >= 1");
    FreeWord w;
    w.push_run(g, exp);
    return w;
}

FreeWord FreeWord::from_letters(const std::vector<Letter>& letters) {
    FreeWord w;
    for (const auto& l : letters) {
        if (l.gen < 1) throw std::invalid_argument("generator index must be >= 1");
        if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +-1");
        w.push_run(l.gen, l.sign);
    }
    return w;
}

i64 FreeWord::length() const {
    i64 n = 0;
    for (const auto& [g, e] : runs_) n += e < 0 ? -e : e;
    return n;
}

std::vector<Letter> FreeWord::letters() const {
    std::vector<Letter> out;
    for (const auto& [g, e] : runs_) {
        const int s = e < 0 ? -1 : 1;
        for (i64 k = 0; k < (e < 0 ? -e : e); ++k) out.push_back({g, s});
    }
    return out;
}

int FreeWord::max_generator() const {
    int m = 0;
    for (const auto& [g, e] : runs_) m = std::max(m, g);
    return m;
}

i64 FreeWord::exponent_sum(int g) const {
    i64 s = 0;
    for (const auto& [gg, e] : runs_)
        if (gg == g) s += e;
    return s;
}

FreeWord multiply(const FreeWord& u, const FreeWord& v) {
    FreeWord w = u;
    // cancellation can cascade across run boundaries
    for (const auto& [g, e] : v.runs_) {
        i64 rem = e;
        while (rem != 0 && !w.runs_.empty() && w.runs_.back().first == g &&
               (w.runs_.back().second > 0) != (rem > 0)) {
            i64& back = w.runs_.back().second;
            const i64 cancel = std::min(back < 0 ? -back : back, rem < 0 ? -rem : rem);
            back += rem > 0 ? cancel : -cancel;
            rem += rem > 0 ? -cancel : cancel;
            if (back == 0) w.runs_.pop_back();
        }
        w.push_run(g, rem);
    }
    return w;
}

FreeWord invert(const FreeWord& w) {
    FreeWord r;
    for (auto it = w.runs_.rbegin(); it != w.runs_.rend(); ++it) r.runs_.emplace_back(it->first, -it->second);
    return r;
}

FreeWord power(const FreeWord& w, i64 n) {
    FreeWord base = n < 0 ? invert(w) : w;
    i64 k = n < 0 ? -n : n;
    FreeWord r;
    for (i64 i = 0; i < k; ++i) r = multiply(r, base);
    return r;
}

FreeWord commutator(const FreeWord& u, const FreeWord& v) {
    return multiply(multiply(u, v), multiply(invert(u), invert(v)));
}

FreeWord conjugate(const FreeWord& u, const FreeWord& w) {
    return multiply(multiply(u, w), invert(u));
}

FreeWord parse_word(const std::string& text) {
    FreeWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "1") continue;
        if (tok.size() < 2 || tok[0] != 'x')
            throw std::invalid_argument("bad word token: " + tok);
        std::size_t pos = 1;
        while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos == 1) throw std::invalid_argument("bad word token: " + tok);
        const int g = std::stoi(tok.substr(1, pos - 1));
        i64 e = 1;
        if (pos < tok.size()) {
            if (tok[pos] != '^') throw std::invalid_argument("bad word token: " + tok);
            const std::string es = tok.substr(pos + 1);
            if (es.empty() || (es == "-")) throw std::invalid_argument("bad word token: " + tok);
            std::size_t used = 0;
            e = std::stoll(es, &used);
            if (used != es.size()) throw std::invalid_argument("bad word token: " + tok);
        }
        if (g < 1) throw std::invalid_argument("bad generator in token: " + tok);
        w = multiply(w, FreeWord::generator(g, e));
    }
    return w;
}

std::string to_string(const FreeWord& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& [g, e] : w.runs()) {
        if (!out.empty()) out += ' ';
        out += "x" + std::to_string(g);
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

void GroupRing::add(const FreeWord& w, i64 c) {
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

i64 GroupRing::augmentation() const {
    i64 s = 0;
    for (const auto& [w, c] : terms_) s += c;
    return s;
}

GroupRing& GroupRing::operator+=(const GroupRing& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

GroupRing& GroupRing::operator-=(const GroupRing& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

GroupRing operator*(const GroupRing& a, const GroupRing& b) {
    GroupRing r;
    for (const auto& [u, cu] : a.terms_)
        for (const auto& [v, cv] : b.terms_) r.add(multiply(u, v), cu * cv);
    return r;
}

GroupRing operator*(i64 c, GroupRing a) {
    GroupRing r;
    for (const auto& [w, cw] : a.terms_) r.add(w, c * cw);
    return r;
}

}  // namespace arithtop
