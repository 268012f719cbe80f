// Vertex-operator kernel for the level-1 lattice realization.
// Vectors are integer coefficient maps over a shared positive denominator;
// all arithmetic is exact (GMP).  Mirrors cplstab/_pykernel.py.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cplstab {

using Parts = std::vector<int32_t>;  // weakly decreasing

struct PartsHash {
    size_t operator()(const Parts& p) const noexcept {
        uint64_t h = 1469598103934665603ULL;
        for (int32_t x : p) h = (h ^ static_cast<uint64_t>(x)) * 1099511628211ULL;
        return static_cast<size_t>(h ^ (h >> 29));
    }
};

// Partitions are hash-consed to dense ids so that coefficient maps use POD keys.
struct Interner {
    std::deque<Parts> parts;  // deque keeps references stable while ids are added
    std::unordered_map<Parts, uint32_t, PartsHash> ids;

    uint32_t id(const Parts& p) {
        auto it = ids.find(p);
        if (it != ids.end()) return it->second;
        uint32_t i = static_cast<uint32_t>(parts.size());
        parts.push_back(p);
        ids.emplace(p, i);
        return i;
    }
    const Parts& get(uint32_t i) const { return parts[i]; }
};

inline Interner& interner() {
    static thread_local Interner t;
    return t;
}

// Key packs (charge, aux, partition id); aux is the z-degree still to be filled
// during vertex evaluation and 0 otherwise.
using Key = uint64_t;

inline Key make_key(int32_t charge, int32_t aux, uint32_t pid) {
    if (charge < -32768 || charge > 32767 || aux < 0 || aux > 65535)
        throw std::overflow_error("charge or degree outside kernel range");
    return (static_cast<uint64_t>(static_cast<uint16_t>(charge + 32768)) << 48) |
           (static_cast<uint64_t>(static_cast<uint16_t>(aux)) << 32) | pid;
}
inline int32_t key_charge(Key k) { return static_cast<int32_t>(k >> 48) - 32768; }
inline int32_t key_aux(Key k) { return static_cast<int32_t>((k >> 32) & 0xffff); }
inline uint32_t key_pid(Key k) { return static_cast<uint32_t>(k & 0xffffffffu); }

struct KeyHash {
    size_t operator()(Key k) const noexcept {
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<size_t>(k);
    }
};

using Terms = std::unordered_map<Key, mpz_class, KeyHash>;

struct Vec {
    Terms terms;
    mpz_class den = 1;
};

struct Op {
    char kind;
    int n;
    int power;
};

// Flat transport form used by the Cython wrapper.
struct FlatVec {
    std::vector<int> charges;
    std::vector<std::vector<int>> parts;
    std::vector<std::string> nums;
    std::string den;
};

inline mpz_class factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline mpz_class binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Partitions of a with the integer a!/z_rho (signed by (-1)^len when negate).
struct ExpTable {
    std::map<std::pair<int, bool>, std::vector<std::pair<Parts, mpz_class>>> cache;

    const std::vector<std::pair<Parts, mpz_class>>& get(int a, bool negate) {
        auto it = cache.find({a, negate});
        if (it != cache.end()) return it->second;
        std::vector<std::pair<Parts, mpz_class>> out;
        Parts cur;
        mpz_class af = factorial(a);
        enumerate(a, a, cur, out, af, negate);
        return cache.emplace(std::make_pair(a, negate), std::move(out)).first->second;
    }

   private:
    static void enumerate(int rem, int cap, Parts& cur,
                          std::vector<std::pair<Parts, mpz_class>>& out,
                          const mpz_class& af, bool negate) {
        if (rem == 0) {
            mpz_class z = 1;
            size_t i = 0;
            while (i < cur.size()) {
                size_t j = i;
                while (j < cur.size() && cur[j] == cur[i]) ++j;
                int m = static_cast<int>(j - i);
                mpz_class pk;
                mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(cur[i]),
                              static_cast<unsigned long>(m));
                z *= pk * factorial(m);
                i = j;
            }
            mpz_class c = af / z;
            if (negate && (cur.size() % 2)) c = -c;
            out.emplace_back(cur, c);
            return;
        }
        for (int p = std::min(rem, cap); p >= 1; --p) {
            cur.push_back(p);
            enumerate(rem - p, p, cur, out, af, negate);
            cur.pop_back();
        }
    }
};

inline ExpTable& exp_table() {
    static thread_local ExpTable t;
    return t;
}

inline void merge_into(const Parts& a, const Parts& b, Parts& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
               std::greater<int32_t>());
}

inline void add_term(Terms& t, Key k, const mpz_class& c) {
    if (c == 0) return;
    auto res = t.try_emplace(k);
    res.first->second += c;
}

inline void add_product(Terms& t, Key k, const mpz_class& a, const mpz_class& b) {
    auto res = t.try_emplace(k);
    mpz_addmul(res.first->second.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline void prune(Terms& t) {
    for (auto it = t.begin(); it != t.end();) {
        if (it->second == 0)
            it = t.erase(it);
        else
            ++it;
    }
}

inline void normalize(Vec& v) {
    prune(v.terms);
    if (v.terms.empty()) {
        v.den = 1;
        return;
    }
    mpz_class g = v.den;
    for (auto& kv : v.terms) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), kv.second.get_mpz_t());
        if (g == 1) return;
    }
    v.den /= g;
    for (auto& kv : v.terms) mpz_divexact(kv.second.get_mpz_t(), kv.second.get_mpz_t(), g.get_mpz_t());
}

// Sub-multiset expansion of prod_k (p_k + shift w^k)^{m_k}; keeps b >= bmin.
struct ShiftExpander {
    std::vector<std::pair<int32_t, int32_t>> items;  // (part, multiplicity)
    std::vector<int64_t> reach;
    std::vector<mpz_class> level;                    // running coefficient per depth
    std::map<std::pair<int, int>, std::vector<mpz_class>> coef_cache;  // (m, shift) -> C(m,j) shift^j
    std::vector<const std::vector<mpz_class>*> coefs;
    int64_t bmin;
    Parts kept;

    const std::vector<mpz_class>& coef(int m, int shift) {
        auto it = coef_cache.find({m, shift});
        if (it != coef_cache.end()) return it->second;
        std::vector<mpz_class> c(m + 1);
        mpz_class spow = 1;
        for (int j = 0; j <= m; ++j) {
            c[j] = binom(m, j) * spow;
            spow *= shift;
        }
        return coef_cache.emplace(std::make_pair(m, shift), std::move(c)).first->second;
    }

    template <class F>
    void run(const Parts& parts, int shift, int64_t bmin_, F&& emit) {
        items.clear();
        for (int32_t p : parts) {
            if (!items.empty() && items.back().first == p)
                ++items.back().second;
            else
                items.emplace_back(p, 1);
        }
        reach.assign(items.size() + 1, 0);
        for (size_t i = items.size(); i-- > 0;)
            reach[i] = reach[i + 1] + int64_t(items[i].first) * items[i].second;
        if (reach[0] < bmin_) return;
        coefs.resize(items.size());
        for (size_t i = 0; i < items.size(); ++i) coefs[i] = &coef(items[i].second, shift);
        if (level.size() < items.size() + 1) level.resize(items.size() + 1);
        level[0] = 1;
        bmin = bmin_;
        kept.clear();
        rec(0, 0, emit);
    }

    template <class F>
    void rec(size_t i, int64_t b, F& emit) {
        if (b + reach[i] < bmin) return;
        if (i == items.size()) {
            emit(b, level[i], kept);
            return;
        }
        const int32_t k = items[i].first;
        const int32_t m = items[i].second;
        const std::vector<mpz_class>& c = *coefs[i];
        for (int j = 0; j <= m; ++j) {
            size_t before = kept.size();
            kept.insert(kept.end(), m - j, k);
            mpz_mul(level[i + 1].get_mpz_t(), level[i].get_mpz_t(), c[j].get_mpz_t());
            rec(i + 1, b + int64_t(k) * j, emit);
            kept.resize(before);
        }
    }
};

inline void vertex(Vec& v, int n, bool raising) {
    Interner& in = interner();
    Terms stage;
    stage.reserve(v.terms.size() * 4);
    ShiftExpander ex;
    const int shift = raising ? -2 : 2;
    int32_t amax = -1;
    for (auto& kv : v.terms) {
        const int32_t m = key_charge(kv.first);
        const int64_t offset = raising ? int64_t(-n) - 1 - m : int64_t(-n) - 1 + m;
        const int32_t new_m = raising ? m + 2 : m - 2;
        const mpz_class& c = kv.second;
        ex.run(in.get(key_pid(kv.first)), shift, -offset,
               [&](int64_t b, const mpz_class& ic, const Parts& rem) {
                   int32_t a = static_cast<int32_t>(b + offset);
                   if (a > amax) amax = a;
                   add_product(stage, make_key(new_m, a, in.id(rem)), c, ic);
               });
    }
    Vec out;
    if (amax < 0) {
        v = std::move(out);
        return;
    }
    ExpTable& table = exp_table();
    std::vector<mpz_class> scale(amax + 1);
    {
        mpz_class f = factorial(amax);
        for (int a = 0; a <= amax; ++a) scale[a] = f / factorial(a);
    }
    Parts merged;
    mpz_class c;
    out.terms.reserve(stage.size() * 2);
    for (auto& kv : stage) {
        if (kv.second == 0) continue;
        const int32_t a = key_aux(kv.first);
        const int32_t charge = key_charge(kv.first);
        const Parts& rem = in.get(key_pid(kv.first));
        mpz_mul(c.get_mpz_t(), kv.second.get_mpz_t(), scale[a].get_mpz_t());
        for (auto& re : table.get(a, !raising)) {
            merge_into(rem, re.first, merged);
            add_product(out.terms, make_key(charge, 0, in.id(merged)), c, re.second);
        }
    }
    out.den = v.den * factorial(amax);
    normalize(out);
    v = std::move(out);
}

inline void heisenberg(Vec& v, int n) {
    Interner& in = interner();
    Terms out;
    if (n == 0) {
        for (auto& kv : v.terms) {
            int32_t m = key_charge(kv.first);
            if (m) add_term(out, kv.first, kv.second * m);
        }
    } else if (n < 0) {
        Parts one{-n}, merged;
        for (auto& kv : v.terms) {
            merge_into(in.get(key_pid(kv.first)), one, merged);
            add_term(out, make_key(key_charge(kv.first), 0, in.id(merged)), kv.second);
        }
    } else {
        Parts rem;
        for (auto& kv : v.terms) {
            const Parts& p = in.get(key_pid(kv.first));
            auto lo = std::find(p.begin(), p.end(), n);
            if (lo == p.end()) continue;
            int cnt = static_cast<int>(std::count(p.begin(), p.end(), n));
            rem.assign(p.begin(), lo);
            rem.insert(rem.end(), lo + 1, p.end());
            add_term(out, make_key(key_charge(kv.first), 0, in.id(rem)), kv.second * (2 * n * cnt));
        }
    }
    v.terms = std::move(out);
    normalize(v);
}

inline void degree_op(Vec& v) {
    // d = -(m^2/4 + |mu|)
    Interner& in = interner();
    for (auto& kv : v.terms) {
        int64_t deg = 0;
        for (int32_t p : in.get(key_pid(kv.first))) deg += p;
        int64_t m = key_charge(kv.first);
        kv.second *= mpz_class(std::to_string(-(m * m + 4 * deg)));
    }
    v.den *= 4;
    normalize(v);
}

inline void act(Vec& v, char kind, int n) {
    switch (kind) {
        case 'X': vertex(v, n, true); break;
        case 'Y': vertex(v, n, false); break;
        case 'H': heisenberg(v, n); break;
        case 'C': break;
        case 'D': degree_op(v); break;
        default: throw std::invalid_argument(std::string("unknown generator kind ") + kind);
    }
}

inline void apply_ops(Vec& v, const std::vector<Op>& ops) {
    for (size_t i = ops.size(); i-- > 0;) {
        const Op& op = ops[i];
        for (int r = 0; r < op.power; ++r) {
            act(v, op.kind, op.n);
            if (v.terms.empty()) return;
        }
        if (op.power > 1) {
            v.den *= factorial(op.power);
            normalize(v);
        }
    }
}

inline FlatVec apply_ops_flat(const FlatVec& in, const std::vector<Op>& ops) {
    Vec v;
    v.den = mpz_class(in.den);
    for (size_t i = 0; i < in.charges.size(); ++i) {
        Parts p(in.parts[i].begin(), in.parts[i].end());
        add_term(v.terms, make_key(in.charges[i], 0, interner().id(p)), mpz_class(in.nums[i]));
    }
    normalize(v);
    apply_ops(v, ops);
    FlatVec out;
    out.den = v.den.get_str();
    out.charges.reserve(v.terms.size());
    for (auto& kv : v.terms) {
        const Parts& p = interner().get(key_pid(kv.first));
        out.charges.push_back(key_charge(kv.first));
        out.parts.emplace_back(p.begin(), p.end());
        out.nums.push_back(kv.second.get_str());
    }
    return out;
}

}  // namespace cplstab
