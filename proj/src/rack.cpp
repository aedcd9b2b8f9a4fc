#include "rackext/rack.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace rackext {

std::string Violation::describe() const {
    std::ostringstream os;
    os << kind;
    if (!witness.empty()) {
        os << " at (";
        for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
        os << ')';
    }
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

// ---------------------------------------------------------------- FinRack

Permutation FinRack::translation(Elem b) const {
    Permutation p(n_);
    for (Elem a = 0; a < n_; ++a) p[a] = op(a, b);
    return p;
}

Table FinRack::table() const {
    Table t(n_, std::vector<long long>(n_));
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) t[a][b] = op(static_cast<Elem>(a), static_cast<Elem>(b));
    return t;
}

Checked<FinRack> validate_rack(const Table& table) {
    const std::size_t n = table.size();
    if (n == 0) throw MalformedInput("rack table must have at least one row");
    FinRack r;
    r.n_ = n;
    r.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n)
            throw MalformedInput("rack table row " + std::to_string(a) + " has length " +
                                 std::to_string(table[a].size()) + ", expected " + std::to_string(n));
        for (std::size_t b = 0; b < n; ++b) {
            const long long v = table[a][b];
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                throw MalformedInput("rack table entry [" + std::to_string(a) + "][" + std::to_string(b) +
                                     "] = " + std::to_string(v) + " out of range");
            r.table_[a * n + b] = static_cast<Elem>(v);
        }
    }
    // (R1): each column is a permutation; record its inverse.
    r.inv_.assign(n * n, 0);
    std::vector<bool> seen(n);
    for (std::size_t b = 0; b < n; ++b) {
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t a = 0; a < n; ++a) {
            const Elem c = r.table_[a * n + b];
            if (seen[c]) return Violation{"AxiomR1Violation", {b}, "column is not a bijection"};
            seen[c] = true;
            r.inv_[c * n + b] = static_cast<Elem>(a);
        }
    }
    // (R2): (a^b)^c = (a^c)^(b^c).
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c)
                if (r.op(r.op(a, b), c) != r.op(r.op(a, c), r.op(b, c)))
                    return Violation{"AxiomR2Violation", {a, b, c}, "(a^b)^c != (a^c)^(b^c)"};
    return r;
}

FinRack make_rack(const Table& table) { return validate_rack(table).value(); }

std::optional<Elem> quandle_witness(const FinRack& r) {
    for (Elem a = 0; a < r.size(); ++a)
        if (r.op(a, a) != a) return a;
    return std::nullopt;
}

std::optional<std::pair<Elem, Elem>> homomorphism_witness(const std::vector<Elem>& f, const FinRack& src,
                                                          const FinRack& dst) {
    if (f.size() != src.size()) throw MalformedInput("map is not total on the source rack");
    for (Elem v : f)
        if (v >= dst.size()) throw MalformedInput("map value outside the target rack");
    for (Elem a = 0; a < src.size(); ++a)
        for (Elem b = 0; b < src.size(); ++b)
            if (f[src.op(a, b)] != dst.op(f[a], f[b])) return std::pair{a, b};
    return std::nullopt;
}

// ---------------------------------------------------------------- orbits

namespace {

Elem find_root(std::vector<Elem>& parent, Elem x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

std::vector<std::vector<Elem>> orbits(const FinRack& r) {
    const std::size_t n = r.size();
    std::vector<Elem> parent(n);
    std::iota(parent.begin(), parent.end(), Elem{0});
    // a^{b̄} is connected whenever a^b is: the column maps are permutations.
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            const Elem x = find_root(parent, a);
            const Elem y = find_root(parent, r.op(a, b));
            if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
    std::vector<std::vector<Elem>> blocks;
    std::vector<std::ptrdiff_t> block_of(n, -1);
    for (Elem a = 0; a < n; ++a) {
        const Elem root = find_root(parent, a);
        if (block_of[root] < 0) {
            block_of[root] = static_cast<std::ptrdiff_t>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<std::size_t>(block_of[root])].push_back(a);
    }
    return blocks;
}

std::vector<std::size_t> orbit_index(const FinRack& r) {
    std::vector<std::size_t> idx(r.size());
    const auto blocks = orbits(r);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (Elem a : blocks[i]) idx[a] = i;
    return idx;
}

// ---------------------------------------------------------------- Op X

namespace {

struct PermHash {
    std::size_t operator()(const Permutation& p) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Elem v : p) h = (h ^ v) * 1099511628211ull;
        return h;
    }
};

}  // namespace

OperatorGroup operator_group(const FinRack& r, std::size_t cap) {
    const std::size_t n = r.size();
    std::vector<Permutation> gens;
    for (Elem y = 0; y < n; ++y) gens.push_back(r.translation(y));

    OperatorGroup out;
    std::unordered_map<Permutation, std::size_t, PermHash> index;
    Permutation id(n);
    std::iota(id.begin(), id.end(), Elem{0});
    out.elements.push_back(id);
    out.words.emplace_back();
    index.emplace(id, 0);

    for (std::size_t head = 0; head < out.elements.size(); ++head) {
        for (Elem y = 0; y < n; ++y) {
            Permutation next(n);
            const Permutation& cur = out.elements[head];
            for (std::size_t a = 0; a < n; ++a) next[a] = gens[y][cur[a]];
            if (index.contains(next)) continue;
            if (out.elements.size() >= cap)
                throw CapExceeded("operator group exceeds " + std::to_string(cap) + " elements");
            auto word = out.words[head];
            word.push_back(y);
            index.emplace(next, out.elements.size());
            out.elements.push_back(std::move(next));
            out.words.push_back(std::move(word));
        }
    }
    return out;
}

// ---------------------------------------------------------------- groups

FinGroup FinGroup::from_table(const Table& mult) {
    const std::size_t n = mult.size();
    if (n == 0) throw MalformedInput("group table must be non-empty");
    FinGroup g;
    g.n_ = n;
    g.mult_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        if (mult[a].size() != n) throw MalformedInput("group table is not square");
        for (std::size_t b = 0; b < n; ++b) {
            const long long v = mult[a][b];
            if (v < 0 || static_cast<std::size_t>(v) >= n) throw MalformedInput("group table entry out of range");
            g.mult_[a * n + b] = static_cast<Elem>(v);
        }
    }
    std::optional<Elem> e;
    for (Elem c = 0; c < n && !e; ++c) {
        bool ok = true;
        for (Elem a = 0; a < n && ok; ++a) ok = g.mul(c, a) == a && g.mul(a, c) == a;
        if (ok) e = c;
    }
    if (!e) throw MalformedInput("group table has no identity element");
    g.identity_ = *e;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw MalformedInput("group table is not associative at (" + std::to_string(a) + "," +
                                         std::to_string(b) + "," + std::to_string(c) + ")");
    g.inv_.resize(n);
    for (Elem a = 0; a < n; ++a) {
        std::optional<Elem> inv;
        for (Elem b = 0; b < n && !inv; ++b)
            if (g.mul(a, b) == g.identity_ && g.mul(b, a) == g.identity_) inv = b;
        if (!inv) throw MalformedInput("element " + std::to_string(a) + " has no inverse");
        g.inv_[a] = *inv;
    }
    return g;
}

FinGroup FinGroup::cyclic(std::size_t n) {
    Table t(n, std::vector<long long>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<long long>((a + b) % n);
    return from_table(t);
}

FinGroup FinGroup::symmetric(std::size_t degree) {
    std::vector<Permutation> perms;
    Permutation p(degree);
    std::iota(p.begin(), p.end(), Elem{0});
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t n = perms.size();
    Table t(n, std::vector<long long>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            // (a·b)(i) = a(b(i))
            Permutation c(degree);
            for (std::size_t i = 0; i < degree; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = std::find(perms.begin(), perms.end(), c) - perms.begin();
        }
    return from_table(t);
}

Table FinGroup::table() const {
    Table t(n_, std::vector<long long>(n_));
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) t[a][b] = mul(static_cast<Elem>(a), static_cast<Elem>(b));
    return t;
}

FinRack conj_rack(const FinGroup& g) {
    const std::size_t n = g.size();
    Table t(n, std::vector<long long>(n));
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) t[a][b] = g.mul(g.inv(b), g.mul(a, b));
    return make_rack(t);
}

// ---------------------------------------------------------------- words

SignedWord parse_word(const std::string& text, std::size_t rack_size) {
    SignedWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        int sign = 1;
        std::string digits = tok;
        if (const auto pos = tok.find('^'); pos != std::string::npos) {
            if (tok.substr(pos) != "^-1") throw MalformedInput("bad word token '" + tok + "'");
            digits = tok.substr(0, pos);
            sign = -1;
        }
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw MalformedInput("bad word token '" + tok + "'");
        const unsigned long long g = std::stoull(digits);
        if (g >= rack_size) throw MalformedInput("word letter " + digits + " is not a rack element");
        w.push_back(Letter{static_cast<Elem>(g), sign});
    }
    return w;
}

std::string format_word(const SignedWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(w[i].generator);
        if (w[i].sign < 0) out += "^-1";
    }
    return out;
}

Elem act(const FinRack& r, Elem x, const SignedWord& w) {
    for (const auto& l : w) x = l.sign > 0 ? r.op(x, l.generator) : r.inv_op(x, l.generator);
    return x;
}

Presentation associated_group_presentation(const FinRack& r) {
    Presentation p;
    p.generators = r.size();
    for (Elem a = 0; a < r.size(); ++a)
        for (Elem b = 0; b < r.size(); ++b)
            p.relations.push_back({Letter{b, -1}, Letter{a, 1}, Letter{b, 1}, Letter{r.op(a, b), -1}});
    return p;
}

// ---------------------------------------------------------------- examples

FinRack trivial_rack(std::size_t n) {
    Table t(n, std::vector<long long>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<long long>(a);
    return make_rack(t);
}

FinRack cyclic_rack(std::size_t n) {
    Table t(n, std::vector<long long>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<long long>((a + 1) % n);
    return make_rack(t);
}

FinRack dihedral_quandle(std::size_t n) {
    Table t(n, std::vector<long long>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<long long>((2 * b + 2 * n - a) % n);
    return make_rack(t);
}

FinRack relabel(const FinRack& r, const Permutation& p) {
    const std::size_t n = r.size();
    if (p.size() != n) throw MalformedInput("relabeling has wrong size");
    Table t(n, std::vector<long long>(n));
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) t[p[a]][p[b]] = p[r.op(a, b)];
    return make_rack(t);
}

}  // namespace rackext
