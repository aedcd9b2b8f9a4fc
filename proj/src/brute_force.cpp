// Enumeration oracle for |Z|, |B| and |Ext|. Deliberately shares nothing with
// the Smith-normal-form path beyond the module data itself: all arithmetic is
// plain 64-bit modular arithmetic on explicit coordinate vectors.

#include "rackext/ext_group.hpp"

#include <algorithm>
#include <thread>

namespace rackext {

namespace {

using I64 = std::int64_t;

struct SmallMap {
    std::size_t rows = 0, cols = 0;
    std::vector<I64> entries;  // row-major
};

struct Oracle {
    std::size_t n = 0;
    std::vector<Elem> op;                    // op[x*n+y] = x^y
    std::vector<std::vector<I64>> moduli;    // per element
    std::vector<SmallMap> phi, psi;          // phi[x*n+y], psi[y*n+x]
    std::vector<std::size_t> pair_offset;    // coordinate offset of σ_{x,y}
    std::vector<I64> radix;                  // modulus of each flat σ coordinate
    std::vector<std::size_t> elem_offset;    // coordinate offset of υ_x
    std::vector<I64> cochain_radix;

    Elem at(Elem x, Elem y) const { return op[x * n + y]; }
};

SmallMap small_map(const AbHom& f) {
    SmallMap s{f.matrix().rows(), f.matrix().cols(), {}};
    for (std::size_t r = 0; r < s.rows; ++r)
        for (std::size_t c = 0; c < s.cols; ++c) s.entries.push_back(to_int64(f.matrix()(r, c)));
    return s;
}

Oracle make_oracle(const RackModule& m) {
    Oracle o;
    o.n = m.size();
    for (Elem x = 0; x < o.n; ++x)
        for (Elem y = 0; y < o.n; ++y) o.op.push_back(m.base().op(x, y));
    for (Elem x = 0; x < o.n; ++x) {
        std::vector<I64> mods;
        for (const auto& v : m.group(x).moduli()) {
            if (v == 0) throw CapExceeded("brute force refuses infinite fibers");
            mods.push_back(to_int64(v));
        }
        o.moduli.push_back(std::move(mods));
    }
    for (Elem x = 0; x < o.n; ++x)
        for (Elem y = 0; y < o.n; ++y) {
            o.phi.push_back(small_map(m.phi(x, y)));
            o.psi.push_back(small_map(m.psi(x, y)));
        }
    std::size_t off = 0;
    for (Elem x = 0; x < o.n; ++x)
        for (Elem y = 0; y < o.n; ++y) {
            o.pair_offset.push_back(off);
            const auto& mods = o.moduli[o.at(x, y)];
            o.radix.insert(o.radix.end(), mods.begin(), mods.end());
            off += mods.size();
        }
    off = 0;
    for (Elem x = 0; x < o.n; ++x) {
        o.elem_offset.push_back(off);
        o.cochain_radix.insert(o.cochain_radix.end(), o.moduli[x].begin(), o.moduli[x].end());
        off += o.moduli[x].size();
    }
    return o;
}

std::uint64_t space_size(const std::vector<I64>& radix, std::uint64_t cap, const char* what) {
    std::uint64_t total = 1;
    for (I64 r : radix) {
        if (total > cap / static_cast<std::uint64_t>(r))
            throw CapExceeded(std::string(what) + " space exceeds brute-force cap of " + std::to_string(cap));
        total *= static_cast<std::uint64_t>(r);
    }
    return total;
}

// out = f(v) + out, reduced later
void apply_add(const SmallMap& f, const I64* v, I64* out, I64 sign) {
    for (std::size_t r = 0; r < f.rows; ++r) {
        I64 acc = 0;
        for (std::size_t c = 0; c < f.cols; ++c) acc += f.entries[r * f.cols + c] * v[c];
        out[r] += sign * acc;
    }
}

bool is_cocycle(const Oracle& o, const std::vector<I64>& s, Flavor flavor, std::vector<I64>& diff) {
    const std::size_t n = o.n;
    if (flavor == Flavor::Quandle)
        for (Elem x = 0; x < n; ++x) {
            const std::size_t off = o.pair_offset[x * n + x];
            for (std::size_t k = 0; k < o.moduli[x].size(); ++k)
                if (s[off + k] != 0) return false;
        }
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z) {
                const Elem xy = o.at(x, y), xz = o.at(x, z), yz = o.at(y, z);
                const auto& mods = o.moduli[o.at(xy, z)];
                diff.assign(mods.size(), 0);
                const I64* s_xy_z = &s[o.pair_offset[xy * n + z]];
                const I64* s_xz_yz = &s[o.pair_offset[xz * n + yz]];
                for (std::size_t k = 0; k < mods.size(); ++k) diff[k] += s_xy_z[k] - s_xz_yz[k];
                apply_add(o.phi[xy * n + z], &s[o.pair_offset[x * n + y]], diff.data(), 1);
                apply_add(o.phi[xz * n + yz], &s[o.pair_offset[x * n + z]], diff.data(), -1);
                apply_add(o.psi[yz * n + xz], &s[o.pair_offset[y * n + z]], diff.data(), -1);
                for (std::size_t k = 0; k < mods.size(); ++k)
                    if (diff[k] % mods[k] != 0) return false;
            }
    return true;
}

void decode(std::uint64_t index, const std::vector<I64>& radix, std::vector<I64>& out) {
    out.assign(radix.size(), 0);
    for (std::size_t i = radix.size(); i-- > 0;) {
        out[i] = static_cast<I64>(index % static_cast<std::uint64_t>(radix[i]));
        index /= static_cast<std::uint64_t>(radix[i]);
    }
}

void increment(std::vector<I64>& v, const std::vector<I64>& radix) {
    for (std::size_t i = radix.size(); i-- > 0;) {
        if (++v[i] < radix[i]) return;
        v[i] = 0;
    }
}

std::uint64_t count_cocycles(const Oracle& o, Flavor flavor, std::uint64_t begin, std::uint64_t end) {
    std::vector<I64> s, diff;
    decode(begin, o.radix, s);
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
        if (is_cocycle(o, s, flavor, diff)) ++count;
        increment(s, o.radix);
    }
    return count;
}

std::uint64_t count_coboundaries(const Oracle& o, std::uint64_t sigma_total, std::uint64_t cochain_total) {
    const std::size_t n = o.n;
    std::vector<bool> hit(sigma_total, false);
    std::vector<I64> u;
    decode(0, o.cochain_radix, u);
    std::vector<I64> val;
    std::uint64_t distinct = 0;
    for (std::uint64_t i = 0; i < cochain_total; ++i) {
        std::uint64_t index = 0;
        for (Elem x = 0; x < n; ++x)
            for (Elem y = 0; y < n; ++y) {
                const Elem xy = o.at(x, y);
                const auto& mods = o.moduli[xy];
                val.assign(mods.size(), 0);
                apply_add(o.phi[x * n + y], &u[o.elem_offset[x]], val.data(), 1);
                apply_add(o.psi[y * n + x], &u[o.elem_offset[y]], val.data(), 1);
                for (std::size_t k = 0; k < mods.size(); ++k) {
                    I64 v = (val[k] - u[o.elem_offset[xy] + k]) % mods[k];
                    if (v < 0) v += mods[k];
                    index = index * static_cast<std::uint64_t>(mods[k]) + static_cast<std::uint64_t>(v);
                }
            }
        if (!hit[index]) {
            hit[index] = true;
            ++distinct;
        }
        increment(u, o.cochain_radix);
    }
    return distinct;
}

}  // namespace

BruteForceCounts brute_force_ext_order(const RackModule& m, Flavor flavor, std::uint64_t cap, unsigned jobs) {
    if (flavor == Flavor::Quandle && (m.flavor() != Flavor::Quandle || !is_quandle(m.base())))
        throw PreconditionFailed("FlavorMismatch", "Ext_Q needs a quandle module over a quandle");
    const Oracle o = make_oracle(m);
    const std::uint64_t sigma_total = space_size(o.radix, cap, "factor-set");
    const std::uint64_t cochain_total = space_size(o.cochain_radix, cap, "cochain");

    BruteForceCounts out;
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(sigma_total, 64))));
    if (jobs == 1) {
        out.cocycles = count_cocycles(o, flavor, 0, sigma_total);
    } else {
        std::vector<std::uint64_t> partial(jobs, 0);
        {
            std::vector<std::jthread> workers;
            for (unsigned j = 0; j < jobs; ++j) {
                const std::uint64_t begin = sigma_total * j / jobs;
                const std::uint64_t end = sigma_total * (j + 1) / jobs;
                workers.emplace_back([&, j, begin, end] { partial[j] = count_cocycles(o, flavor, begin, end); });
            }
        }
        for (auto c : partial) out.cocycles += c;
    }
    out.coboundaries = count_coboundaries(o, sigma_total, cochain_total);
    out.ext = out.cocycles / out.coboundaries;
    return out;
}

}  // namespace rackext
