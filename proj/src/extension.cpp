#include "rackext/extension.hpp"

#include <algorithm>
#include <numeric>

namespace rackext {

namespace {

using Small = std::vector<std::int64_t>;

Small to_small(const IntVector& v) {
    Small out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_int64(v[i]);
    return out;
}

// Mixed-radix index of canonical coordinates, first coordinate most significant.
std::size_t encode(const Small& coords, const Small& moduli) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) idx = idx * static_cast<std::size_t>(moduli[i]) + static_cast<std::size_t>(coords[i]);
    return idx;
}

void require_pair_count(const RackModule& m, const FactorSet& s) {
    const std::size_t n = m.size();
    if (s.sigma.size() != n * n) throw MalformedInput("factor set must have one value per ordered pair");
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (s.sigma[x * n + y].size() != m.group(m.base().op(x, y)).rank())
                throw MalformedInput("sigma_{" + std::to_string(x) + "," + std::to_string(y) + "} has wrong rank");
}

}  // namespace

// ---------------------------------------------------------------- values

FactorSet make_factor_set(const RackModule& m, std::vector<IntVector> values) {
    const std::size_t n = m.size();
    if (values.size() != n * n) throw MalformedInput("factor set must have one value per ordered pair");
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            auto& v = values[x * n + y];
            v = m.group(m.base().op(x, y)).reduce(std::move(v));
        }
    return FactorSet{std::move(values)};
}

FactorSet zero_factor_set(const RackModule& m) {
    const std::size_t n = m.size();
    FactorSet s;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) s.sigma.push_back(m.group(m.base().op(x, y)).zero());
    return s;
}

Cochain make_cochain(const RackModule& m, std::vector<IntVector> values) {
    if (values.size() != m.size()) throw MalformedInput("cochain must have one value per rack element");
    for (Elem x = 0; x < m.size(); ++x) values[x] = m.group(x).reduce(std::move(values[x]));
    return values;
}

FactorSet add(const RackModule& m, const FactorSet& a, const FactorSet& b) {
    const std::size_t n = m.size();
    FactorSet out;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            out.sigma.push_back(m.group(m.base().op(x, y)).add(a.at(n, x, y), b.at(n, x, y)));
    return out;
}

FactorSet sub(const RackModule& m, const FactorSet& a, const FactorSet& b) {
    const std::size_t n = m.size();
    FactorSet out;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            out.sigma.push_back(m.group(m.base().op(x, y)).sub(a.at(n, x, y), b.at(n, x, y)));
    return out;
}

// ---------------------------------------------------------------- ambient

FgAbGroup factor_set_space(const RackModule& m) {
    std::vector<FgAbGroup> parts;
    for (Elem x = 0; x < m.size(); ++x)
        for (Elem y = 0; y < m.size(); ++y) parts.push_back(m.group(m.base().op(x, y)));
    return FgAbGroup::direct_sum(parts);
}

FgAbGroup cochain_space(const RackModule& m) {
    return FgAbGroup::direct_sum(m.data().groups);
}

IntVector flatten(const FactorSet& s) {
    IntVector out;
    for (const auto& v : s.sigma) out.insert(out.end(), v.begin(), v.end());
    return out;
}

FactorSet unflatten_factor_set(const RackModule& m, const IntVector& flat) {
    const std::size_t n = m.size();
    FactorSet s;
    std::size_t pos = 0;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const std::size_t r = m.group(m.base().op(x, y)).rank();
            if (pos + r > flat.size()) throw MalformedInput("flattened factor set too short");
            s.sigma.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                                 flat.begin() + static_cast<std::ptrdiff_t>(pos + r));
            pos += r;
        }
    if (pos != flat.size()) throw MalformedInput("flattened factor set too long");
    return make_factor_set(m, std::move(s.sigma));
}

IntVector flatten(const Cochain& u) {
    IntVector out;
    for (const auto& v : u) out.insert(out.end(), v.begin(), v.end());
    return out;
}

Cochain unflatten_cochain(const RackModule& m, const IntVector& flat) {
    Cochain u;
    std::size_t pos = 0;
    for (Elem x = 0; x < m.size(); ++x) {
        const std::size_t r = m.group(x).rank();
        if (pos + r > flat.size()) throw MalformedInput("flattened cochain too short");
        u.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos), flat.begin() + static_cast<std::ptrdiff_t>(pos + r));
        pos += r;
    }
    if (pos != flat.size()) throw MalformedInput("flattened cochain too long");
    return make_cochain(m, std::move(u));
}

namespace {

// Adds `block` (scaled by sign) into `dst` at the given offsets.
void add_block(IntMatrix& dst, std::size_t row0, std::size_t col0, const IntMatrix& block, int sign) {
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c)
            if (block(r, c) != 0) dst(row0 + r, col0 + c) += sign * block(r, c);
}

std::vector<std::size_t> element_offsets(const RackModule& m) {
    std::vector<std::size_t> off(m.size() + 1);
    for (Elem x = 0; x < m.size(); ++x) off[x + 1] = off[x] + m.group(x).rank();
    return off;
}

std::vector<std::size_t> pair_offsets(const RackModule& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> off(n * n + 1);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) off[x * n + y + 1] = off[x * n + y] + m.group(m.base().op(x, y)).rank();
    return off;
}

}  // namespace

AbHom coboundary_map(const RackModule& m) {
    const std::size_t n = m.size();
    const FinRack& r = m.base();
    const auto eo = element_offsets(m);
    const auto po = pair_offsets(m);
    IntMatrix mat(po.back(), eo.back());
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const std::size_t row = po[x * n + y];
            const Elem xy = r.op(x, y);
            add_block(mat, row, eo[x], m.phi(x, y).matrix(), 1);
            add_block(mat, row, eo[y], m.psi(y, x).matrix(), 1);
            add_block(mat, row, eo[xy], IntMatrix::identity(m.group(xy).rank()), -1);
        }
    return AbHom(cochain_space(m), factor_set_space(m), std::move(mat));
}

AbHom cocycle_map(const RackModule& m, Flavor flavor) {
    const std::size_t n = m.size();
    const FinRack& r = m.base();
    const auto po = pair_offsets(m);
    std::vector<FgAbGroup> targets;
    std::size_t rows = 0;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z) {
                targets.push_back(m.group(r.op(r.op(x, y), z)));
                rows += targets.back().rank();
            }
    if (flavor == Flavor::Quandle)
        for (Elem x = 0; x < n; ++x) {
            targets.push_back(m.group(x));
            rows += targets.back().rank();
        }
    IntMatrix mat(rows, po.back());
    auto pair_col = [&](Elem a, Elem b) { return po[a * n + b]; };
    std::size_t row = 0;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z) {
                const Elem xy = r.op(x, y), xz = r.op(x, z), yz = r.op(y, z);
                const std::size_t rank = m.group(r.op(xy, z)).rank();
                const IntMatrix id = IntMatrix::identity(rank);
                // σ_{x^y,z} + φ_{x^y,z}(σ_{x,y}) - φ_{x^z,y^z}(σ_{x,z}) - σ_{x^z,y^z} - ψ_{y^z,x^z}(σ_{y,z})
                add_block(mat, row, pair_col(xy, z), id, 1);
                add_block(mat, row, pair_col(x, y), m.phi(xy, z).matrix(), 1);
                add_block(mat, row, pair_col(x, z), m.phi(xz, yz).matrix(), -1);
                add_block(mat, row, pair_col(xz, yz), id, -1);
                add_block(mat, row, pair_col(y, z), m.psi(yz, xz).matrix(), -1);
                row += rank;
            }
    if (flavor == Flavor::Quandle)
        for (Elem x = 0; x < n; ++x) {
            const std::size_t rank = m.group(x).rank();
            add_block(mat, row, pair_col(x, x), IntMatrix::identity(rank), 1);
            row += rank;
        }
    return AbHom(factor_set_space(m), FgAbGroup::direct_sum(targets), std::move(mat));
}

// ---------------------------------------------------------------- cocycles

std::optional<std::array<Elem, 3>> cocycle_violation(const RackModule& m, const FactorSet& s) {
    require_pair_count(m, s);
    const std::size_t n = m.size();
    const FinRack& r = m.base();
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z) {
                const Elem xy = r.op(x, y), xz = r.op(x, z), yz = r.op(y, z);
                const FgAbGroup& g = m.group(r.op(xy, z));
                const IntVector lhs = g.add(s.at(n, xy, z), m.phi(xy, z)(s.at(n, x, y)));
                const IntVector rhs =
                    g.add(g.add(m.phi(xz, yz)(s.at(n, x, z)), s.at(n, xz, yz)), m.psi(yz, xz)(s.at(n, y, z)));
                if (lhs != rhs) return std::array<Elem, 3>{x, y, z};
            }
    return std::nullopt;
}

FactorSet coboundary_of(const RackModule& m, const Cochain& u) {
    if (u.size() != m.size()) throw MalformedInput("cochain must have one value per rack element");
    const std::size_t n = m.size();
    FactorSet s;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const Elem xy = m.base().op(x, y);
            const FgAbGroup& g = m.group(xy);
            s.sigma.push_back(g.sub(g.add(m.phi(x, y)(u[x]), m.psi(y, x)(u[y])), u[xy]));
        }
    return s;
}

std::optional<Cochain> are_equivalent(const RackModule& m, const FactorSet& sigma, const FactorSet& tau) {
    for (const FactorSet* f : {&sigma, &tau})
        if (const auto w = cocycle_violation(m, *f))
            throw PreconditionFailed("CocycleViolation", "input is not a cocycle at (" + std::to_string((*w)[0]) + "," +
                                                             std::to_string((*w)[1]) + "," + std::to_string((*w)[2]) + ")");
    const auto sol = solve_linear(coboundary_map(m), flatten(sub(m, tau, sigma)));
    if (!sol) return std::nullopt;
    return unflatten_cochain(m, *sol);
}

std::optional<Cochain> is_split(const RackModule& m, const FactorSet& sigma) {
    return are_equivalent(m, zero_factor_set(m), sigma);
}

std::optional<Violation> quandle_factor_violation(const RackModule& m, const FactorSet& s) {
    if (m.flavor() != Flavor::Quandle || !is_quandle(m.base()))
        throw PreconditionFailed("FlavorMismatch", "quandle factor sets need a quandle module over a quandle");
    if (const auto w = cocycle_violation(m, s))
        return Violation{"CocycleViolation", {(*w)[0], (*w)[1], (*w)[2]}, "cocycle identity fails"};
    const std::size_t n = m.size();
    for (Elem x = 0; x < n; ++x)
        if (!m.group(x).is_zero(s.at(n, x, x))) return Violation{"DiagonalNonzero", {x}, "sigma_{x,x} != 0"};
    return std::nullopt;
}

// ---------------------------------------------------------------- extension racks

ExtensionRack::ExtensionRack(FinRack r, std::vector<FiberLabel> l) : rack_(std::move(r)), labels_(std::move(l)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(std::pair{labels_[i].base, labels_[i].coords}, i);
}

std::size_t ExtensionRack::index_of(Elem x, const IntVector& coords) const {
    const auto it = index_.find(std::pair{x, coords});
    if (it == index_.end()) throw MalformedInput("no extension element with the given label");
    return it->second;
}

std::size_t ExtensionRack::fiber_size(Elem x) const {
    return static_cast<std::size_t>(
        std::count_if(labels_.begin(), labels_.end(), [x](const FiberLabel& l) { return l.base == x; }));
}

std::size_t ExtensionRack::act(const RackModule& m, const IntVector& a, std::size_t u) const {
    const FiberLabel& l = labels_[u];
    return index_of(l.base, m.group(l.base).add(a, l.coords));
}

PairTable extension_table(const RackModule& m, const FactorSet& s, std::size_t cap) {
    require_pair_count(m, s);
    const std::size_t n = m.size();
    const FinRack& r = m.base();
    if (!m.all_finite()) throw PreconditionFailed("InfiniteFiber", "extension tables need finite fibers");
    std::vector<std::size_t> offset(n + 1);
    for (Elem x = 0; x < n; ++x) {
        const Int ord = *m.group(x).order();
        if (ord > cap || offset[x] + static_cast<std::size_t>(ord) > cap)
            throw CapExceeded("extension would exceed " + std::to_string(cap) + " elements");
        offset[x + 1] = offset[x] + static_cast<std::size_t>(ord);
    }
    const std::size_t total = offset[n];

    PairTable out;
    std::vector<std::vector<Small>> elems(n);
    std::vector<Small> moduli(n);
    for (Elem x = 0; x < n; ++x) {
        moduli[x] = to_small(m.group(x).moduli());
        for (auto& e : m.group(x).elements(cap)) {
            elems[x].push_back(to_small(e));
            out.labels.push_back(FiberLabel{x, std::move(e)});
        }
    }
    out.table.assign(total, std::vector<long long>(total));
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const Elem z = r.op(x, y);
            const Small& mod = moduli[z];
            std::vector<Small> phi_img, psi_img;
            for (const auto& a : elems[x]) phi_img.push_back(to_small(m.phi(x, y)(IntVector(a.begin(), a.end()))));
            for (const auto& b : elems[y]) psi_img.push_back(to_small(m.psi(y, x)(IntVector(b.begin(), b.end()))));
            const Small sig = to_small(s.at(n, x, y));
            Small sum(mod.size());
            for (std::size_t ia = 0; ia < elems[x].size(); ++ia)
                for (std::size_t ib = 0; ib < elems[y].size(); ++ib) {
                    for (std::size_t k = 0; k < mod.size(); ++k)
                        sum[k] = (phi_img[ia][k] + sig[k] + psi_img[ib][k]) % mod[k];
                    out.table[offset[x] + ia][offset[y] + ib] = static_cast<long long>(offset[z] + encode(sum, mod));
                }
        }
    return out;
}

Checked<ExtensionRack> extension_from_factor_set(const RackModule& m, const FactorSet& s, std::size_t cap) {
    PairTable pt = extension_table(m, s, cap);
    auto checked = validate_rack(pt.table);
    if (!checked) return checked.violation();
    return ExtensionRack(std::move(checked).value(), std::move(pt.labels));
}

ExtensionRack semidirect_product(const RackModule& m, std::size_t cap) {
    return extension_from_factor_set(m, zero_factor_set(m), cap).value();
}

Checked<ExtensionRack> make_extension(const RackModule& m, FinRack rack, std::vector<FiberLabel> labels) {
    const std::size_t n = m.size();
    if (labels.size() != rack.size()) throw MalformedInput("expected one label per extension element");
    if (!m.all_finite()) throw PreconditionFailed("InfiniteFiber", "extension racks need finite fibers");
    Int expected = 0;
    for (Elem x = 0; x < n; ++x) expected += *m.group(x).order();
    if (expected != Int(labels.size()))
        throw MalformedInput("labels do not biject onto the pairs (a, x): wrong element count");
    for (const auto& l : labels) {
        if (l.base >= n) throw MalformedInput("label base element out of range");
        if (!m.group(l.base).contains(l.coords)) throw MalformedInput("label coordinates are not canonical in A_x");
    }
    ExtensionRack e(std::move(rack), std::move(labels));
    if (e.index_.size() != e.labels_.size()) throw MalformedInput("duplicate fiber label");

    const FinRack& base = m.base();
    const FinRack& er = e.rack();
    const std::size_t size = er.size();
    for (std::size_t u = 0; u < size; ++u)
        for (std::size_t v = 0; v < size; ++v) {
            const Elem x = e.projection(u), y = e.projection(v);
            const std::size_t uv = er.op(static_cast<Elem>(u), static_cast<Elem>(v));
            if (e.projection(uv) != base.op(x, y)) return Violation{"NotAHomomorphism", {u, v}, "projection"};
            for (const auto& a : m.group(x).elements())
                if (er.op(static_cast<Elem>(e.act(m, a, u)), static_cast<Elem>(v)) != e.act(m, m.phi(x, y)(a), uv))
                    return Violation{"ActionX2Violation", {u, v}, "(a.u)^v != phi_{x,y}(a).(u^v)"};
            for (const auto& b : m.group(y).elements())
                if (er.op(static_cast<Elem>(u), static_cast<Elem>(e.act(m, b, v))) != e.act(m, m.psi(y, x)(b), uv))
                    return Violation{"ActionX3Violation", {u, v}, "u^(b.v) != psi_{y,x}(b).(u^v)"};
        }
    return e;
}

FactorSet extract_factor_set(const RackModule& m, const ExtensionRack& e, const std::vector<std::size_t>& section) {
    const std::size_t n = m.size();
    if (section.size() != n) throw PreconditionFailed("NotASection", "section must assign one element per base element");
    for (Elem x = 0; x < n; ++x)
        if (section[x] >= e.size() || e.projection(section[x]) != x)
            throw PreconditionFailed("NotASection", "s(" + std::to_string(x) + ") does not lie over " + std::to_string(x));
    FactorSet out;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const Elem xy = m.base().op(x, y);
            const std::size_t prod = e.rack().op(static_cast<Elem>(section[x]), static_cast<Elem>(section[y]));
            out.sigma.push_back(m.group(xy).sub(e.labels()[prod].coords, e.labels()[section[xy]].coords));
        }
    return out;
}

FactorSet extract_factor_set(const RackModule& m, const ExtensionRack& e, const Cochain& section) {
    if (section.size() != m.size()) throw PreconditionFailed("NotASection", "section must assign one element per base element");
    std::vector<std::size_t> idx;
    for (Elem x = 0; x < m.size(); ++x) {
        if (!m.group(x).contains(section[x]))
            throw PreconditionFailed("NotASection", "s(" + std::to_string(x) + ") is not an element of A_x");
        idx.push_back(e.index_of(x, section[x]));
    }
    return extract_factor_set(m, e, idx);
}

FiberLabel left_divide(const RackModule& m, const FactorSet& s, const FiberLabel& ax, const FiberLabel& by) {
    const std::size_t n = m.size();
    const Elem z = m.base().inv_op(ax.base, by.base);
    const FgAbGroup& gx = m.group(ax.base);
    const IntVector rhs = gx.sub(gx.sub(ax.coords, s.at(n, z, by.base)), m.psi(by.base, z)(by.coords));
    return FiberLabel{z, m.phi(z, by.base).inverse()(rhs)};
}

// ---------------------------------------------------------------- dynamical

std::optional<Violation> dynamical_violation(const DynamicalCocycle& d) {
    const std::size_t n = d.base.size(), k = d.s_size;
    if (k == 0) throw MalformedInput("dynamical cocycle needs a non-empty fiber set");
    if (d.alpha.size() != n * n) throw MalformedInput("alpha must have one table per ordered pair");
    for (const auto& t : d.alpha) {
        if (t.size() != k * k) throw MalformedInput("each alpha table must be s_size x s_size");
        for (std::size_t v : t)
            if (v >= k) throw MalformedInput("alpha value outside the fiber set");
    }
    std::vector<bool> seen(k);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (std::size_t t = 0; t < k; ++t) {
                std::fill(seen.begin(), seen.end(), false);
                for (std::size_t s = 0; s < k; ++s) {
                    const std::size_t v = d.at(x, y, s, t);
                    if (seen[v]) return Violation{"Condition1Violation", {x, y, t}, "alpha_{x,y}(-,t) is not a bijection"};
                    seen[v] = true;
                }
            }
    const FinRack& r = d.base;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z) {
                const Elem xy = r.op(x, y), xz = r.op(x, z), yz = r.op(y, z);
                for (std::size_t s = 0; s < k; ++s)
                    for (std::size_t t = 0; t < k; ++t)
                        for (std::size_t u = 0; u < k; ++u)
                            if (d.at(xy, z, d.at(x, y, s, t), u) != d.at(xz, yz, d.at(x, z, s, u), d.at(y, z, t, u)))
                                return Violation{"Condition2Violation", {x, y, z, s, t, u}, "coherence identity fails"};
            }
    return std::nullopt;
}

Checked<FinRack> dynamical_extension(const DynamicalCocycle& d) {
    if (auto v = dynamical_violation(d)) return std::move(*v);
    const std::size_t n = d.base.size(), k = d.s_size;
    Table t(n * k, std::vector<long long>(n * k));
    for (Elem x = 0; x < n; ++x)
        for (std::size_t s = 0; s < k; ++s)
            for (Elem y = 0; y < n; ++y)
                for (std::size_t u = 0; u < k; ++u)
                    t[x * k + s][y * k + u] = static_cast<long long>(d.base.op(x, y) * k + d.at(x, y, s, u));
    return validate_rack(t);
}

DynamicalCocycle dynamical_from_factor_set(const RackModule& m, const FactorSet& s) {
    require_pair_count(m, s);
    const std::size_t n = m.size();
    const FgAbGroup& a = m.group(0);
    for (Elem x = 0; x < n; ++x)
        if (!(m.group(x) == a)) throw PreconditionFailed("Heterogeneous", "dynamical cocycles need a homogeneous module");
    if (!a.is_finite()) throw PreconditionFailed("InfiniteFiber", "dynamical cocycles need a finite fiber");
    const auto elems = a.elements(kDefaultExtensionCap);
    const Small mod = to_small(a.moduli());
    const std::size_t k = elems.size();
    DynamicalCocycle d{m.base(), k, {}};
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            std::vector<std::size_t> tab(k * k);
            for (std::size_t si = 0; si < k; ++si) {
                const IntVector ps = a.add(m.phi(x, y)(elems[si]), s.at(n, x, y));
                for (std::size_t ti = 0; ti < k; ++ti)
                    tab[si * k + ti] = encode(to_small(a.add(ps, m.psi(y, x)(elems[ti]))), mod);
            }
            d.alpha.push_back(std::move(tab));
        }
    return d;
}

}  // namespace rackext
