#include "rackext/module.hpp"

#include <algorithm>

namespace rackext {

std::string to_string(Flavor f) { return f == Flavor::Rack ? "rack" : "quandle"; }

Flavor parse_flavor(const std::string& s) {
    if (s == "rack") return Flavor::Rack;
    if (s == "quandle") return Flavor::Quandle;
    throw MalformedInput("flavor must be \"rack\" or \"quandle\", got \"" + s + "\"");
}

bool RackModule::all_finite() const {
    return std::all_of(data_.groups.begin(), data_.groups.end(), [](const FgAbGroup& g) { return g.is_finite(); });
}

RackModule RackModule::as_rack_module() const {
    ModuleData d = data_;
    d.flavor = Flavor::Rack;
    return RackModule(std::move(d));
}

namespace {

void check_shape(bool ok, const std::string& what) {
    if (!ok) throw MalformedInput("ShapeMismatch", what);
}

std::string pair_name(const char* sym, Elem a, Elem b) {
    return std::string(sym) + "_{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

}  // namespace

Checked<RackModule> validate_module(ModuleData d) {
    const FinRack& r = d.base;
    const std::size_t n = r.size();
    check_shape(d.groups.size() == n, "expected one group per rack element");
    check_shape(d.phi.size() == n * n && d.psi.size() == n * n, "expected one phi and one psi per ordered pair");
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const AbHom& f = d.phi[x * n + y];
            check_shape(f.source() == d.groups[x] && f.target() == d.groups[r.op(x, y)],
                        pair_name("phi", x, y) + " must map A_x to A_{x^y}");
            // psi stored under (y, x): A_y -> A_{x^y}
            const AbHom& g = d.psi[y * n + x];
            check_shape(g.source() == d.groups[y] && g.target() == d.groups[r.op(x, y)],
                        pair_name("psi", y, x) + " must map A_y to A_{x^y}");
        }
    auto phi = [&](Elem x, Elem y) -> const AbHom& { return d.phi[x * n + y]; };
    auto psi = [&](Elem y, Elem x) -> const AbHom& { return d.psi[y * n + x]; };

    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (!hom_is_iso(phi(x, y))) return Violation{"PhiNotIso", {x, y}, pair_name("phi", x, y) + " is not invertible"};

    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z) {
                const Elem xy = r.op(x, y), xz = r.op(x, z), yz = r.op(y, z);
                if (!(phi(xy, z).after(phi(x, y)) == phi(xz, yz).after(phi(x, z))))
                    return Violation{"SquareViolation", {x, y, z}, "phi_{x^y,z} phi_{x,y} != phi_{x^z,y^z} phi_{x,z}"};
                if (!(phi(xy, z).after(psi(y, x)) == psi(yz, xz).after(phi(y, z))))
                    return Violation{"SquareViolation", {x, y, z}, "phi_{x^y,z} psi_{y,x} != psi_{y^z,x^z} phi_{y,z}"};
                const AbHom rhs = phi(xz, yz).after(psi(z, x)) + psi(yz, xz).after(psi(z, y));
                if (!(psi(z, xy) == rhs))
                    return Violation{"Eq1Violation", {x, y, z},
                                     "psi_{z,x^y} != phi_{x^z,y^z} psi_{z,x} + psi_{y^z,x^z} psi_{z,y}"};
            }

    if (d.flavor == Flavor::Quandle) {
        if (const auto w = quandle_witness(r))
            return Violation{"FlavorMismatch", {*w}, "quandle flavor requires a quandle base"};
        for (Elem x = 0; x < n; ++x)
            if (!(psi(x, x) + phi(x, x) == AbHom::identity(d.groups[x])))
                return Violation{"Eq2Violation", {x}, "psi_{x,x} + phi_{x,x} != Id"};
    }
    return RackModule(std::move(d));
}

RackModule make_trivial_module(const FinRack& r, const FgAbGroup& a, std::optional<Flavor> flavor) {
    const std::size_t n = r.size();
    ModuleData d{r, std::vector<FgAbGroup>(n, a), {}, {}, flavor.value_or(is_quandle(r) ? Flavor::Quandle : Flavor::Rack)};
    d.phi.assign(n * n, AbHom::identity(a));
    d.psi.assign(n * n, AbHom::zero(a, a));
    return validate_module(std::move(d)).value();
}

RackModule make_asx_module(const FinRack& r, const FgAbGroup& a, const std::vector<AbHom>& action,
                           bool quandle_variant) {
    const std::size_t n = r.size();
    if (action.size() != n) throw MalformedInput("ShapeMismatch", "expected one action matrix per rack element");
    for (Elem x = 0; x < n; ++x) {
        if (!(action[x].source() == a) || !(action[x].target() == a))
            throw MalformedInput("ShapeMismatch", "action matrices must be endomorphisms of A");
        if (!hom_is_iso(action[x]))
            throw PreconditionFailed("ActionIncompatible", "rho_" + std::to_string(x) + " is not invertible");
    }
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (!(action[r.op(x, y)].after(action[y]) == action[y].after(action[x])))
                throw PreconditionFailed("ActionIncompatible", "rho_{x^y} rho_y != rho_y rho_x at (" +
                                                                   std::to_string(x) + "," + std::to_string(y) + ")");
    ModuleData d{r, std::vector<FgAbGroup>(n, a), {}, {},
                 quandle_variant && is_quandle(r) ? Flavor::Quandle : Flavor::Rack};
    const AbHom id = AbHom::identity(a);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) d.phi.push_back(action[y]);
    // psi[y*n + x] = Id - phi_{x,y} = Id - rho_y, independent of x.
    for (Elem y = 0; y < n; ++y)
        for (Elem x = 0; x < n; ++x) d.psi.push_back(quandle_variant ? id - action[y] : AbHom::zero(a, a));
    return validate_module(std::move(d)).value();
}

namespace {

// Inverse of a modulo m by the extended Euclidean algorithm.
Int mod_inverse(const Int& a, const Int& m) {
    Int old_r = reduce_mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        const Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw PreconditionFailed("NonInvertibleT", a.str() + " is not a unit modulo " + m.str());
    return reduce_mod(old_s, m);
}

bool is_unit(const Int& c, const Int& n) {
    if (n == 0) return c == 1 || c == -1;
    Int a = reduce_mod(c, n), b = n;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a == 1;
}

}  // namespace

IntMatrix companion_matrix(const IntVector& h, const Int& modulus) {
    if (h.size() < 2) throw MalformedInput("Alexander polynomial must have degree at least 1");
    const std::size_t deg = h.size() - 1;
    if (!is_unit(h.front(), modulus) || !is_unit(h.back(), modulus))
        throw PreconditionFailed("NonInvertibleT", "constant and leading coefficients of h must be units modulo " +
                                                       modulus.str());
    const Int lead_inv = modulus == 0 ? h.back() : mod_inverse(h.back(), modulus);  // ±1 is self-inverse
    IntMatrix c(deg, deg);
    for (std::size_t k = 0; k + 1 < deg; ++k) c(k + 1, k) = 1;
    // t^deg = -lead^{-1} (h_0 + h_1 t + ... + h_{deg-1} t^{deg-1})
    for (std::size_t i = 0; i < deg; ++i) c(i, deg - 1) = reduce_mod(-lead_inv * h[i], modulus);
    return c;
}

RackModule make_alexander_module(const FinRack& r, const std::vector<AlexanderOrbit>& per_orbit) {
    const auto blocks = orbits(r);
    if (per_orbit.size() != blocks.size())
        throw MalformedInput("expected Alexander data for " + std::to_string(blocks.size()) + " orbits, got " +
                             std::to_string(per_orbit.size()));
    const auto orbit_of = orbit_index(r);
    const std::size_t n = r.size();

    std::vector<FgAbGroup> orbit_group;
    std::vector<IntMatrix> comp;
    for (const auto& o : per_orbit) {
        if (o.modulus == 1 || o.modulus < 0) throw MalformedInput("Alexander modulus must be 0 or at least 2");
        comp.push_back(companion_matrix(o.h, o.modulus));
        orbit_group.emplace_back(IntVector(o.h.size() - 1, o.modulus));
    }

    // reduction[i][j]: Z_n[t]/h_j -> Z_n[t]/h_i sending t^k to t^k mod h_i.
    auto reduction = [&](std::size_t i, std::size_t j) {
        const std::size_t di = comp[i].rows(), dj = comp[j].rows();
        IntMatrix red(di, dj);
        IntVector v(di);
        v[0] = 1;
        for (std::size_t k = 0; k < dj; ++k) {
            for (std::size_t row = 0; row < di; ++row) red(row, k) = v[row];
            v = comp[i] * v;
        }
        return red;
    };

    ModuleData d{r, {}, {}, {}, is_quandle(r) ? Flavor::Quandle : Flavor::Rack};
    for (Elem x = 0; x < n; ++x) d.groups.push_back(orbit_group[orbit_of[x]]);
    try {
        for (Elem x = 0; x < n; ++x)
            for (Elem y = 0; y < n; ++y) d.phi.emplace_back(d.groups[x], d.groups[r.op(x, y)], comp[orbit_of[x]]);
        for (Elem y = 0; y < n; ++y)
            for (Elem x = 0; x < n; ++x) {
                const std::size_t ox = orbit_of[x], oy = orbit_of[y];
                const IntMatrix one_minus_t = IntMatrix::identity(comp[ox].rows()) - comp[ox];
                d.psi.emplace_back(d.groups[y], d.groups[r.op(x, y)], one_minus_t * reduction(ox, oy));
            }
    } catch (const MalformedInput& e) {
        throw PreconditionFailed("IncompatibleOrbitData", std::string("orbit data does not define homomorphisms: ") +
                                                              e.what());
    }
    auto checked = validate_module(std::move(d));
    if (!checked) throw PreconditionFailed("IncompatibleOrbitData", checked.violation().describe());
    return std::move(checked).value();
}

RackModule make_dihedral_module(const FinRack& r, const IntVector& per_orbit_moduli) {
    std::vector<AlexanderOrbit> data;
    for (const auto& m : per_orbit_moduli) data.push_back({m, IntVector{1, 1}});
    return make_alexander_module(r, data);
}

WordAction word_action(const RackModule& m, Elem x, const SignedWord& w) {
    const FinRack& r = m.base();
    AbHom acc = AbHom::identity(m.group(x));
    Elem s = x;
    for (const auto& l : w) {
        if (l.generator >= r.size()) throw MalformedInput("word letter is not a rack element");
        if (l.sign > 0) {
            acc = m.phi(s, l.generator).after(acc);
            s = r.op(s, l.generator);
        } else {
            const Elem t = r.inv_op(s, l.generator);
            acc = m.phi(t, l.generator).inverse().after(acc);
            s = t;
        }
    }
    return WordAction{std::move(acc), s};
}

std::optional<Violation> module_map_violation(const ModuleMap& f) {
    const RackModule& a = f.source;
    const RackModule& b = f.target;
    const std::size_t n = a.size();
    if (!(a.base() == b.base())) throw MalformedInput("ShapeMismatch", "module map between different base racks");
    if (f.components.size() != n) throw MalformedInput("ShapeMismatch", "expected one component per element");
    for (Elem x = 0; x < n; ++x)
        if (!(f.components[x].source() == a.group(x)) || !(f.components[x].target() == b.group(x)))
            throw MalformedInput("ShapeMismatch", "component f_" + std::to_string(x) + " must map A_x to B_x");
    const FinRack& r = a.base();
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const Elem xy = r.op(x, y);
            if (!(b.phi(x, y).after(f.components[x]) == f.components[xy].after(a.phi(x, y))))
                return Violation{"PhiNaturality", {x, y}, "chi_{x,y} f_x != f_{x^y} phi_{x,y}"};
            if (!(b.psi(y, x).after(f.components[y]) == f.components[xy].after(a.psi(y, x))))
                return Violation{"PsiNaturality", {y, x}, "omega_{y,x} f_y != f_{x^y} psi_{y,x}"};
        }
    return std::nullopt;
}

}  // namespace rackext
