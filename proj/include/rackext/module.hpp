#pragma once

// Rack and quandle modules (A, φ, ψ) over a finite rack X:
//   φ_{x,y} : A_x -> A_{x^y}  (an isomorphism)
//   ψ_{y,x} : A_y -> A_{x^y}

#include "rackext/abelian.hpp"
#include "rackext/rack.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rackext {

enum class Flavor { Rack, Quandle };

std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& s);

/// Unvalidated module data. phi[x*n + y] is φ_{x,y}; psi[y*n + x] is ψ_{y,x}.
struct ModuleData {
    FinRack base;
    std::vector<FgAbGroup> groups;
    std::vector<AbHom> phi;
    std::vector<AbHom> psi;
    Flavor flavor = Flavor::Rack;
};

class RackModule {
public:
    const FinRack& base() const noexcept { return data_.base; }
    std::size_t size() const noexcept { return data_.base.size(); }
    Flavor flavor() const noexcept { return data_.flavor; }
    const FgAbGroup& group(Elem x) const { return data_.groups[x]; }
    const AbHom& phi(Elem x, Elem y) const { return data_.phi[x * size() + y]; }
    const AbHom& psi(Elem y, Elem x) const { return data_.psi[y * size() + x]; }
    const ModuleData& data() const noexcept { return data_; }

    bool all_finite() const;

    /// Same data, flavor relabeled to Rack (always valid).
    RackModule as_rack_module() const;

    friend bool operator==(const RackModule& a, const RackModule& b) {
        return a.data_.base == b.data_.base && a.data_.groups == b.data_.groups && a.data_.phi == b.data_.phi &&
               a.data_.psi == b.data_.psi && a.data_.flavor == b.data_.flavor;
    }

private:
    explicit RackModule(ModuleData d) : data_(std::move(d)) {}
    friend Checked<RackModule> validate_module(ModuleData d);
    ModuleData data_;
};

/// Shape errors throw MalformedInput (kind "ShapeMismatch"). Identity failures
/// are reported as a Violation: PhiNotIso{x,y}, SquareViolation{x,y,z},
/// Eq1Violation{x,y,z}, Eq2Violation{x}, FlavorMismatch{x}.
Checked<RackModule> validate_module(ModuleData d);

/// φ = Id, ψ = 0. Flavor defaults to Quandle exactly when the base is a quandle.
RackModule make_trivial_module(const FinRack& r, const FgAbGroup& a, std::optional<Flavor> flavor = std::nullopt);

/// Homogeneous module from an action of As X on A given by invertible ρ_x.
/// φ_{x,y} = ρ_y (the acting element's image); ψ = 0, or ψ_{y,x} = Id - φ_{x,y}
/// for the quandle variant. Requires ρ_{x^y} ρ_y = ρ_y ρ_x (matrix order);
/// throws PreconditionFailed("ActionIncompatible") with the failing pair.
RackModule make_asx_module(const FinRack& r, const FgAbGroup& a, const std::vector<AbHom>& action,
                           bool quandle_variant);

struct AlexanderOrbit {
    Int modulus;          // n >= 2, or 0 for Z
    IntVector h;          // coefficients h_0 + h_1 t + ... + h_d t^d, d >= 1
};

/// A_x = Z_n[t,t^-1]/h(t) on basis 1, t, ..., t^{d-1}; φ = multiplication by t
/// (companion matrix), ψ = multiplication by 1 - t. Between orbits ψ first
/// reduces a polynomial modulo the target orbit's h. Throws
/// PreconditionFailed("NonInvertibleT") when h_0 or h_d is not a unit.
RackModule make_alexander_module(const FinRack& r, const std::vector<AlexanderOrbit>& per_orbit);

/// Alexander module with h = 1 + t: φ = -1, ψ = 2.
RackModule make_dihedral_module(const FinRack& r, const IntVector& per_orbit_moduli);

/// Companion matrix of h (action of t on Z[t]/h in the basis 1, t, ...).
IntMatrix companion_matrix(const IntVector& h, const Int& modulus);

struct WordAction {
    AbHom map;      // A_x -> A_{x^w}
    Elem terminal;  // x^w
};

/// Left-to-right fold: a positive letter y at state s composes φ_{s,y}; a
/// negative letter composes φ_{s^ȳ,y}^{-1}.
WordAction word_action(const RackModule& m, Elem x, const SignedWord& w);

struct ModuleMap {
    RackModule source;
    RackModule target;
    std::vector<AbHom> components;  // f_x : A_x -> B_x
};

/// First failing naturality square: PhiNaturality{x,y} or PsiNaturality{y,x}.
std::optional<Violation> module_map_violation(const ModuleMap& f);
inline bool check_module_map(const ModuleMap& f) { return !module_map_violation(f).has_value(); }

}  // namespace rackext
