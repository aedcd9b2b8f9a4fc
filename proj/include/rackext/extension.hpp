#pragma once

// Abelian extensions of a finite rack X by an X-module A, represented in the
// canonical form E[A, σ] on pairs (a, x) with
//   (a,x)^(b,y) = (φ_{x,y}(a) + σ_{x,y} + ψ_{y,x}(b), x^y).

#include "rackext/module.hpp"

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace rackext {

/// σ_{x,y} ∈ A_{x^y}, stored at index x*n + y. Interpreted relative to a module.
struct FactorSet {
    std::vector<IntVector> sigma;

    const IntVector& at(std::size_t n, Elem x, Elem y) const { return sigma[x * n + y]; }
    friend bool operator==(const FactorSet&, const FactorSet&) = default;
};

/// A family υ = {υ_x ∈ A_x}.
using Cochain = std::vector<IntVector>;

/// Checks lengths and reduces every coordinate; throws MalformedInput.
FactorSet make_factor_set(const RackModule& m, std::vector<IntVector> values);
FactorSet zero_factor_set(const RackModule& m);
Cochain make_cochain(const RackModule& m, std::vector<IntVector> values);

FactorSet add(const RackModule& m, const FactorSet& a, const FactorSet& b);
FactorSet sub(const RackModule& m, const FactorSet& a, const FactorSet& b);

// --- ambient coordinates --------------------------------------------------

/// ⊕_{(x,y)} A_{x^y}, pairs in lexicographic order.
FgAbGroup factor_set_space(const RackModule& m);
/// ⊕_x A_x.
FgAbGroup cochain_space(const RackModule& m);

IntVector flatten(const FactorSet& s);
FactorSet unflatten_factor_set(const RackModule& m, const IntVector& flat);
IntVector flatten(const Cochain& u);
Cochain unflatten_cochain(const RackModule& m, const IntVector& flat);

/// υ ↦ (φ_{x,y}(υ_x) - υ_{x^y} + ψ_{y,x}(υ_y))_{x,y}.
AbHom coboundary_map(const RackModule& m);
/// σ ↦ per-triple difference LHS - RHS of the cocycle identity; for the
/// quandle flavor the diagonal values σ_{x,x} are appended.
AbHom cocycle_map(const RackModule& m, Flavor flavor);

// --- cocycles and coboundaries ---------------------------------------------

/// First triple (x,y,z) at which
///   σ_{x^y,z} + φ_{x^y,z}(σ_{x,y}) = φ_{x^z,y^z}(σ_{x,z}) + σ_{x^z,y^z} + ψ_{y^z,x^z}(σ_{y,z})
/// fails, or nullopt.
std::optional<std::array<Elem, 3>> cocycle_violation(const RackModule& m, const FactorSet& s);
inline bool cocycle_check(const RackModule& m, const FactorSet& s) { return !cocycle_violation(m, s); }

FactorSet coboundary_of(const RackModule& m, const Cochain& u);

/// υ with τ = σ + δυ, or nullopt. Throws PreconditionFailed("CocycleViolation")
/// if either input is not a cocycle.
std::optional<Cochain> are_equivalent(const RackModule& m, const FactorSet& sigma, const FactorSet& tau);

/// υ with δυ = σ, or nullopt.
std::optional<Cochain> is_split(const RackModule& m, const FactorSet& sigma);

/// Violation CocycleViolation{x,y,z} or DiagonalNonzero{x}; nullopt when σ is
/// a quandle factor set. Throws PreconditionFailed("FlavorMismatch") unless the
/// module is quandle-flavored over a quandle.
std::optional<Violation> quandle_factor_violation(const RackModule& m, const FactorSet& s);
inline bool quandle_factor_check(const RackModule& m, const FactorSet& s) { return !quandle_factor_violation(m, s); }

// --- extension racks --------------------------------------------------------

struct FiberLabel {
    Elem base;
    IntVector coords;
    friend bool operator==(const FiberLabel&, const FiberLabel&) = default;
};

/// Operation table on pairs with their labels, before rack validation.
struct PairTable {
    Table table;
    std::vector<FiberLabel> labels;
};

class ExtensionRack {
public:
    const FinRack& rack() const noexcept { return rack_; }
    const std::vector<FiberLabel>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return rack_.size(); }
    Elem projection(std::size_t i) const { return labels_[i].base; }
    /// Index of the element labeled (coords, x); coords must be canonical.
    std::size_t index_of(Elem x, const IntVector& coords) const;
    std::size_t fiber_size(Elem x) const;

    /// Fiber action a · (c, x) = (a + c, x).
    std::size_t act(const RackModule& m, const IntVector& a, std::size_t u) const;

private:
    friend Checked<ExtensionRack> make_extension(const RackModule& m, FinRack rack, std::vector<FiberLabel> labels);
    friend Checked<ExtensionRack> extension_from_factor_set(const RackModule& m, const FactorSet& s, std::size_t cap);
    ExtensionRack(FinRack r, std::vector<FiberLabel> l);

    FinRack rack_;
    std::vector<FiberLabel> labels_;
    std::map<std::pair<Elem, IntVector>, std::size_t> index_;
};

inline constexpr std::size_t kDefaultExtensionCap = 10'000;

/// Pairs enumerated with x ascending, then fiber coordinates ascending.
/// Throws PreconditionFailed("InfiniteFiber") or CapExceeded.
PairTable extension_table(const RackModule& m, const FactorSet& s, std::size_t cap = kDefaultExtensionCap);

/// E[A, σ]; rack axioms fail (reported as a Violation) iff σ is not a cocycle.
Checked<ExtensionRack> extension_from_factor_set(const RackModule& m, const FactorSet& s,
                                                 std::size_t cap = kDefaultExtensionCap);

/// A ⋊ X = E[A, 0].
ExtensionRack semidirect_product(const RackModule& m, std::size_t cap = kDefaultExtensionCap);

/// Accepts an arbitrary rack with fiber labels as an extension of the base by
/// m. Labels must biject onto {(a, x)}; violations: NotAHomomorphism{u,v},
/// ActionX2Violation{u,v}, ActionX3Violation{u,v}.
Checked<ExtensionRack> make_extension(const RackModule& m, FinRack rack, std::vector<FiberLabel> labels);

/// The unique σ with s(x)^{s(y)} = σ_{x,y} · s(x^y). Section values are rack
/// indices; throws PreconditionFailed("NotASection") if s(x) is not over x.
FactorSet extract_factor_set(const RackModule& m, const ExtensionRack& e, const std::vector<std::size_t>& section);
/// Section given by fiber coordinates: s(x) = (υ_x, x).
FactorSet extract_factor_set(const RackModule& m, const ExtensionRack& e, const Cochain& section);

/// Explicit left division in E[A, σ]: the (c, z) with (c, z)^(b, y) = (a, x),
/// namely z = x^{ȳ}, c = φ_{z,y}^{-1}(a - σ_{z,y} - ψ_{y,z}(b)).
FiberLabel left_divide(const RackModule& m, const FactorSet& s, const FiberLabel& ax, const FiberLabel& by);

// --- dynamical cocycles -----------------------------------------------------

struct DynamicalCocycle {
    FinRack base;
    std::size_t s_size = 0;
    /// alpha[x*n + y][s*k + t] = α_{x,y}(s, t).
    std::vector<std::vector<std::size_t>> alpha;

    std::size_t at(Elem x, Elem y, std::size_t s, std::size_t t) const {
        return alpha[x * base.size() + y][s * s_size + t];
    }
};

/// Conditions making (x,s)^(y,t) = (x^y, α_{x,y}(s,t)) a rack:
///   1. s ↦ α_{x,y}(s,t) is a bijection for every t;
///   2. α_{x^y,z}(α_{x,y}(s,t), u) = α_{x^z,y^z}(α_{x,z}(s,u), α_{y,z}(t,u)).
/// Violations: Condition1Violation{x,y,t}, Condition2Violation{x,y,z,s,t,u}.
std::optional<Violation> dynamical_violation(const DynamicalCocycle& d);

/// X ×_α S on pairs (x, s) at index x*k + s with (x,s)^(y,t) = (x^y, α_{x,y}(s,t)).
Checked<FinRack> dynamical_extension(const DynamicalCocycle& d);

/// α_{x,y}(s,t) = φ_{x,y}(s) + σ_{x,y} + ψ_{y,x}(t) for a homogeneous finite
/// module, with S the elements of A in lexicographic order.
DynamicalCocycle dynamical_from_factor_set(const RackModule& m, const FactorSet& s);

}  // namespace rackext
