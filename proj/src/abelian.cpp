#include "rackext/abelian.hpp"

#include "rackext/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace rackext {

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

}  // namespace

// ---------------------------------------------------------------- FgAbGroup

FgAbGroup::FgAbGroup(IntVector moduli) : moduli_(std::move(moduli)) {
    for (const auto& m : moduli_) {
        if (m < 0) throw MalformedInput("negative modulus " + m.str());
        if (m == 1) throw MalformedInput("modulus 1 is not allowed; omit the factor instead");
    }
}

FgAbGroup::FgAbGroup(std::initializer_list<long long> moduli)
    : FgAbGroup(IntVector(moduli.begin(), moduli.end())) {}

FgAbGroup FgAbGroup::free(std::size_t rank) { return FgAbGroup(IntVector(rank, Int(0))); }

FgAbGroup FgAbGroup::cyclic(const Int& modulus) {
    if (modulus == 1) return FgAbGroup();
    return FgAbGroup(IntVector{modulus});
}

FgAbGroup FgAbGroup::direct_sum(std::span<const FgAbGroup> parts) {
    IntVector all;
    for (const auto& p : parts) all.insert(all.end(), p.moduli_.begin(), p.moduli_.end());
    return FgAbGroup(std::move(all));
}

bool FgAbGroup::is_finite() const {
    return std::none_of(moduli_.begin(), moduli_.end(), [](const Int& m) { return m == 0; });
}

std::size_t FgAbGroup::free_rank() const {
    return static_cast<std::size_t>(std::count(moduli_.begin(), moduli_.end(), Int(0)));
}

std::optional<Int> FgAbGroup::order() const {
    Int n = 1;
    for (const auto& m : moduli_) {
        if (m == 0) return std::nullopt;
        n *= m;
    }
    return n;
}

IntVector FgAbGroup::reduce(IntVector coords) const {
    if (coords.size() != moduli_.size())
        throw MalformedInput("element has " + std::to_string(coords.size()) + " coordinates, group rank is " +
                             std::to_string(moduli_.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = reduce_mod(coords[i], moduli_[i]);
    return coords;
}

bool FgAbGroup::is_zero(const IntVector& coords) const {
    const auto r = reduce(coords);
    return std::all_of(r.begin(), r.end(), [](const Int& v) { return v == 0; });
}

bool FgAbGroup::contains(const IntVector& coords) const {
    if (coords.size() != moduli_.size()) return false;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (moduli_[i] != 0 && (coords[i] < 0 || coords[i] >= moduli_[i])) return false;
    return true;
}

IntVector FgAbGroup::add(const IntVector& a, const IntVector& b) const {
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return reduce(std::move(out));
}

IntVector FgAbGroup::sub(const IntVector& a, const IntVector& b) const {
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return reduce(std::move(out));
}

IntVector FgAbGroup::neg(const IntVector& a) const {
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return reduce(std::move(out));
}

std::vector<IntVector> FgAbGroup::elements(std::size_t cap) const {
    const auto n = order();
    if (!n) throw CapExceeded("cannot enumerate an infinite group");
    if (*n > cap) throw CapExceeded("group of order " + n->str() + " exceeds enumeration cap");
    std::vector<IntVector> out;
    out.reserve(static_cast<std::size_t>(*n));
    IntVector cur(rank());
    for (;;) {
        out.push_back(cur);
        std::size_t i = rank();
        while (i > 0) {
            --i;
            if (++cur[i] < moduli_[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (rank() == 0) return out;
    }
}

// ---------------------------------------------------------------- AbHom

AbHom::AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
        throw MalformedInput("homomorphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) + ", expected " + std::to_string(target_.rank()) + "x" +
                             std::to_string(source_.rank()));
    for (std::size_t r = 0; r < matrix_.rows(); ++r)
        for (std::size_t c = 0; c < matrix_.cols(); ++c) matrix_(r, c) = reduce_mod(matrix_(r, c), target_.modulus(r));
    // m_c * column c must vanish in the target for every torsion generator.
    for (std::size_t c = 0; c < matrix_.cols(); ++c) {
        const Int& m = source_.modulus(c);
        if (m == 0) continue;
        for (std::size_t r = 0; r < matrix_.rows(); ++r) {
            if (reduce_mod(m * matrix_(r, c), target_.modulus(r)) != 0)
                throw MalformedInput("homomorphism not well defined: generator " + std::to_string(c) + " of order " +
                                     m.str() + " maps to an element whose coordinate " + std::to_string(r) +
                                     " has larger order");
        }
    }
}

AbHom AbHom::identity(const FgAbGroup& g) { return AbHom(g, g, IntMatrix::identity(g.rank())); }

AbHom AbHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
    return AbHom(source, target, IntMatrix(target.rank(), source.rank()));
}

AbHom AbHom::scalar(const FgAbGroup& g, const Int& k) {
    IntMatrix m(g.rank(), g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) m(i, i) = k;
    return AbHom(g, g, std::move(m));
}

IntVector AbHom::operator()(const IntVector& coords) const {
    if (coords.size() != source_.rank()) throw MalformedInput("argument has wrong rank for homomorphism");
    return target_.reduce(matrix_ * coords);
}

AbHom AbHom::after(const AbHom& inner) const {
    if (!(inner.target_ == source_)) throw MalformedInput("composition of homomorphisms with mismatched groups");
    return AbHom(inner.source_, target_, matrix_ * inner.matrix_);
}

AbHom AbHom::operator+(const AbHom& other) const {
    if (!(source_ == other.source_) || !(target_ == other.target_))
        throw MalformedInput("sum of homomorphisms with mismatched groups");
    return AbHom(source_, target_, matrix_ + other.matrix_);
}

AbHom AbHom::operator-(const AbHom& other) const {
    if (!(source_ == other.source_) || !(target_ == other.target_))
        throw MalformedInput("difference of homomorphisms with mismatched groups");
    return AbHom(source_, target_, matrix_ - other.matrix_);
}

AbHom AbHom::operator-() const { return AbHom(source_, target_, IntMatrix(matrix_.rows(), matrix_.cols()) - matrix_); }

AbHom AbHom::inverse() const {
    if (!hom_is_iso(*this)) throw PreconditionFailed("NotInvertible", "homomorphism is not an isomorphism");
    IntMatrix inv(source_.rank(), target_.rank());
    for (std::size_t j = 0; j < target_.rank(); ++j) {
        IntVector e(target_.rank());
        e[j] = 1;
        const auto pre = solve_linear(*this, target_.reduce(e));
        if (!pre) throw std::logic_error("isomorphism without preimage");
        for (std::size_t i = 0; i < source_.rank(); ++i) inv(i, j) = (*pre)[i];
    }
    return AbHom(target_, source_, std::move(inv));
}

// ---------------------------------------------------------------- SNF

IntVector SnfResult::diagonal() const {
    const std::size_t k = std::min(d.rows(), d.cols());
    IntVector out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = d(i, i);
    return out;
}

std::size_t SnfResult::rank() const {
    const auto diag = diagonal();
    return static_cast<std::size_t>(std::count_if(diag.begin(), diag.end(), [](const Int& v) { return v != 0; }));
}

namespace {

// Row and column operations applied simultaneously to D and to the
// transformation matrices, keeping u·m·v = d and u·u_inv = v·v_inv = I.
struct SnfWork {
    IntMatrix d, u, v, u_inv, v_inv;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        u_inv.swap_cols(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        v_inv.swap_rows(a, b);
    }
    // row dst += f * row src
    void add_row(std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        d.add_row_multiple(dst, src, f);
        u.add_row_multiple(dst, src, f);
        u_inv.add_col_multiple(src, dst, -f);
    }
    // col dst += f * col src
    void add_col(std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        d.add_col_multiple(dst, src, f);
        v.add_col_multiple(dst, src, f);
        v_inv.add_row_multiple(src, dst, -f);
    }
    void negate_row(std::size_t r) {
        d.negate_row(r);
        u.negate_row(r);
        u_inv.negate_col(r);
    }
};

}  // namespace

SnfResult snf(const IntMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    SnfWork w{m, IntMatrix::identity(rows), IntMatrix::identity(cols), IntMatrix::identity(rows),
              IntMatrix::identity(cols)};
    const std::size_t k = std::min(rows, cols);

    for (std::size_t t = 0; t < k; ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Int best_abs;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                const Int& e = w.d(i, j);
                if (e == 0) continue;
                Int a = abs_int(e);
                if (!best || a < best_abs) {
                    best = {i, j};
                    best_abs = std::move(a);
                }
            }
        if (!best) break;
        w.swap_rows(t, best->first);
        w.swap_cols(t, best->second);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (w.d(i, t) == 0) continue;
                const Int q = w.d(i, t) / w.d(t, t);
                w.add_row(i, t, -q);
                if (w.d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (w.d(t, j) == 0) continue;
                const Int q = w.d(t, j) / w.d(t, t);
                w.add_col(j, t, -q);
                if (w.d(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot survived; promote it.
                std::size_t bi = t, bj = t;
                Int ba = abs_int(w.d(t, t));
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (w.d(i, t) != 0 && abs_int(w.d(i, t)) < ba) {
                        ba = abs_int(w.d(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (w.d(t, j) != 0 && abs_int(w.d(t, j)) < ba) {
                        ba = abs_int(w.d(t, j));
                        bi = t;
                        bj = j;
                    }
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remainder.
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (w.d(i, j) % w.d(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row) break;
            w.add_row(t, *bad_row, 1);
        }
        if (w.d(t, t) < 0) w.negate_row(t);
    }
    return SnfResult{std::move(w.u), std::move(w.d), std::move(w.v), std::move(w.u_inv), std::move(w.v_inv)};
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
    const auto res = snf(m);
    const std::size_t r = res.rank();
    std::vector<IntVector> basis;
    for (std::size_t j = r; j < m.cols(); ++j) basis.push_back(res.v.column(j));
    return basis;
}

// ---------------------------------------------------------------- subgroups

namespace {

// Z^k -> ambient sending e_i to generators[i].
AbHom inclusion_map(const FgAbGroup& ambient, std::span<const IntVector> generators) {
    IntMatrix m(ambient.rank(), generators.size());
    for (std::size_t c = 0; c < generators.size(); ++c) {
        if (generators[c].size() != ambient.rank()) throw MalformedInput("generator has wrong rank");
        for (std::size_t r = 0; r < ambient.rank(); ++r) m(r, c) = generators[c][r];
    }
    return AbHom(FgAbGroup::free(generators.size()), ambient, std::move(m));
}

// [M | diag(target moduli)]: its integer kernel describes f^{-1}(0) on lifts.
IntMatrix augmented(const AbHom& f) { return f.matrix().hconcat(f.target().relation_matrix()); }

}  // namespace

std::optional<Int> Subgroup::order() const {
    const auto total = ambient.order();
    if (!total) return std::nullopt;
    const auto q = quotient_group(ambient, generators);
    return *total / *q.group.order();
}

bool Subgroup::contains(const IntVector& element) const {
    return solve_linear(inclusion_map(ambient, generators), ambient.reduce(element)).has_value();
}

Subgroup hom_kernel(const AbHom& f) {
    const std::size_t n = f.source().rank();
    Subgroup out{f.source(), {}};
    for (const auto& v : integer_kernel(augmented(f))) {
        IntVector a(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
        a = f.source().reduce(std::move(a));
        if (!f.source().is_zero(a)) out.generators.push_back(std::move(a));
    }
    return out;
}

Subgroup hom_image(const AbHom& f) {
    Subgroup out{f.target(), {}};
    for (std::size_t c = 0; c < f.source().rank(); ++c) {
        auto col = f.target().reduce(f.matrix().column(c));
        if (!f.target().is_zero(col)) out.generators.push_back(std::move(col));
    }
    return out;
}

Quotient quotient_group(const FgAbGroup& g, std::span<const IntVector> relations) {
    const std::size_t r = g.rank();
    IntMatrix rel = g.relation_matrix();
    IntMatrix extra(r, relations.size());
    for (std::size_t c = 0; c < relations.size(); ++c) {
        if (relations[c].size() != r) throw MalformedInput("relation has wrong rank");
        for (std::size_t i = 0; i < r; ++i) extra(i, c) = relations[c][i];
    }
    const auto res = snf(rel.hconcat(extra));
    const auto diag = res.diagonal();  // length r, since cols >= rows

    IntVector moduli;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < r; ++i) {
        if (diag[i] == 1) continue;
        moduli.push_back(diag[i]);
        kept.push_back(i);
    }
    FgAbGroup q(moduli);
    IntMatrix proj(kept.size(), r);
    std::vector<IntVector> lifts;
    for (std::size_t k = 0; k < kept.size(); ++k) {
        for (std::size_t j = 0; j < r; ++j) proj(k, j) = res.u(kept[k], j);
        lifts.push_back(g.reduce(res.u_inv.column(kept[k])));
    }
    return Quotient{q, AbHom(g, q, std::move(proj)), std::move(lifts)};
}

std::optional<IntVector> solve_linear(const AbHom& f, const IntVector& target) {
    const auto t = f.target().reduce(target);
    const IntMatrix n = augmented(f);
    const auto res = snf(n);
    const IntVector y = res.u * t;
    const auto diag = res.diagonal();
    IntVector z(n.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const Int di = i < diag.size() ? diag[i] : Int(0);
        if (di == 0) {
            if (y[i] != 0) return std::nullopt;
            continue;
        }
        if (y[i] % di != 0) return std::nullopt;
        z[i] = y[i] / di;
    }
    const IntVector x = res.v * z;
    IntVector a(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(f.source().rank()));
    a = f.source().reduce(std::move(a));
    if (f(a) != t) throw std::logic_error("solve_linear produced a non-solution");
    return a;
}

bool hom_is_iso(const AbHom& f) {
    if (!hom_kernel(f).generators.empty()) return false;
    const auto img = hom_image(f);
    return quotient_group(f.target(), img.generators).group.is_trivial();
}

InvariantFactors invariant_factors(const FgAbGroup& canonical) {
    InvariantFactors out;
    for (const auto& m : canonical.moduli()) {
        if (m == 0)
            ++out.free_rank;
        else
            out.torsion.push_back(m);
    }
    return out;
}

}  // namespace rackext
