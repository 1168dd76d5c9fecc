#include <feec/spaces.hpp>

#include <feec/ratmat.hpp>

#include <map>
#include <mutex>
#include <tuple>

namespace feec {

namespace {

// Combinatorial convention: C(a, 0) = 1 for every a, C(a, b) = 0 for b < 0
// or 0 <= a < b.
long choose(int a, int b)
{
    if (b == 0) return 1;
    if (b < 0 || a < b) return 0;
    return binomial_l(a, b);
}

} // namespace

bool check_admissible(const SequenceType& s)
{
    for (int k = 0; k + 1 < s.degrees(); ++k) {
        int r = s.at(k).order;
        const SpaceTag& next = s.at(k + 1);
        if (!(next == SpaceTag::trimmed(r) || next == SpaceTag::full(r - 1)))
            return false;
    }
    return true;
}

SequenceAssignment uniform_assignment(const Complex& c, Family family, int r)
{
    SequenceAssignment a;
    a.complex = &c;
    a.types.resize(c.dim() + 1);
    for (int s = 0; s <= c.dim(); ++s) {
        SequenceType t;
        for (int k = 0; k <= s; ++k)
            t.tags.push_back(family == Family::Trimmed ? SpaceTag::trimmed(r)
                                                       : SpaceTag::full(r - k));
        a.types[s].assign(c.count(s), t);
    }
    return a;
}

bool check_hierarchy(const SequenceAssignment& a)
{
    const Complex& c = *a.complex;
    for (int t = 1; t <= c.dim(); ++t)
        for (int i = 0; i < c.count(t); ++i) {
            const auto& T = c.simplex(t, i);
            const SequenceType& st = a.at(t, i);
            for (int m = 0; m < t; ++m)
                for (const AltIndex& pos : enumerate_alternators(m + 1, 0, t)) {
                    std::vector<int> verts;
                    for (int p = 0; p < pos.size(); ++p) verts.push_back(T[pos[p]]);
                    const SequenceType& sf = a.at(m, c.index_of(m, verts));
                    for (int k = 0; k <= m; ++k)
                        if (st.at(k) < sf.at(k)) return false;
                }
        }
    return true;
}

bool check_assignment_admissible(const SequenceAssignment& a)
{
    for (const auto& per_dim : a.types)
        for (const auto& t : per_dim)
            if (!check_admissible(t)) return false;
    return true;
}

long dim_full(int n, int k, int r)
{
    if (r < 0 || k < 0 || k > n) return 0;
    return choose(n + r, n) * choose(n, k);
}

long dim_trimmed(int n, int k, int r)
{
    if (r < 1 || k < 0 || k > n) return 0;
    return choose(r + k - 1, k) * choose(n + r, n - k);
}

long dim_ring_full(int n, int k, int r)
{
    if (r < 0 || k < 0 || k > n) return 0;
    return choose(r + k, k) * choose(r - 1, n - k);
}

long dim_ring_full_printed(int n, int k, int r)
{
    if (r < 0 || k < 0 || k > n) return 0;
    return choose(r + 1, n - k) * choose(r + k, k);
}

long dim_ring_trimmed(int n, int k, int r)
{
    if (r < 1 || k < 0 || k > n) return 0;
    return choose(n, k) * choose(r + k - 1, n);
}

long dim_space(int n, int k, SpaceTag tag, Variant variant)
{
    bool full = tag.family == Family::Full;
    int r = tag.order;
    switch (variant) {
    case Variant::Plain:
        return full ? dim_full(n, k, r) : dim_trimmed(n, k, r);
    case Variant::Ring:
        return full ? dim_ring_full(n, k, r) : dim_ring_trimmed(n, k, r);
    case Variant::Underline: {
        long d = dim_space(n, k, tag, Variant::Plain);
        return (k == 0 && d > 0) ? d - 1 : d;
    }
    case Variant::UnderlineRing: {
        long d = dim_space(n, k, tag, Variant::Ring);
        return (k == n && d > 0) ? d - 1 : d;
    }
    }
    return 0;
}

namespace {

// lambda^alpha * w, term by term
LocalForm mono_times(const MultiIndex& alpha, const LocalForm& w)
{
    LocalForm out(w.n(), w.k());
    for (const auto& [key, c] : w.terms()) {
        LocalForm t(w.n(), w.k());
        t.add_term(key.first + alpha, key.second.idx, c);
        out += t;
    }
    return out;
}

std::vector<LocalForm> spanning_set(int n, SpaceTag tag, int k)
{
    std::vector<LocalForm> out;
    int r = tag.order;
    if (tag.family == Family::Full) {
        if (r < 0) return out;
        for (const AltIndex& sigma : enumerate_alternators(k, 0, n))
            for (const MultiIndex& alpha : enumerate_multiindices(r, n)) {
                LocalForm w(n, k);
                w.add_term(alpha, sigma.idx, 1);
                if (!w.is_zero()) out.push_back(std::move(w));
            }
    } else {
        if (r < 1) return out;
        for (const AltIndex& rho : enumerate_alternators(k + 1, 0, n)) {
            LocalForm phi = whitney_form(rho, n);
            for (const MultiIndex& alpha : enumerate_multiindices(r - 1, n))
                out.push_back(mono_times(alpha, phi));
        }
    }
    return out;
}

LocalBasis build_basis(int n, SpaceTag tag, int k, Variant variant)
{
    LocalBasis basis;
    basis.n = n;
    basis.k = k;
    basis.tag = tag;
    basis.variant = variant;
    basis.coord_degree = tag.order;
    if (k < 0 || k > n || tag.order < (tag.family == Family::Trimmed ? 1 : 0))
        return basis;

    const int deg = basis.coord_degree;

    // independent subset of the canonical spanning set
    std::vector<LocalForm> plain;
    SpanBuilder sb(form_coordinate_dim(n, k, deg));
    for (LocalForm& w : spanning_set(n, tag, k))
        if (sb.insert(form_coordinates(w, deg))) plain.push_back(std::move(w));

    if (variant == Variant::Plain) {
        basis.forms = std::move(plain);
        return basis;
    }

    // linear constraints on coefficient vectors over the plain basis
    std::vector<std::vector<Rational>> rows; // each row: one scalar constraint
    auto add_constraints = [&](const std::vector<std::vector<Rational>>& per_element) {
        // per_element[j] = constraint values of plain[j]; transpose into rows
        if (per_element.empty()) return;
        size_t m = per_element.front().size();
        for (size_t r2 = 0; r2 < m; ++r2) {
            std::vector<Rational> row(plain.size());
            for (size_t j = 0; j < plain.size(); ++j) row[j] = per_element[j][r2];
            rows.push_back(std::move(row));
        }
    };

    bool ring_like = variant == Variant::Ring || variant == Variant::UnderlineRing;
    if (ring_like && k <= n - 1) {
        for (int f = 0; f <= n; ++f) {
            std::vector<int> face;
            for (int v = 0; v <= n; ++v)
                if (v != f) face.push_back(v);
            std::vector<std::vector<Rational>> vals;
            for (const LocalForm& w : plain)
                vals.push_back(form_coordinates(trace(w, face), deg));
            add_constraints(vals);
        }
    }
    bool integral_constraint = (variant == Variant::Underline && k == 0) ||
                               (variant == Variant::UnderlineRing && k == n);
    if (integral_constraint) {
        std::vector<Rational> row;
        for (const LocalForm& w : plain) {
            Rational v = 0;
            if (k == 0) {
                for (const auto& [key, c] : w.terms())
                    v += c * integrate_monomial_over_vol(key.first, n);
            } else {
                v = integrate_form_ref(w);
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) {
        basis.forms = std::move(plain);
        return basis;
    }

    RatMat C(static_cast<int>(rows.size()), static_cast<int>(plain.size()));
    for (int i = 0; i < C.rows(); ++i)
        for (int j = 0; j < C.cols(); ++j) C(i, j) = rows[i][j];
    RatMat Nmat = C.nullspace();
    for (int c2 = 0; c2 < Nmat.cols(); ++c2) {
        LocalForm w(n, k);
        for (int j = 0; j < Nmat.rows(); ++j)
            if (Nmat(j, c2) != 0) w += plain[j] * Nmat(j, c2);
        basis.forms.push_back(std::move(w));
    }
    return basis;
}

} // namespace

const LocalBasis& local_basis(int n, SpaceTag tag, int k, Variant variant)
{
    using KeyT = std::tuple<int, int, int, int, int>;
    static std::map<KeyT, LocalBasis> cache;
    static std::mutex mtx;
    KeyT key{n, k, tag.order, int(tag.family), int(variant)};
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build_basis(n, tag, k, variant)).first;
    return it->second;
}

} // namespace feec
