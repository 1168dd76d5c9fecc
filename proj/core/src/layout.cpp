#include <feec/layout.hpp>

#include <sstream>

namespace feec {

namespace {

std::string fnv1a_hex(const std::string& s)
{
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::vector<int> face_positions(const AltIndex& pos)
{
    return pos.idx;
}

} // namespace

DofLayout make_layout(const Complex& c, const SequenceAssignment& a, int k,
                      bool relative)
{
    if (k < 0 || k > c.dim()) throw InputError("form degree out of range");
    if (!check_assignment_admissible(a))
        throw InputError("sequence assignment is not admissible");
    if (!check_hierarchy(a))
        throw InputError("sequence assignment violates the hierarchy condition");

    DofLayout L;
    L.complex = &c;
    L.assignment = a;
    L.k = k;
    L.relative = relative;

    L.whitney = c.free_simplices(k, relative);
    L.whitney_pos.assign(c.count(k), -1);
    for (int s = 0; s < static_cast<int>(L.whitney.size()); ++s)
        L.whitney_pos[L.whitney[s]] = s;
    L.total = static_cast<int>(L.whitney.size());

    L.block_of.resize(c.dim() + 1);
    std::ostringstream desc;
    desc << "k=" << k << ";rel=" << relative << ";n=" << c.dim() << ";w=";
    for (int i : L.whitney) desc << i << ",";
    for (int m = 0; m <= c.dim(); ++m) {
        L.block_of[m].assign(c.count(m), -1);
        if (m < k) continue;
        for (int i : c.free_simplices(m, relative)) {
            DofLayout::Block b;
            b.sdim = m;
            b.index = i;
            b.tag = a.tag(m, i, k);
            b.offset = L.total;
            b.size = local_basis(m, b.tag, k, Variant::UnderlineRing).dim();
            L.block_of[m][i] = static_cast<int>(L.blocks.size());
            L.total += b.size;
            desc << "|F" << m << ":" << i << ":"
                 << (b.tag.family == Family::Full ? "f" : "t") << b.tag.order
                 << ":" << b.size;
            L.blocks.push_back(b);
        }
    }
    L.hash = fnv1a_hex(desc.str());
    return L;
}

GlobalForm zero_form(const DofLayout& layout)
{
    GlobalForm g;
    g.layout = &layout;
    g.coeff.assign(layout.total, Rational(0));
    return g;
}

LocalForm localize(const GlobalForm& g, int top_cell)
{
    const DofLayout& L = *g.layout;
    const Complex& c = *L.complex;
    const int n = c.dim(), k = L.k;
    const auto& T = c.simplex(n, top_cell);

    LocalForm out(n, k);
    for (int m = k; m <= n; ++m) {
        for (const AltIndex& pos : enumerate_alternators(m + 1, 0, n)) {
            std::vector<int> verts;
            for (int p = 0; p < pos.size(); ++p) verts.push_back(T[pos[p]]);
            int idx = c.index_of(m, verts);
            if (m == k) {
                int slot = L.whitney_pos[idx];
                if (slot >= 0 && g.coeff[slot] != 0)
                    out += whitney_form(AltIndex(face_positions(pos)), n) * g.coeff[slot];
            }
            int bid = L.block_of[m][idx];
            if (bid < 0) continue;
            const auto& b = L.blocks[bid];
            if (b.size == 0) continue;
            const LocalBasis& basis = local_basis(m, b.tag, k, Variant::UnderlineRing);
            LocalForm w(m, k);
            bool any = false;
            for (int j = 0; j < b.size; ++j)
                if (g.coeff[b.offset + j] != 0) {
                    w += basis.forms[j] * g.coeff[b.offset + j];
                    any = true;
                }
            if (any) out += ext_form(w, b.tag, face_positions(pos), n);
        }
    }
    return out;
}

GlobalForm geometric_decompose(const std::vector<LocalForm>& per_cell,
                               const DofLayout& layout)
{
    const Complex& c = *layout.complex;
    const int n = c.dim(), k = layout.k;
    if (static_cast<int>(per_cell.size()) != c.count(n))
        throw InputError("expected one local form per top cell");

    std::vector<LocalForm> res;
    for (int t = 0; t < c.count(n); ++t) {
        if (!per_cell[t].is_zero() && (per_cell[t].n() != n || per_cell[t].k() != k))
            throw InputError("local form has wrong dimension or degree");
        LocalForm w = per_cell[t];
        res.push_back(w.is_zero() ? LocalForm(n, k) : w);
    }

    GlobalForm g = zero_form(layout);

    // consistent trace of the current residual on simplex (m, idx)
    auto residual_trace = [&](int m, int idx) {
        const auto& star = c.star_top(m, idx);
        const auto& F = c.simplex(m, idx);
        LocalForm tr;
        bool first = true;
        for (int t : star) {
            LocalForm cur = trace(res[t], positions_in(F, c.simplex(n, t)));
            if (first) {
                tr = cur;
                first = false;
            } else if (!tr.same_form(cur)) {
                throw InputError("trace mismatch between cells sharing a face");
            }
        }
        return tr;
    };

    // Whitney part: c_F = k! int_F tr_F omega
    std::vector<Rational> cf(c.count(k), Rational(0));
    for (int idx = 0; idx < c.count(k); ++idx) {
        LocalForm tr = residual_trace(k, idx);
        cf[idx] = factorial(k) * integrate_form_ref(tr);
        int slot = layout.whitney_pos[idx];
        if (slot < 0) {
            if (cf[idx] != 0)
                throw InputError("nonzero boundary trace in a relative space");
        } else {
            g.coeff[slot] = cf[idx];
        }
    }
    for (int t = 0; t < c.count(n); ++t) {
        const auto& T = c.simplex(n, t);
        for (const AltIndex& pos : enumerate_alternators(k + 1, 0, n)) {
            std::vector<int> verts;
            for (int p = 0; p < pos.size(); ++p) verts.push_back(T[pos[p]]);
            const Rational& cc = cf[c.index_of(k, verts)];
            if (cc != 0) res[t] -= whitney_form(pos, n) * cc;
        }
    }

    // interior parts, by increasing face dimension
    for (int m = k; m <= n; ++m)
        for (int idx = 0; idx < c.count(m); ++idx) {
            LocalForm w = residual_trace(m, idx);
            int bid = layout.block_of[m][idx];
            if (bid < 0) {
                if (!w.same_form(LocalForm::zero(m, k)))
                    throw InputError("nonzero boundary trace in a relative space");
                continue;
            }
            const auto& b = layout.blocks[bid];
            if (w.same_form(LocalForm::zero(m, k))) continue;
            const LocalBasis& basis = local_basis(m, b.tag, k, Variant::UnderlineRing);
            if (basis.dim() == 0)
                throw InputError("interior component outside the assigned local space");
            SpanBuilder sb(form_coordinate_dim(m, k, basis.coord_degree));
            for (const LocalForm& e : basis.forms)
                sb.insert(form_coordinates(e, basis.coord_degree));
            if (w.max_degree() > basis.coord_degree)
                throw InputError("interior component outside the assigned local space");
            auto coords = sb.coordinates(form_coordinates(w, basis.coord_degree));
            if (!coords)
                throw InputError("interior component outside the assigned local space");
            for (int j = 0; j < b.size; ++j) g.coeff[b.offset + j] = (*coords)[j];
            const auto& F = c.simplex(m, idx);
            for (int t : c.star_top(m, idx))
                res[t] -= ext_form(w, b.tag, positions_in(F, c.simplex(n, t)), n);
        }

    for (int t = 0; t < c.count(n); ++t)
        if (!res[t].same_form(LocalForm(n, k)))
            throw InputError("decomposition residual is nonzero");

    return g;
}

GlobalForm global_extension(const DofLayout& layout, int sdim, int index,
                            const LocalForm& w)
{
    if (sdim < 0 || sdim > layout.complex->dim() ||
        index < 0 || index >= layout.complex->count(sdim))
        throw InputError("no such simplex");
    GlobalForm g = zero_form(layout);
    if (w.is_zero()) return g;
    int bid = layout.block_of[sdim][index];
    if (bid < 0) throw InputError("simplex carries no interior block");
    const auto& b = layout.blocks[bid];
    const LocalBasis& basis = local_basis(sdim, b.tag, layout.k, Variant::UnderlineRing);
    SpanBuilder sb(form_coordinate_dim(sdim, layout.k, basis.coord_degree));
    for (const LocalForm& e : basis.forms)
        sb.insert(form_coordinates(e, basis.coord_degree));
    if (w.max_degree() > basis.coord_degree)
        throw InputError("form outside the underline-ring space");
    auto coords = sb.coordinates(form_coordinates(w, basis.coord_degree));
    if (!coords) throw InputError("form outside the underline-ring space");
    for (int j = 0; j < b.size; ++j) g.coeff[b.offset + j] = (*coords)[j];
    return g;
}

RatMat assemble_global_d(const DofLayout& layout_k, const DofLayout& layout_k1)
{
    const Complex& c = *layout_k.complex;
    if (layout_k1.complex != &c || layout_k1.k != layout_k.k + 1 ||
        layout_k1.relative != layout_k.relative)
        throw InputError("layouts are not consecutive degrees of one assignment");

    const int n = c.dim();
    RatMat D(layout_k1.total, layout_k.total);
    GlobalForm unit = zero_form(layout_k);
    for (int j = 0; j < layout_k.total; ++j) {
        unit.coeff[j] = 1;
        std::vector<LocalForm> dw;
        for (int t = 0; t < c.count(n); ++t)
            dw.push_back(exterior_derivative(localize(unit, t)));
        GlobalForm col = geometric_decompose(dw, layout_k1);
        for (int i = 0; i < layout_k1.total; ++i) D(i, j) = col.coeff[i];
        unit.coeff[j] = 0;
    }
    return D;
}

} // namespace feec
