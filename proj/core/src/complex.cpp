#include <feec/complex.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace feec {

int Complex::count(int k) const
{
    if (k < 0 || k > n_) return 0;
    return static_cast<int>(simplices_[k].size());
}

int Complex::index_of(int k, const std::vector<int>& verts) const
{
    if (k < 0 || k > n_) return -1;
    auto it = lookup_[k].find(verts);
    return it == lookup_[k].end() ? -1 : it->second;
}

std::vector<int> Complex::free_simplices(int k, bool relative) const
{
    std::vector<int> out;
    for (int i = 0; i < count(k); ++i)
        if (!relative || !in_boundary(k, i)) out.push_back(i);
    return out;
}

SimplexGeometry Complex::geometry(int k, int i) const
{
    std::vector<std::vector<Rational>> pts;
    for (int v : simplices_[k][i]) pts.push_back(coords_[v]);
    return SimplexGeometry::from_vertices(std::move(pts));
}

int Complex::orientation_sign(int top_index) const
{
    if (N_ != n_)
        throw InputError("orientation sign requires ambient dimension == mesh dimension");
    const auto& T = simplices_[n_][top_index];
    // exact determinant of the edge matrix by fraction elimination
    std::vector<std::vector<Rational>> m(n_, std::vector<Rational>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            m[i][j] = coords_[T[i + 1]][j] - coords_[T[0]][j];
    int sign = 1;
    for (int col = 0; col < n_; ++col) {
        int piv = -1;
        for (int r = col; r < n_; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw InputError("degenerate top cell");
        if (piv != col) { std::swap(m[piv], m[col]); sign = -sign; }
        if (m[col][col] < 0) sign = -sign;
        for (int r = col + 1; r < n_; ++r) {
            Rational f = m[r][col] / m[col][col];
            for (int j = col; j < n_; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return sign;
}

std::vector<int> positions_in(const std::vector<int>& sub, const std::vector<int>& super)
{
    std::vector<int> pos;
    size_t j = 0;
    for (int v : sub) {
        while (j < super.size() && super[j] != v) ++j;
        if (j == super.size())
            throw InputError("vertex tuple is not a subsimplex");
        pos.push_back(static_cast<int>(j));
        ++j;
    }
    return pos;
}

namespace {

// All (m+1)-subsets of the (ascending) vertex tuple, ascending.
void for_each_subsimplex(const std::vector<int>& verts, int m,
                         const std::function<void(const std::vector<int>&)>& fn)
{
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(pick.size()) == m + 1) { fn(pick); return; }
        for (int i = start; i < static_cast<int>(verts.size()); ++i) {
            pick.push_back(verts[i]);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
}

} // namespace

Complex build_complex(const std::vector<std::vector<int>>& cells,
                      const std::vector<std::vector<Rational>>& coords,
                      bool boundary_auto,
                      const std::vector<std::vector<int>>& boundary)
{
    if (cells.empty()) throw InputError("mesh has no cells");
    if (coords.empty()) throw InputError("mesh has no vertices");

    const int n = static_cast<int>(cells.front().size()) - 1;
    if (n < 1) throw InputError("cells must have at least two vertices");
    const int N = static_cast<int>(coords.front().size());
    for (const auto& p : coords)
        if (static_cast<int>(p.size()) != N)
            throw InputError("inconsistent vertex coordinate dimension");
    if (N < n) throw InputError("ambient dimension below mesh dimension");

    Complex c;
    c.n_ = n;
    c.N_ = N;
    c.coords_ = coords;
    c.simplices_.resize(n + 1);
    c.lookup_.resize(n + 1);

    std::set<std::vector<int>> seen_cells;
    std::vector<std::vector<int>> sorted_cells;
    for (const auto& cell : cells) {
        if (static_cast<int>(cell.size()) != n + 1)
            throw InputError("inconsistent cell dimension");
        std::vector<int> s = cell;
        std::sort(s.begin(), s.end());
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || s[i] >= static_cast<int>(coords.size()))
                throw InputError("cell references unknown vertex ID");
            if (i > 0 && s[i] == s[i - 1])
                throw InputError("cell has a repeated vertex");
        }
        if (!seen_cells.insert(s).second)
            throw InputError("duplicate top cell");
        sorted_cells.push_back(std::move(s));
    }

    // downward closure; ordered maps give the canonical per-dimension order
    std::vector<std::set<std::vector<int>>> sets(n + 1);
    for (const auto& s : sorted_cells)
        for (int m = 0; m <= n; ++m)
            for_each_subsimplex(s, m, [&](const std::vector<int>& f) { sets[m].insert(f); });

    for (int k = 0; k <= n; ++k) {
        for (const auto& s : sets[k]) {
            c.lookup_[k].emplace(s, static_cast<int>(c.simplices_[k].size()));
            c.simplices_[k].push_back(s);
        }
        c.marked_.emplace_back(c.simplices_[k].size(), 0);
        c.cofaces_.emplace_back(c.simplices_[k].size());
    }

    // geometric sanity: every top cell non-degenerate
    for (int i = 0; i < c.count(n); ++i) {
        try {
            c.geometry(n, i);
        } catch (const std::invalid_argument&) {
            throw InputError("degenerate (zero-volume) top cell");
        }
    }

    for (int t = 0; t < c.count(n); ++t) {
        const auto& T = c.simplices_[n][t];
        for (int m = 0; m <= n; ++m)
            for_each_subsimplex(T, m, [&](const std::vector<int>& f) {
                c.cofaces_[m][c.index_of(m, f)].push_back(t);
            });
    }

    auto mark_closure = [&](int k, const std::vector<int>& verts) {
        for (int m = 0; m <= k; ++m)
            for_each_subsimplex(verts, m, [&](const std::vector<int>& f) {
                c.marked_[m][c.index_of(m, f)] = 1;
            });
    };

    if (boundary_auto) {
        for (int i = 0; i < c.count(n - 1); ++i)
            if (c.cofaces_[n - 1][i].size() == 1)
                mark_closure(n - 1, c.simplices_[n - 1][i]);
    } else {
        for (const auto& b : boundary) {
            std::vector<int> s = b;
            std::sort(s.begin(), s.end());
            int k = static_cast<int>(s.size()) - 1;
            if (k < 0 || k > n || c.index_of(k, s) < 0)
                throw InputError("boundary tuple is not a simplex of the mesh");
            mark_closure(k, s);
        }
    }

    return c;
}

RatMat boundary_matrix(const Complex& c, int k, bool relative)
{
    if (k < 1 || k > c.dim()) throw InputError("boundary degree out of range");
    std::vector<int> cols = c.free_simplices(k, relative);
    std::vector<int> rows = c.free_simplices(k - 1, relative);
    std::vector<int> row_of(c.count(k - 1), -1);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) row_of[rows[r]] = r;

    RatMat B(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
        const auto& S = c.simplex(k, cols[j]);
        for (int p = 0; p <= k; ++p) {
            std::vector<int> F = S;
            F.erase(F.begin() + p);
            int r = row_of[c.index_of(k - 1, F)];
            if (r < 0) continue; // facet in U, quotiented away
            B(r, j) = (p % 2 == 0) ? 1 : -1;
        }
    }
    return B;
}

std::vector<int> betti_numbers(const Complex& c, bool relative)
{
    const int n = c.dim();
    std::vector<int> betti(n + 1);
    std::vector<int> rank(n + 2, 0); // rank of boundary_k, k = 0..n+1
    for (int k = 1; k <= n; ++k) rank[k] = boundary_matrix(c, k, relative).rank();
    for (int k = 0; k <= n; ++k) {
        int nk = static_cast<int>(c.free_simplices(k, relative).size());
        betti[k] = nk - rank[k] - rank[k + 1];
    }
    return betti;
}

} // namespace feec
