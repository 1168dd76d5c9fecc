#include <feec/multiindex.hpp>

#include <numeric>

namespace feec {

int MultiIndex::degree() const
{
    return std::accumulate(e.begin(), e.end(), 0);
}

MultiIndex MultiIndex::plus(int i) const
{
    MultiIndex r = *this;
    r.e[i] += 1;
    return r;
}

MultiIndex MultiIndex::minus(int i) const
{
    MultiIndex r = *this;
    r.e[i] -= 1;
    return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const
{
    MultiIndex r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
}

static void enumerate_rec(int r, int pos, int n, MultiIndex& cur, std::vector<MultiIndex>& out)
{
    if (pos == n) {
        cur.e[pos] = r;
        out.push_back(cur);
        return;
    }
    for (int v = r; v >= 0; --v) {
        cur.e[pos] = v;
        enumerate_rec(r - v, pos + 1, n, cur, out);
    }
    cur.e[pos] = 0;
}

std::vector<MultiIndex> enumerate_multiindices(int r, int n)
{
    std::vector<MultiIndex> out;
    if (r < 0 || n < 0) return out;
    MultiIndex cur(n);
    enumerate_rec(r, 0, n, cur, out);
    return out;
}

bool AltIndex::contains(int j) const
{
    for (int v : idx)
        if (v == j) return true;
    return false;
}

AltIndex AltIndex::without(int i) const
{
    AltIndex r = *this;
    r.idx.erase(r.idx.begin() + i);
    return r;
}

static void alt_rec(int k, int lo, int hi, AltIndex& cur, std::vector<AltIndex>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (int v = lo; v <= hi; ++v) {
        cur.idx.push_back(v);
        alt_rec(k, v + 1, hi, cur, out);
        cur.idx.pop_back();
    }
}

std::vector<AltIndex> enumerate_alternators(int k, int lo, int hi)
{
    std::vector<AltIndex> out;
    if (k < 0) return out;
    AltIndex cur;
    alt_rec(k, lo, hi, cur, out);
    return out;
}

} // namespace feec
