#include <feec/ratmat.hpp>

#include <stdexcept>

namespace feec {

namespace {

Rational factorial_impl(int n)
{
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

Rational factorial(int n)
{
    if (n < 0) throw std::invalid_argument("factorial of negative");
    return factorial_impl(n);
}

Rational binomial(int n, int k)
{
    if (k < 0 || k > n || n < 0) return 0;
    Rational r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

long binomial_l(int n, int k)
{
    Rational b = binomial(n, k);
    return static_cast<long>(b.get_num().get_si());
}

Rational rat_parse(const std::string& s)
{
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational q(s, 10);
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational q(s, 10);
        q.canonicalize();
        return q;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    int frac = static_cast<int>(s.size() - dot - 1);
    Rational num(digits, 10);
    Rational den = 1;
    for (int i = 0; i < frac; ++i) den *= 10;
    Rational q = num / den;
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rational& q)
{
    return q.get_str();
}

RatMat RatMat::identity(int n)
{
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMat RatMat::transpose() const
{
    RatMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMat RatMat::operator*(const RatMat& o) const
{
    if (cols_ != o.rows_) throw std::invalid_argument("RatMat: shape mismatch");
    RatMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int l = 0; l < cols_; ++l) {
            const Rational& aij = (*this)(i, l);
            if (aij == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (o(l, j) != 0) r(i, j) += aij * o(l, j);
        }
    return r;
}

RatMat RatMat::operator-(const RatMat& o) const
{
    RatMat r = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) -= o(i, j);
    return r;
}

bool RatMat::is_zero() const
{
    for (const auto& q : a_)
        if (q != 0) return false;
    return true;
}

namespace {

// Row-reduced copy; returns pivot column per eliminated row.
std::vector<int> rref(RatMat& m)
{
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(p, j));
        Rational inv = 1 / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

int RatMat::rank() const
{
    RatMat m = *this;
    return static_cast<int>(rref(m).size());
}

RatMat RatMat::nullspace() const
{
    RatMat m = *this;
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    int nul = cols_ - static_cast<int>(pivots.size());
    RatMat ns(cols_, nul);
    int col = 0;
    for (int f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        ns(f, col) = 1;
        for (size_t pr = 0; pr < pivots.size(); ++pr)
            ns(pivots[pr], col) = -m(static_cast<int>(pr), f);
        ++col;
    }
    return ns;
}

std::optional<std::vector<Rational>> RatMat::solve(const std::vector<Rational>& b) const
{
    RatMat aug(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, cols_) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    // Inconsistent iff a pivot lands in the augmented column.
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<Rational> x(cols_, Rational(0));
    for (size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug(static_cast<int>(pr), cols_);
    return x;
}

std::vector<int> RatMat::independent_columns() const
{
    RatMat m = *this;
    return rref(m);
}

Eigen::MatrixXd RatMat::to_double() const
{
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
    return m;
}

bool SpanBuilder::insert(const std::vector<Rational>& v)
{
    std::vector<Rational> w = v;
    std::vector<Rational> combo(accepted_.size() + 1, Rational(0));
    combo.back() = 1; // coefficient of the candidate itself
    for (const Row& r : rows_) {
        if (w[r.pivot] == 0) continue;
        Rational f = w[r.pivot];
        for (int j = 0; j < dim_; ++j) w[j] -= f * r.v[j];
        for (size_t j = 0; j < r.combo.size(); ++j) combo[j] -= f * r.combo[j];
    }
    int pivot = -1;
    for (int j = 0; j < dim_; ++j)
        if (w[j] != 0) { pivot = j; break; }
    if (pivot < 0) return false;
    Rational inv = 1 / w[pivot];
    for (int j = 0; j < dim_; ++j) w[j] *= inv;
    for (auto& c : combo) c *= inv;
    accepted_.push_back(v);
    combo.resize(accepted_.size());
    rows_.push_back({std::move(w), std::move(combo), pivot});
    return true;
}

std::optional<std::vector<Rational>> SpanBuilder::coordinates(const std::vector<Rational>& v) const
{
    std::vector<Rational> w = v;
    std::vector<Rational> coords(accepted_.size(), Rational(0));
    for (const Row& r : rows_) {
        if (w[r.pivot] == 0) continue;
        Rational f = w[r.pivot];
        for (int j = 0; j < dim_; ++j) w[j] -= f * r.v[j];
        for (size_t j = 0; j < r.combo.size(); ++j) coords[j] += f * r.combo[j];
    }
    for (int j = 0; j < dim_; ++j)
        if (w[j] != 0) return std::nullopt;
    return coords;
}

} // namespace feec
