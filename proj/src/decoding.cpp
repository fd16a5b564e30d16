#include "pdc/decoding.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pdc/errors.hpp"

namespace pdc {

int sudan_min_agreement(int d, std::size_t b) {
    const std::uint64_t t = 2ULL * static_cast<std::uint64_t>(d) * b;
    std::uint64_t a = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(t)));
    while (a * a > t) --a;
    while ((a + 1) * (a + 1) <= t) ++a;
    return static_cast<int>(a + 1);
}

std::size_t agreement(const UniPoly& q, const std::vector<Pair>& pairs) {
    std::size_t c = 0;
    for (const auto& p : pairs) c += q.eval(p.x) == p.y;
    return c;
}

namespace {

void dedupe(std::vector<Pair>& pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

void check_sudan(int d, int a, std::size_t b) {
    if (d < 0) throw PreconditionError("degree must be non-negative");
    if (a < sudan_min_agreement(d, b)) throw PreconditionError("agreement must exceed sqrt(2db)");
}

std::vector<UniPoly> finish(const Field* f, std::vector<UniPoly> cands, const std::vector<Pair>& pairs,
                            int d, int a) {
    std::vector<UniPoly> out;
    for (auto& c : cands) {
        if (c.degree() > d) continue;
        if (agreement(c, pairs) < static_cast<std::size_t>(a)) continue;
        out.push_back(UniPoly(f, c.coeffs()));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Nonzero vector in the kernel of rows (each of length n), or empty.
std::vector<Elem> kernel_vector(const Field* f, std::vector<std::vector<Elem>> rows, std::size_t n) {
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        const Elem inv = f->inv(rows[r][c]);
        for (auto& x : rows[r]) x = f->mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Elem t = rows[i][c];
            for (std::size_t k = c; k < n; ++k) rows[i][k] ^= f->mul(t, rows[r][k]);
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = n;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) { free_col = c; break; }
    if (free_col == n) return {};
    std::vector<Elem> v(n, 0);
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = rows[i][free_col];
    return v;
}

using Bivar = std::vector<std::vector<Elem>>;  // q[j][i] is the coefficient of X^i Y^j

void normalize_x(Bivar& q) {
    std::size_t s = SIZE_MAX;
    for (const auto& row : q)
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i]) { s = std::min(s, i); break; }
    if (s == SIZE_MAX || s == 0) return;
    for (auto& row : q) row.erase(row.begin(), row.begin() + std::min(s, row.size()));
}

// Q(X, X Y + gamma).
Bivar substitute(const Field* f, const Bivar& q, Elem gamma) {
    const std::size_t ny = q.size();
    std::size_t nx = 0;
    for (const auto& row : q) nx = std::max(nx, row.size());
    Bivar out(ny, std::vector<Elem>(nx + ny, 0));
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            if ((i & j) != i) continue;  // binomial(j, i) is odd
            const Elem g = f->pow(gamma, j - i);
            if (!g) continue;
            for (std::size_t t = 0; t < q[j].size(); ++t)
                if (q[j][t]) out[i][t + i] ^= f->mul(g, q[j][t]);
        }
    }
    for (auto& row : out)
        while (!row.empty() && row.back() == 0) row.pop_back();
    return out;
}

void roth_ruckenstein(const Field* f, Bivar q, int depth, int d, std::vector<Elem>& prefix,
                      std::vector<UniPoly>& out) {
    normalize_x(q);
    if (depth == d + 1) {
        out.emplace_back(f, prefix);
        return;
    }
    bool any = false;
    for (const auto& row : q) any |= !row.empty();
    if (!any) return;
    // Q(X, 0) == 0 means Y divides Q: the zero tail is a root.
    bool y_divides = q[0].empty();
    if (y_divides) {
        std::vector<Elem> full(prefix);
        full.resize(d + 1, 0);
        out.emplace_back(f, full);
    }
    std::vector<Elem> at0(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) at0[j] = q[j].empty() ? 0 : q[j][0];
    UniPoly r0(f, at0);
    if (r0.degree() < 1) return;
    for (Elem g = 0; g < f->size(); ++g) {
        if (r0.eval(g) != 0) continue;
        prefix.push_back(g);
        roth_ruckenstein(f, substitute(f, q, g), depth + 1, d, prefix, out);
        prefix.pop_back();
    }
}

std::vector<UniPoly> decode_constants(const Field* f, const std::vector<Pair>& pairs, int a) {
    std::map<Elem, std::size_t> count;
    for (const auto& p : pairs) ++count[p.y];
    std::vector<UniPoly> out;
    for (auto [y, c] : count)
        if (c >= static_cast<std::size_t>(a)) out.push_back(UniPoly::constant(f, y));
    return out;
}

}  // namespace

std::vector<UniPoly> sudan_interpolation_decode(const Field* f, std::vector<Pair> pairs, int d, int a) {
    dedupe(pairs);
    const std::size_t b = pairs.size();
    check_sudan(d, a, b);
    if (b == 0 || a > static_cast<int>(b)) return {};
    if (d == 0) return finish(f, decode_constants(f, pairs, a), pairs, d, a);

    const int D = a - 1;
    const int ell = D / d;
    std::vector<int> width(ell + 1);
    std::size_t n = 0;
    for (int j = 0; j <= ell; ++j) {
        width[j] = D - j * d + 1;
        n += width[j];
    }
    if (n <= b) throw ConsistencyError("interpolation system has no free variable");

    std::vector<std::vector<Elem>> rows;
    rows.reserve(b);
    for (const auto& p : pairs) {
        std::vector<Elem> row;
        row.reserve(n);
        Elem yj = 1;
        for (int j = 0; j <= ell; ++j) {
            Elem v = yj;
            for (int k = 0; k < width[j]; ++k) {
                row.push_back(v);
                v = f->mul(v, p.x);
            }
            yj = f->mul(yj, p.y);
        }
        rows.push_back(std::move(row));
    }
    const auto kv = kernel_vector(f, std::move(rows), n);
    if (kv.empty()) throw ConsistencyError("interpolation system has trivial kernel");

    Bivar q(ell + 1);
    std::size_t pos = 0;
    for (int j = 0; j <= ell; ++j) {
        q[j].assign(kv.begin() + pos, kv.begin() + pos + width[j]);
        while (!q[j].empty() && q[j].back() == 0) q[j].pop_back();
        pos += width[j];
    }
    std::vector<UniPoly> cands;
    std::vector<Elem> prefix;
    roth_ruckenstein(f, std::move(q), 0, d, prefix, cands);
    return finish(f, std::move(cands), pairs, d, a);
}

std::vector<UniPoly> sudan_list_decode(const Field* f, std::vector<Pair> pairs, int d, int a) {
    dedupe(pairs);
    const std::size_t b = pairs.size();
    check_sudan(d, a, b);
    if (b == 0 || a > static_cast<int>(b)) return {};
    bool distinct = true;
    for (std::size_t i = 1; i < b; ++i) distinct &= pairs[i].x != pairs[i - 1].x;
    if (distinct && 2 * static_cast<long>(a) - static_cast<long>(b) > d && static_cast<std::size_t>(d) < b) {
        // At most one polynomial can reach agreement a; try the interpolants
        // through disjoint windows of d+1 points.
        std::vector<Elem> xs(d + 1), ys(d + 1);
        for (std::size_t w = 0; (w + 1) * (d + 1) <= b; ++w) {
            for (int i = 0; i <= d; ++i) {
                xs[i] = pairs[w * (d + 1) + i].x;
                ys[i] = pairs[w * (d + 1) + i].y;
            }
            UniPoly g = UniPoly::interpolate(f, xs, ys);
            if (agreement(g, pairs) >= static_cast<std::size_t>(a)) return {g};
        }
    }
    return sudan_interpolation_decode(f, std::move(pairs), d, a);
}

std::vector<UniPoly> brute_force_list_decode(const Field* f, std::vector<Pair> pairs, int d, int a) {
    dedupe(pairs);
    long double total = std::pow(static_cast<long double>(f->size()), d + 1);
    if (total > (1 << 24)) throw PreconditionError("brute-force decoder limited to p^(d+1) <= 2^24");
    const std::uint64_t n = static_cast<std::uint64_t>(total);
    std::vector<UniPoly> out;
    std::vector<Elem> c(d + 1);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        std::uint64_t t = idx;
        for (int i = 0; i <= d; ++i) {
            c[i] = static_cast<Elem>(t % f->size());
            t /= f->size();
        }
        UniPoly q(f, c);
        if (agreement(q, pairs) >= static_cast<std::size_t>(a)) out.push_back(std::move(q));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> hadamard_list_decode(const std::function<int(std::uint32_t)>& h, int ell,
                                                double gamma) {
    if (ell < 0 || ell > 24) throw PreconditionError("Hadamard decoding limited to ell <= 24");
    const std::size_t n = std::size_t{1} << ell;
    std::vector<std::int32_t> w(n);
    for (std::size_t r = 0; r < n; ++r) w[r] = (h(static_cast<std::uint32_t>(r)) & 1) ? -1 : 1;
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t i = 0; i < n; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int32_t u = w[j], v = w[j + len];
                w[j] = u + v;
                w[j + len] = u - v;
            }
    // Agreement count with z is (n + W(z)) / 2.
    const double need = gamma * static_cast<double>(n) - 1e-9;
    std::vector<std::uint32_t> out;
    for (std::size_t z = 0; z < n; ++z)
        if (static_cast<double>(w[z]) >= need) out.push_back(static_cast<std::uint32_t>(z));
    return out;
}

Elem pcorr(const PointOracle& g, const Field* f, int m, int delta, const Point& x, RandomStream& rng) {
    if (3 * static_cast<long>(delta) >= static_cast<long>(f->size()))
        throw PreconditionError("pcorr needs delta < p/3");
    Point y(m);
    do {
        for (auto& c : y) c = static_cast<Elem>(rng.below(f->size()));
    } while (is_zero(y));
    std::vector<Pair> pairs;
    pairs.reserve(f->size() - 1);
    Point z(m);
    for (Elem t = 1; t < f->size(); ++t) {
        for (int j = 0; j < m; ++j) z[j] = x[j] ^ f->mul(t, y[j]);
        pairs.push_back({t, g(z)});
    }
    const std::size_t b = pairs.size();
    const int a = std::max(sudan_min_agreement(delta, b), static_cast<int>((b + delta) / 2 + 1));
    if (a <= static_cast<int>(b)) {
        auto list = sudan_list_decode(f, std::move(pairs), delta, a);
        if (!list.empty()) return list.front().eval(0);
    }
    return g(x);
}

Elem pcorr_majority(const PointOracle& g, const Field* f, int m, int delta, const Point& x, int votes,
                    const RandomStream& seed) {
    std::map<Elem, int> tally;
    for (int k = 0; k < votes; ++k) {
        RandomStream r = seed.split(static_cast<std::uint64_t>(k));
        ++tally[pcorr(g, f, m, delta, x, r)];
    }
    Elem best = 0;
    int best_count = -1;
    for (auto [v, c] : tally)
        if (c > best_count) { best = v; best_count = c; }
    return best;
}

std::uint64_t dlcorr_combine(std::uint64_t i, std::uint64_t j, std::uint64_t order) {
    if (i > j) return i - j;
    if (i == j) return order;
    return order - (j - i);
}

std::optional<std::uint64_t> dlcorr(const IndexOracle& g, const Matrix& a, const Point& u, int samples,
                                    RandomStream& rng) {
    if (is_zero(u)) return std::nullopt;
    const Field* f = a.field();
    const int m = a.dim();
    std::uint64_t order = 1;
    for (int j = 0; j < m; ++j) order *= f->size();
    order -= 1;
    const Point one = ones_vector(m);
    for (int s = 0; s < samples; ++s) {
        const std::uint64_t j = 1 + rng.below(order);
        const Point v = mat_pow_vec(a, j, u);
        const auto i = g(v);
        if (!i) continue;
        if (mat_pow_vec(a, *i, one) != v) continue;
        const std::uint64_t l = dlcorr_combine(*i, j, order);
        if (mat_pow_vec(a, l, one) == u) return l;
    }
    return std::nullopt;
}

int is_close_samples(double delta) {
    if (!(delta > 0 && delta < 1)) throw UsageError("is_close: delta must lie in (0, 1)");
    return static_cast<int>(std::ceil(3.0 * std::log2(1.0 / delta) - 1e-12));
}

bool is_close(const PartialOracle& b, const PointOracle& p, const Field* f, int m, double delta,
              RandomStream& rng) {
    const int n = is_close_samples(delta);
    Point x(m);
    for (int s = 0; s < n; ++s) {
        for (auto& c : x) c = static_cast<Elem>(rng.below(f->size()));
        const auto v = b(x);
        if (!v || *v != p(x)) return false;
    }
    return true;
}

}  // namespace pdc
