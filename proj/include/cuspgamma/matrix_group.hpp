#pragma once

// Dense matrices over a finite field, the groups GL_n and U_n (upper
// unitriangular), canonical representatives for U_n\GL_n, conjugacy-class
// invariants from the rational canonical structure, and the block matrices
// consumed by the gamma-factor sums.

#include "cuspgamma/finite_field.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cuspgamma {

struct BudgetExceeded : std::runtime_error {
    std::size_t required;
    std::size_t allowed;
    BudgetExceeded(const std::string& what, std::size_t req, std::size_t cap)
        : std::runtime_error(what + ": needs " + std::to_string(req) + " elements, budget " +
                             std::to_string(cap)),
          required(req),
          allowed(cap) {}
};

struct Mat {
    int n = 0;
    FieldPtr field;
    std::vector<long> e;  // row-major

    Mat() = default;
    Mat(int size, FieldPtr fld) : n(size), field(std::move(fld)), e(static_cast<std::size_t>(size) * size, 0) {}

    static Mat identity(int size, FieldPtr fld) {
        Mat m(size, std::move(fld));
        for (int i = 0; i < size; ++i) m.at(i, i) = 1;
        return m;
    }

    long& at(int i, int j) { return e[static_cast<std::size_t>(i) * n + j]; }
    long at(int i, int j) const { return e[static_cast<std::size_t>(i) * n + j]; }

    friend bool operator==(const Mat& a, const Mat& b) { return a.n == b.n && a.e == b.e; }

    Mat operator*(const Mat& o) const {
        const FieldSpec& F = *field;
        Mat r(n, field);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                long aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < n; ++j) {
                    long b = o.at(k, j);
                    if (b != 0) r.at(i, j) = F.add(r.at(i, j), F.mul(aik, b));
                }
            }
        return r;
    }

    Mat transpose() const {
        Mat r(n, field);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    long det() const {
        const FieldSpec& F = *field;
        Mat a = *this;
        long d = 1;
        for (int c = 0; c < n; ++c) {
            int piv = -1;
            for (int r = c; r < n; ++r)
                if (a.at(r, c) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            if (piv != c) {
                for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
                d = F.neg(d);
            }
            d = F.mul(d, a.at(c, c));
            long inv = F.inv(a.at(c, c));
            for (int r = c + 1; r < n; ++r) {
                long f = F.mul(a.at(r, c), inv);
                if (f == 0) continue;
                for (int j = c; j < n; ++j) a.at(r, j) = F.sub(a.at(r, j), F.mul(f, a.at(c, j)));
            }
        }
        return d;
    }

    bool invertible() const { return det() != 0; }

    Mat inverse() const {
        const FieldSpec& F = *field;
        Mat a = *this;
        Mat r = identity(n, field);
        for (int c = 0; c < n; ++c) {
            int piv = -1;
            for (int i = c; i < n; ++i)
                if (a.at(i, c) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) throw std::domain_error("matrix not invertible");
            if (piv != c)
                for (int j = 0; j < n; ++j) {
                    std::swap(a.at(piv, j), a.at(c, j));
                    std::swap(r.at(piv, j), r.at(c, j));
                }
            long inv = F.inv(a.at(c, c));
            for (int j = 0; j < n; ++j) {
                a.at(c, j) = F.mul(a.at(c, j), inv);
                r.at(c, j) = F.mul(r.at(c, j), inv);
            }
            for (int i = 0; i < n; ++i) {
                if (i == c) continue;
                long f = a.at(i, c);
                if (f == 0) continue;
                for (int j = 0; j < n; ++j) {
                    a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(c, j)));
                    r.at(i, j) = F.sub(r.at(i, j), F.mul(f, r.at(c, j)));
                }
            }
        }
        return r;
    }

    // sum of the entries directly above the diagonal
    long superdiag_sum() const {
        long s = 0;
        for (int i = 0; i + 1 < n; ++i) s = field->add(s, at(i, i + 1));
        return s;
    }

    bool is_upper_unitriangular() const {
        for (int i = 0; i < n; ++i) {
            if (at(i, i) != 1) return false;
            for (int j = 0; j < i; ++j)
                if (at(i, j) != 0) return false;
        }
        return true;
    }

    std::string encode() const {
        std::string s;
        s.reserve(e.size() * 2);
        for (long v : e) {
            s.push_back(static_cast<char>(v & 0xff));
            s.push_back(static_cast<char>((v >> 8) & 0xff));
        }
        return s;
    }

    static Mat decode(const std::string& s, int n, FieldPtr field) {
        Mat m(n, std::move(field));
        for (std::size_t i = 0; i < m.e.size(); ++i)
            m.e[i] = static_cast<long>(static_cast<unsigned char>(s[2 * i])) |
                     (static_cast<long>(static_cast<unsigned char>(s[2 * i + 1])) << 8);
        return m;
    }
};

// ---- group cardinalities ----

inline std::size_t gl_order(int n, long q) {
    // prod_{i<n} (q^n - q^i)
    std::size_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= static_cast<std::size_t>(q);
    std::size_t total = 1, qi = 1;
    for (int i = 0; i < n; ++i) {
        total *= qn - qi;
        qi *= static_cast<std::size_t>(q);
    }
    return total;
}

inline std::size_t u_order(int n, long q) {
    std::size_t total = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) total *= static_cast<std::size_t>(q);
    return total;
}

// ---- U_n enumeration (cached) ----

inline const std::vector<Mat>& unipotent_group(int n, const FieldPtr& field) {
    static std::mutex mu;
    static std::map<std::tuple<long, int, int>, std::unique_ptr<std::vector<Mat>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(field->p(), field->f(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto out = std::make_unique<std::vector<Mat>>();
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<long> vals(slots.size(), 0);
    const long q = field->q();
    for (;;) {
        Mat u = Mat::identity(n, field);
        for (std::size_t s = 0; s < slots.size(); ++s) u.at(slots[s].first, slots[s].second) = vals[s];
        out->push_back(std::move(u));
        std::size_t i = slots.size();
        while (i-- > 0) {
            if (++vals[i] < q) break;
            vals[i] = 0;
            if (i == 0) {
                it = cache.emplace(key, std::move(out)).first;
                return *it->second;
            }
        }
        if (slots.empty()) {
            it = cache.emplace(key, std::move(out)).first;
            return *it->second;
        }
    }
}

// ---- full group enumeration (cached, budget-guarded) ----

inline std::shared_ptr<const std::vector<Mat>> enumerate_group(int n, const FieldPtr& field,
                                                               std::size_t budget = 2000000) {
    const std::size_t order = gl_order(n, field->q());
    if (order > budget) throw BudgetExceeded("group enumeration", order, budget);

    static std::mutex mu;
    static std::map<std::tuple<long, int, int>, std::shared_ptr<const std::vector<Mat>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(field->p(), field->f(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    auto out = std::make_shared<std::vector<Mat>>();
    out->reserve(order);
    // fill rows in lexicographic order, pruning rank-deficient prefixes
    Mat work(n, field);
    std::vector<std::vector<long>> basis;  // row space so far, in echelon form
    const long q = field->q();
    const FieldSpec& F = *field;

    auto reduce = [&](std::vector<long> v) {
        for (const auto& b : basis) {
            int lead = -1;
            for (int j = 0; j < n; ++j)
                if (b[static_cast<std::size_t>(j)] != 0) {
                    lead = j;
                    break;
                }
            long c = v[static_cast<std::size_t>(lead)];
            if (c != 0) {
                long f = F.mul(c, F.inv(b[static_cast<std::size_t>(lead)]));
                for (int j = 0; j < n; ++j)
                    v[static_cast<std::size_t>(j)] =
                        F.sub(v[static_cast<std::size_t>(j)], F.mul(f, b[static_cast<std::size_t>(j)]));
            }
        }
        return v;
    };

    std::vector<std::vector<std::vector<long>>> saved_basis(static_cast<std::size_t>(n) + 1);
    std::vector<long> row_val(static_cast<std::size_t>(n), 0);

    // iterative depth-first fill
    std::vector<long> counters(static_cast<std::size_t>(n), 0);
    int depth = 0;
    saved_basis[0] = {};
    std::size_t row_count = 1;
    for (int i = 0; i < n; ++i) row_count *= static_cast<std::size_t>(q);
    while (depth >= 0) {
        if (counters[static_cast<std::size_t>(depth)] ==
            static_cast<long>(row_count)) {
            counters[static_cast<std::size_t>(depth)] = 0;
            --depth;
            if (depth >= 0) ++counters[static_cast<std::size_t>(depth)];
            continue;
        }
        long rv = counters[static_cast<std::size_t>(depth)];
        std::vector<long> row(static_cast<std::size_t>(n));
        {
            long x = rv;
            // row index decodes most-significant entry first so the whole
            // matrix enumeration is lexicographic in reading order
            for (int j = n - 1; j >= 0; --j) {
                row[static_cast<std::size_t>(j)] = x % q;
                x /= q;
            }
        }
        basis = saved_basis[static_cast<std::size_t>(depth)];
        std::vector<long> red = reduce(row);
        bool independent = false;
        for (long v : red)
            if (v != 0) independent = true;
        if (!independent) {
            ++counters[static_cast<std::size_t>(depth)];
            continue;
        }
        for (int j = 0; j < n; ++j) work.at(depth, j) = row[static_cast<std::size_t>(j)];
        if (depth == n - 1) {
            out->push_back(work);
            ++counters[static_cast<std::size_t>(depth)];
        } else {
            basis.push_back(red);
            saved_basis[static_cast<std::size_t>(depth) + 1] = basis;
            ++depth;
        }
    }
    if (out->size() != order) throw std::logic_error("group enumeration count mismatch");
    it = cache.emplace(key, std::move(out)).first;
    return it->second;
}

// ---- cosets U_n \ GL_n ----

// Normal form under left multiplication by upper unitriangular matrices.
// Columns are scanned left to right; each pivot is the bottom-most untouched
// row with a nonzero entry and everything above a pivot is cleared.  Only row
// operations of the form row_i += c * row_j with i < j are used.
inline Mat canonical_coset(const Mat& g) {
    const FieldSpec& F = *g.field;
    Mat r = g;
    const int n = r.n;
    std::vector<bool> pivoted(static_cast<std::size_t>(n), false);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = n - 1; i >= 0; --i)
            if (!pivoted[static_cast<std::size_t>(i)] && r.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw std::domain_error("singular matrix has no coset representative");
        long inv = F.inv(r.at(piv, c));
        for (int i = 0; i < piv; ++i) {
            long f = F.mul(r.at(i, c), inv);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) r.at(i, j) = F.sub(r.at(i, j), F.mul(f, r.at(piv, j)));
        }
        pivoted[static_cast<std::size_t>(piv)] = true;
    }
    return r;
}

// The unitriangular factor u with g = u * canonical_coset(g).
inline Mat coset_factor(const Mat& g, const Mat& rep) {
    Mat u = g * rep.inverse();
    if (!u.is_upper_unitriangular()) throw std::logic_error("coset factor not unitriangular");
    return u;
}

inline std::vector<Mat> enumerate_cosets(int n, const FieldPtr& field, std::size_t budget = 2000000) {
    const std::size_t cosets = gl_order(n, field->q()) / u_order(n, field->q());
    if (cosets > budget) throw BudgetExceeded("coset enumeration", cosets, budget);
    auto group = enumerate_group(n, field, budget * u_order(n, field->q()));
    std::vector<Mat> reps;
    reps.reserve(cosets);
    std::unordered_map<std::string, bool> seen;
    for (const Mat& g : *group) {
        Mat r = canonical_coset(g);
        auto [it, fresh] = seen.emplace(r.encode(), true);
        if (fresh) reps.push_back(std::move(r));
    }
    if (reps.size() != cosets) throw std::logic_error("coset count mismatch");
    return reps;
}

// ---- conjugacy invariants ----

struct ClassKey {
    // (irreducible factor coefficients, block partition sorted descending),
    // sorted; a complete conjugacy invariant for GL_n
    std::vector<std::pair<std::vector<long>, std::vector<int>>> parts;

    friend bool operator==(const ClassKey& a, const ClassKey& b) { return a.parts == b.parts; }
    friend bool operator<(const ClassKey& a, const ClassKey& b) { return a.parts < b.parts; }

    std::string to_string() const {
        std::string s;
        for (const auto& [poly, blocks] : parts) {
            if (!s.empty()) s += " ";
            s += "(";
            for (std::size_t i = 0; i < poly.size(); ++i) s += (i ? "," : "") + std::to_string(poly[i]);
            s += ")^{";
            for (std::size_t i = 0; i < blocks.size(); ++i) s += (i ? "," : "") + std::to_string(blocks[i]);
            s += "}";
        }
        return s;
    }
};

// monic irreducibles over the given field with degree 1..dmax, coefficients
// as element indices, low-degree-first
inline const std::vector<std::vector<long>>& irreducible_polys(const FieldPtr& field, int dmax) {
    static std::mutex mu;
    static std::map<std::tuple<long, int, int>, std::unique_ptr<std::vector<std::vector<long>>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(field->p(), field->f(), dmax);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    const FieldSpec& F = *field;
    const long q = F.q();
    auto divides = [&](const std::vector<long>& d, std::vector<long> a) {
        const std::size_t dd = d.size() - 1;
        if (a.size() < d.size()) return false;
        for (std::size_t k = a.size(); k-- >= d.size();) {
            long c = a[k];
            if (c != 0)
                for (std::size_t i = 0; i <= dd; ++i)
                    a[k - dd + i] = F.sub(a[k - dd + i], F.mul(c, d[i]));
        }
        for (std::size_t i = 0; i < dd; ++i)
            if (a[i] != 0) return false;
        return true;
    };

    auto out = std::make_unique<std::vector<std::vector<long>>>();
    for (int d = 1; d <= dmax; ++d) {
        std::vector<long> c(static_cast<std::size_t>(d), 0);
        for (;;) {
            std::vector<long> cand(c.begin(), c.end());
            cand.push_back(1);
            bool irred = true;
            for (const auto& f : *out) {
                if (static_cast<int>(f.size()) - 1 > d / 2) break;
                if (divides(f, cand)) {
                    irred = false;
                    break;
                }
            }
            if (irred) out->push_back(cand);
            int i = d - 1;
            while (i >= 0 && c[static_cast<std::size_t>(i)] == q - 1) c[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++c[static_cast<std::size_t>(i)];
        }
    }
    it = cache.emplace(key, std::move(out)).first;
    return *it->second;
}

namespace detail {

// det(xI - g) by permutation expansion; n <= 4
inline std::vector<long> char_poly(const Mat& g) {
    const FieldSpec& F = *g.field;
    const int n = g.n;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<long> total(static_cast<std::size_t>(n) + 1, 0);
    // iterate over all permutations with parity tracking
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    int parity = 0;
    auto accumulate = [&]() {
        std::vector<long> prod{1};
        for (int i = 0; i < n; ++i) {
            int j = perm[static_cast<std::size_t>(i)];
            // entry (i, j) of xI - g
            std::vector<long> lin;
            if (i == j)
                lin = {F.neg(g.at(i, j)), 1};
            else
                lin = {F.neg(g.at(i, j))};
            std::vector<long> next(prod.size() + lin.size() - 1, 0);
            for (std::size_t a = 0; a < prod.size(); ++a)
                for (std::size_t b = 0; b < lin.size(); ++b)
                    next[a + b] = F.add(next[a + b], F.mul(prod[a], lin[b]));
            prod = std::move(next);
        }
        for (std::size_t k = 0; k < prod.size(); ++k) {
            long v = (parity % 2 == 0) ? prod[k] : F.neg(prod[k]);
            total[k] = F.add(total[k], v);
        }
    };
    // Heap's algorithm
    accumulate();
    int i = 0;
    while (i < n) {
        if (c[static_cast<std::size_t>(i)] < i) {
            if (i % 2 == 0)
                std::swap(perm[0], perm[static_cast<std::size_t>(i)]);
            else
                std::swap(perm[static_cast<std::size_t>(c[static_cast<std::size_t>(i)])],
                          perm[static_cast<std::size_t>(i)]);
            parity ^= 1;
            accumulate();
            ++c[static_cast<std::size_t>(i)];
            i = 0;
        } else {
            c[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
    }
    return total;
}

inline int matrix_rank(Mat a) {
    const FieldSpec& F = *a.field;
    const int n = a.n;
    int rank = 0;
    int row = 0;
    for (int c = 0; c < n && row < n; ++c) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (a.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(row, j));
        long inv = F.inv(a.at(row, c));
        for (int i = row + 1; i < n; ++i) {
            long f = F.mul(a.at(i, c), inv);
            if (f == 0) continue;
            for (int j = c; j < n; ++j) a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(row, j)));
        }
        ++rank;
        ++row;
    }
    return rank;
}

inline Mat eval_poly_at(const std::vector<long>& poly, const Mat& g) {
    Mat acc(g.n, g.field);
    Mat pw = Mat::identity(g.n, g.field);
    const FieldSpec& F = *g.field;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        if (poly[k] != 0)
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    acc.at(i, j) = F.add(acc.at(i, j), F.mul(poly[k], pw.at(i, j)));
        if (k + 1 < poly.size()) pw = pw * g;
    }
    return acc;
}

}  // namespace detail

inline ClassKey class_key(const Mat& g) {
    const FieldSpec& F = *g.field;
    std::vector<long> cp = detail::char_poly(g);
    ClassKey key;
    auto& irreds = irreducible_polys(g.field, g.n);

    auto divide_out = [&](std::vector<long>& a, const std::vector<long>& d) -> bool {
        const std::size_t dd = d.size() - 1;
        if (a.size() < d.size()) return false;
        std::vector<long> work = a;
        std::vector<long> quot(a.size() - dd, 0);
        for (std::size_t k = work.size(); k-- >= d.size();) {
            long c = work[k];
            quot[k - dd] = c;
            if (c != 0)
                for (std::size_t i = 0; i <= dd; ++i) work[k - dd + i] = F.sub(work[k - dd + i], F.mul(c, d[i]));
        }
        for (std::size_t i = 0; i < dd; ++i)
            if (work[i] != 0) return false;
        a = std::move(quot);
        return true;
    };

    for (const auto& P : irreds) {
        if (P.size() > cp.size()) break;
        int mult = 0;
        while (divide_out(cp, P)) ++mult;
        if (mult == 0) continue;
        const int d = static_cast<int>(P.size()) - 1;
        std::vector<int> partition;
        if (mult == 1) {
            partition = {1};
        } else {
            // block sizes from kernel dimensions of P(g)^j
            Mat Pg = detail::eval_poly_at(P, g);
            Mat pw = Pg;
            std::vector<int> kerdim{0};
            for (int j = 1; j <= mult; ++j) {
                kerdim.push_back(g.n - detail::matrix_rank(pw));
                if (j < mult) pw = pw * Pg;
            }
            std::vector<int> blocks_ge(static_cast<std::size_t>(mult) + 2, 0);
            for (int j = 1; j <= mult; ++j)
                blocks_ge[static_cast<std::size_t>(j)] =
                    (kerdim[static_cast<std::size_t>(j)] - kerdim[static_cast<std::size_t>(j - 1)]) / d;
            for (int j = 1; j <= mult; ++j) {
                int exact = blocks_ge[static_cast<std::size_t>(j)] - blocks_ge[static_cast<std::size_t>(j) + 1];
                for (int t = 0; t < exact; ++t) partition.push_back(j);
            }
            std::sort(partition.rbegin(), partition.rend());
            int total = 0;
            for (int b : partition) total += b;
            if (total != mult) throw std::logic_error("block partition mismatch");
        }
        key.parts.emplace_back(P, std::move(partition));
        if (cp.size() == 1) break;
    }
    if (cp.size() != 1) throw std::logic_error("characteristic polynomial not fully factored");
    std::sort(key.parts.begin(), key.parts.end());
    return key;
}

// ---- special matrices for the gamma sums ----

// n x n matrix with first row e_{m+1}, middle rows (0 | 0 | I_{n-m-1}) and
// last m rows (h | 0 | x); requires n > m, h of size m, x of size m x (n-m-1).
inline Mat gamma_block_matrix(int n, const Mat& h, const std::vector<std::vector<long>>& x) {
    const int m = h.n;
    if (n <= m) throw std::invalid_argument("block matrix needs n > m");
    const int w = n - m - 1;
    if (static_cast<int>(x.size()) != m) throw std::invalid_argument("x row count must be m");
    for (const auto& row : x)
        if (static_cast<int>(row.size()) != w) throw std::invalid_argument("x must be m x (n-m-1)");
    Mat r(n, h.field);
    r.at(0, m) = 1;
    for (int i = 0; i < w; ++i) r.at(1 + i, m + 1 + i) = 1;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) r.at(n - m + i, j) = h.at(i, j);
        for (int j = 0; j < w; ++j) r.at(n - m + i, m + 1 + j) = x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return r;
}

// antidiagonal matrix with ones: w_k
inline Mat antidiag_ones(int k, const FieldPtr& field) {
    Mat r(k, field);
    for (int i = 0; i < k; ++i) r.at(i, k - 1 - i) = 1;
    return r;
}

// diag(I_m, w_{n-m})
inline Mat w_block(int n, int m, const FieldPtr& field) {
    Mat r(n, field);
    for (int i = 0; i < m; ++i) r.at(i, i) = 1;
    for (int i = 0; i < n - m; ++i) r.at(m + i, n - 1 - i) = 1;
    return r;
}

// diag(h, I_{n-m}) embedded in size n
inline Mat embed_upper_left(int n, const Mat& h) {
    Mat r = Mat::identity(n, h.field);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) r.at(i, j) = h.at(i, j);
    return r;
}

// ---- standard parabolic data ----

inline std::vector<std::vector<int>> proper_compositions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            if (cur.size() > 1) out.push_back(cur);
            return;
        }
        for (int k = 1; k <= rest; ++k) {
            cur.push_back(k);
            self(self, rest - k);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

// unipotent radical of the standard parabolic with the given block sizes
inline std::vector<Mat> parabolic_radical(const std::vector<int>& composition, const FieldPtr& field) {
    int n = 0;
    for (int b : composition) n += b;
    std::vector<int> block_of(static_cast<std::size_t>(n));
    {
        int idx = 0, blk = 0;
        for (int b : composition) {
            for (int t = 0; t < b; ++t) block_of[static_cast<std::size_t>(idx++)] = blk;
            ++blk;
        }
    }
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (block_of[static_cast<std::size_t>(i)] < block_of[static_cast<std::size_t>(j)])
                slots.emplace_back(i, j);
    std::vector<Mat> out;
    std::vector<long> vals(slots.size(), 0);
    const long q = field->q();
    for (;;) {
        Mat u = Mat::identity(n, field);
        for (std::size_t s = 0; s < slots.size(); ++s) u.at(slots[s].first, slots[s].second) = vals[s];
        out.push_back(std::move(u));
        std::size_t i = slots.size();
        bool done = slots.empty();
        while (i-- > 0) {
            if (++vals[i] < q) break;
            vals[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return out;
}

// ---- class census over the whole group ----

struct GroupCensus {
    int n;
    FieldPtr field;
    std::shared_ptr<const std::vector<Mat>> elements;
    std::unordered_map<std::string, long> index_of;
    std::vector<int> key_id;          // per element
    std::vector<ClassKey> keys;       // distinct, in first-seen order
    std::vector<long> class_size;
    std::vector<Mat> class_rep;

    const ClassKey& key_of(long element_index) const {
        return keys[static_cast<std::size_t>(key_id[static_cast<std::size_t>(element_index)])];
    }

    long lookup(const Mat& m) const {
        auto it = index_of.find(m.encode());
        if (it == index_of.end()) throw std::logic_error("matrix not in group census");
        return it->second;
    }

    static std::shared_ptr<const GroupCensus> get(int n, const FieldPtr& field,
                                                  std::size_t budget = 2000000) {
        static std::mutex mu;
        static std::map<std::tuple<long, int, int>, std::shared_ptr<const GroupCensus>> cache;
        {
            std::lock_guard<std::mutex> lock(mu);
            auto key = std::make_tuple(field->p(), field->f(), n);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
        }
        auto census = std::make_shared<GroupCensus>();
        census->n = n;
        census->field = field;
        census->elements = enumerate_group(n, field, budget);
        const auto& elems = *census->elements;
        census->key_id.resize(elems.size());
        std::map<ClassKey, int> seen;
        census->index_of.reserve(elems.size() * 2);
        for (std::size_t i = 0; i < elems.size(); ++i) {
            census->index_of.emplace(elems[i].encode(), static_cast<long>(i));
            ClassKey k = class_key(elems[i]);
            auto it = seen.find(k);
            int id;
            if (it == seen.end()) {
                id = static_cast<int>(census->keys.size());
                seen.emplace(k, id);
                census->keys.push_back(k);
                census->class_size.push_back(0);
                census->class_rep.push_back(elems[i]);
            } else {
                id = it->second;
            }
            census->key_id[i] = id;
            ++census->class_size[static_cast<std::size_t>(id)];
        }
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(field->p(), field->f(), n);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, std::move(census)).first;
        return it->second;
    }
};

}  // namespace cuspgamma
