#pragma once

// Finite fields F_q = F_{p^f} with deterministic construction: the modulus is
// the lexicographically smallest monic irreducible (coefficients compared
// low-degree-first), the generator is the first element in the same ordering
// with full multiplicative order.  Elements are indices 0..q-1 with base-p
// digits as polynomial coefficients.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cuspgamma {

namespace detail {

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

class FieldSpec {
public:
    static std::shared_ptr<const FieldSpec> build(long p, int f) {
        if (!detail::is_prime_long(p)) throw std::invalid_argument("characteristic must be prime");
        if (f < 1) throw std::invalid_argument("extension degree must be >= 1");
        static std::mutex mu;
        static std::map<std::pair<long, int>, std::shared_ptr<const FieldSpec>> registry;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(p, f);
        auto it = registry.find(key);
        if (it == registry.end())
            it = registry.emplace(key, std::shared_ptr<const FieldSpec>(new FieldSpec(p, f))).first;
        return it->second;
    }

    long p() const { return p_; }
    int f() const { return f_; }
    long q() const { return q_; }
    const std::vector<long>& modulus() const { return modulus_; }  // length f+1, monic
    long generator() const { return generator_; }

    long zero() const { return 0; }
    long one() const { return 1; }
    long scalar(long c) const {
        c %= p_;
        if (c < 0) c += p_;
        return c;
    }

    long add(long a, long b) const {
        if (add_table_.empty()) return add_slow(a, b);
        return add_table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) +
                          static_cast<std::size_t>(b)];
    }
    long neg(long a) const { return neg_table_[static_cast<std::size_t>(a)]; }
    long sub(long a, long b) const { return add(a, neg(b)); }

    long mul(long a, long b) const {
        if (a == 0 || b == 0) return 0;
        return exp_table_[static_cast<std::size_t>(dlog_table_[static_cast<std::size_t>(a)] +
                                                   dlog_table_[static_cast<std::size_t>(b)])];
    }

    long inv(long a) const {
        if (a == 0) throw std::domain_error("inverse of zero field element");
        long d = dlog_table_[static_cast<std::size_t>(a)];
        return exp_table_[static_cast<std::size_t>((q_ - 1 - d) % (q_ - 1))];
    }

    long pow(long a, long e) const {
        if (a == 0) {
            if (e < 0) throw std::domain_error("negative power of zero");
            return e == 0 ? 1 : 0;
        }
        long d = dlog_table_[static_cast<std::size_t>(a)];
        long m = q_ - 1;
        long ee = ((e % m) * (d % m)) % m;
        if (ee < 0) ee += m;
        return exp_table_[static_cast<std::size_t>(ee)];
    }

    // discrete log base the fixed generator; rejects 0
    long dlog(long a) const {
        if (a == 0) throw std::domain_error("discrete log of zero");
        return dlog_table_[static_cast<std::size_t>(a)];
    }
    long gen_pow(long e) const {
        long m = q_ - 1;
        e %= m;
        if (e < 0) e += m;
        return exp_table_[static_cast<std::size_t>(e)];
    }

    long frobenius(long a) const { return pow(a, p_); }

    // absolute trace to the prime field, returned as an integer in [0, p)
    long trace_to_prime(long a) const { return trace_table_[static_cast<std::size_t>(a)]; }

    std::vector<long> digits(long a) const {
        std::vector<long> d(static_cast<std::size_t>(f_));
        for (int i = 0; i < f_; ++i) {
            d[static_cast<std::size_t>(i)] = a % p_;
            a /= p_;
        }
        return d;
    }
    long from_digits(const std::vector<long>& d) const {
        long a = 0;
        for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + (d[i] % p_ + p_) % p_;
        return a;
    }

    // low-degree-first coefficient comparison; ties broken never (total order)
    bool tuple_less(long a, long b) const {
        auto da = digits(a), db = digits(b);
        return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
    }

    // all q elements sorted by the coefficient-tuple order
    std::vector<long> elements_in_tuple_order() const {
        std::vector<long> v(static_cast<std::size_t>(q_));
        std::iota(v.begin(), v.end(), 0);
        std::sort(v.begin(), v.end(), [this](long a, long b) { return tuple_less(a, b); });
        return v;
    }

    std::string describe() const {
        std::string s = "F_" + std::to_string(q_) + " (p=" + std::to_string(p_) +
                        ", f=" + std::to_string(f_) + ", modulus=[";
        for (std::size_t i = 0; i < modulus_.size(); ++i)
            s += (i ? "," : "") + std::to_string(modulus_[i]);
        return s + "])";
    }

private:
    FieldSpec(long p, int f) : p_(p), f_(f) {
        q_ = 1;
        for (int i = 0; i < f; ++i) {
            q_ *= p;
            if (q_ > 2000000) throw std::invalid_argument("field too large");
        }
        modulus_ = smallest_irreducible(p, f);
        build_tables();
    }

    // ---- polynomial arithmetic over F_p used during construction ----
    using Poly = std::vector<long>;  // low-degree-first, entries in [0, p)

    static Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, long p) {
        Poly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
        // reduce modulo the monic polynomial `mod`
        const std::size_t dm = mod.size() - 1;
        for (std::size_t k = r.size(); k-- > dm;) {
            long c = r[k];
            if (c == 0) continue;
            r[k] = 0;
            for (std::size_t i = 0; i < dm; ++i) r[k - dm + i] = ((r[k - dm + i] - c * mod[i]) % p + p) % p;
        }
        r.resize(dm);
        return r;
    }

    static bool poly_divides(const Poly& d, Poly a, long p) {
        // monic divisor
        const std::size_t dd = d.size() - 1;
        if (a.size() < d.size()) return false;
        for (std::size_t k = a.size(); k-- >= d.size();) {
            long c = a[k];
            if (c != 0)
                for (std::size_t i = 0; i <= dd; ++i) a[k - dd + i] = ((a[k - dd + i] - c * d[i]) % p + p) % p;
        }
        for (std::size_t i = 0; i < dd; ++i)
            if (a[i] != 0) return false;
        return true;
    }

    static std::vector<Poly> irreducibles_over_prime(long p, int dmax) {
        std::vector<Poly> out;  // all degrees 1..dmax, each monic
        for (int d = 1; d <= dmax; ++d) {
            std::vector<long> c(static_cast<std::size_t>(d), 0);
            for (;;) {
                Poly cand(c.begin(), c.end());
                cand.push_back(1);
                bool irred = true;
                // `out` is grouped by increasing degree by construction
                for (const auto& f : out) {
                    if (static_cast<int>(f.size()) - 1 > d / 2) break;
                    if (poly_divides(f, cand, p)) {
                        irred = false;
                        break;
                    }
                }
                if (irred) out.push_back(cand);
                // odometer in low-first lex order: last coordinate fastest
                int i = d - 1;
                while (i >= 0 && c[static_cast<std::size_t>(i)] == p - 1) c[static_cast<std::size_t>(i--)] = 0;
                if (i < 0) break;
                ++c[static_cast<std::size_t>(i)];
            }
        }
        return out;
    }

    static Poly smallest_irreducible(long p, int f) {
        // enumerate in low-first lex order (c_0 most significant)
        std::vector<Poly> lower = irreducibles_over_prime(p, f / 2);
        std::vector<long> c(static_cast<std::size_t>(f), 0);
        for (;;) {
            Poly cand(c.begin(), c.end());
            cand.push_back(1);
            bool irred = f == 1 || cand[0] != 0;
            if (irred) {
                for (const auto& d : lower) {
                    if (poly_divides(d, cand, p)) {
                        irred = false;
                        break;
                    }
                }
            }
            if (irred) return cand;
            int i = f - 1;
            while (i >= 0 && c[static_cast<std::size_t>(i)] == p - 1) c[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) throw std::logic_error("no irreducible polynomial found");
            ++c[static_cast<std::size_t>(i)];
        }
    }

    long idx_of_poly(const Poly& a) const {
        long v = 0;
        for (std::size_t i = a.size(); i-- > 0;) v = v * p_ + a[i];
        return v;
    }
    Poly poly_of_idx(long a) const {
        Poly r(static_cast<std::size_t>(f_));
        for (int i = 0; i < f_; ++i) {
            r[static_cast<std::size_t>(i)] = a % p_;
            a /= p_;
        }
        return r;
    }

    long add_slow(long a, long b) const {
        long r = 0, base = 1;
        for (int i = 0; i < f_; ++i) {
            r += ((a % p_ + b % p_) % p_) * base;
            a /= p_;
            b /= p_;
            base *= p_;
        }
        return r;
    }

    void build_tables() {
        neg_table_.resize(static_cast<std::size_t>(q_));
        for (long a = 0; a < q_; ++a) {
            long r = 0, base = 1, x = a;
            for (int i = 0; i < f_; ++i) {
                r += ((p_ - x % p_) % p_) * base;
                x /= p_;
                base *= p_;
            }
            neg_table_[static_cast<std::size_t>(a)] = r;
        }
        if (q_ <= 512) {
            add_table_.resize(static_cast<std::size_t>(q_) * static_cast<std::size_t>(q_));
            for (long a = 0; a < q_; ++a)
                for (long b = 0; b < q_; ++b)
                    add_table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) +
                               static_cast<std::size_t>(b)] = add_slow(a, b);
        }

        // generator: first element in tuple order with multiplicative order q-1
        auto order_is_full = [this](long a) {
            if (a == 0) return false;
            Poly pa = poly_of_idx(a);
            for (long ell : detail::prime_factors(q_ - 1)) {
                Poly acc{1};
                acc.resize(static_cast<std::size_t>(f_), 0);
                Poly base = pa;
                long e = (q_ - 1) / ell;
                while (e > 0) {
                    if (e & 1) acc = poly_mul_mod(acc, base, modulus_, p_);
                    base = poly_mul_mod(base, base, modulus_, p_);
                    e >>= 1;
                }
                if (idx_of_poly(acc) == 1) return false;
            }
            return true;
        };
        generator_ = -1;
        for (long a : elements_in_tuple_order()) {
            if (order_is_full(a)) {
                generator_ = a;
                break;
            }
        }
        if (generator_ < 0) throw std::logic_error("no multiplicative generator found");

        exp_table_.resize(2 * static_cast<std::size_t>(q_ - 1));
        dlog_table_.assign(static_cast<std::size_t>(q_), -1);
        Poly acc{1};
        acc.resize(static_cast<std::size_t>(f_), 0);
        Poly g = poly_of_idx(generator_);
        for (long e = 0; e < q_ - 1; ++e) {
            long idx = idx_of_poly(acc);
            exp_table_[static_cast<std::size_t>(e)] = idx;
            exp_table_[static_cast<std::size_t>(e + q_ - 1)] = idx;
            if (dlog_table_[static_cast<std::size_t>(idx)] != -1)
                throw std::logic_error("generator order defect");
            dlog_table_[static_cast<std::size_t>(idx)] = e;
            acc = poly_mul_mod(acc, g, modulus_, p_);
        }
        if (idx_of_poly(acc) != 1) throw std::logic_error("generator does not close the cycle");

        trace_table_.resize(static_cast<std::size_t>(q_));
        for (long a = 0; a < q_; ++a) {
            long s = 0, x = a;
            for (int i = 0; i < f_; ++i) {
                s = add(s, x);
                x = pow_raw(x, p_);
            }
            if (s >= p_) throw std::logic_error("trace not in the prime field");
            trace_table_[static_cast<std::size_t>(a)] = s;
        }
    }

    long pow_raw(long a, long e) const {
        // used before dlog is ready for a; plain square-and-multiply
        Poly acc{1};
        acc.resize(static_cast<std::size_t>(f_), 0);
        Poly base = poly_of_idx(a);
        while (e > 0) {
            if (e & 1) acc = poly_mul_mod(acc, base, modulus_, p_);
            base = poly_mul_mod(base, base, modulus_, p_);
            e >>= 1;
        }
        return idx_of_poly(acc);
    }

    long p_;
    int f_;
    long q_;
    std::vector<long> modulus_;
    long generator_;
    std::vector<long> add_table_, neg_table_, exp_table_, dlog_table_, trace_table_;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// F_q embedded in F_{q^d}.  The image of the base generator is h^(t*k) with
// t = (q^d-1)/(q-1) and k the smallest choice producing a field embedding
// (checked via equality of minimal polynomials over the prime field).
class FieldExtension {
public:
    FieldExtension(FieldPtr base, int d) : base_(std::move(base)), d_(d) {
        if (d < 1) throw std::invalid_argument("extension degree must be >= 1");
        top_ = FieldSpec::build(base_->p(), base_->f() * d);
        const long q = base_->q();
        const long Q = top_->q();
        const long t = (Q - 1) / (q - 1);
        std::vector<long> want = minimal_poly_over_prime(*base_, base_->generator());
        long image = -1;
        for (long k = 1; k < q; ++k) {
            if (std::gcd(k, q - 1) != 1) continue;
            long cand = top_->gen_pow(t * k);
            if (minimal_poly_over_prime(*top_, cand) == want) {
                image = cand;
                break;
            }
        }
        if (image < 0) throw std::logic_error("no embedding image found");
        embed_table_.assign(static_cast<std::size_t>(q), 0);
        embed_table_[1] = 1;
        for (long a = 1; a < q; ++a) {
            long im = top_->pow(image, base_->dlog(a));
            embed_table_[static_cast<std::size_t>(a)] = im;
            preimage_[im] = a;
        }
        preimage_[0] = 0;
    }

    const FieldPtr& base() const { return base_; }
    const FieldPtr& top() const { return top_; }
    int degree() const { return d_; }

    long embed(long a) const { return embed_table_[static_cast<std::size_t>(a)]; }

    std::optional<long> preimage(long x) const {
        auto it = preimage_.find(x);
        if (it == preimage_.end()) return std::nullopt;
        return it->second;
    }

    // trace and norm down to the base field (returned as base-field indices)
    long trace(long x) const {
        long s = 0, y = x;
        for (int i = 0; i < d_; ++i) {
            s = top_->add(s, y);
            y = top_->pow(y, base_->q());
        }
        auto pre = preimage(s);
        if (!pre) throw std::logic_error("trace left the base field");
        return *pre;
    }
    long norm(long x) const {
        long s = 1, y = x;
        for (int i = 0; i < d_; ++i) {
            s = top_->mul(s, y);
            y = top_->pow(y, base_->q());
        }
        auto pre = preimage(s);
        if (!pre) throw std::logic_error("norm left the base field");
        return *pre;
    }

    static std::vector<long> minimal_poly_over_prime(const FieldSpec& F, long a) {
        // product of (x - a^(p^i)) over the distinct Frobenius conjugates
        std::vector<long> conj;
        long x = a;
        do {
            conj.push_back(x);
            x = F.frobenius(x);
        } while (x != a);
        std::vector<long> poly{1};  // coefficients are F-elements; must end up scalars
        for (long c : conj) {
            std::vector<long> next(poly.size() + 1, 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = F.add(next[i + 1], poly[i]);
                next[i] = F.sub(next[i], F.mul(poly[i], c));
            }
            poly = std::move(next);
        }
        for (long c : poly)
            if (c >= F.p()) throw std::logic_error("minimal polynomial has non-scalar coefficient");
        return poly;
    }

private:
    FieldPtr base_, top_;
    int d_;
    std::vector<long> embed_table_;
    std::unordered_map<long, long> preimage_;
};

}  // namespace cuspgamma
