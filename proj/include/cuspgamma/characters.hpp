#pragma once

// Additive characters of f, multiplicative characters of extension fields,
// and irreducible cuspidal representations of GL_n(f) parametrized by
// Frobenius-regular characters of F_{q^n}^x.  Character values are exact
// cyclotomic numbers computed from the closed form for n <= 3 and gated by
// the validation suite (orthonormality, degree, cuspidality, central
// character) before use.

#include "cuspgamma/cyclotomic.hpp"
#include "cuspgamma/finite_field.hpp"
#include "cuspgamma/matrix_group.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace cuspgamma {

// psi_a(x) = zeta_p^{tr(a x)}, raised to sign in {+1, -1}
struct AddCharacter {
    FieldPtr field;
    long twist;
    int sign;

    AddCharacter(FieldPtr fld, long twist_a = 1, int sgn = +1)
        : field(std::move(fld)), twist(twist_a), sign(sgn) {
        if (twist == 0 || twist >= field->q())
            throw std::invalid_argument("additive character twist must be a nonzero field element");
        if (sign != 1 && sign != -1) throw std::invalid_argument("additive character sign must be +-1");
    }

    long p() const { return field->p(); }

    // exponent of zeta_p in psi(x)
    long exponent(long x) const {
        long t = field->trace_to_prime(field->mul(twist, x));
        long e = (sign > 0 ? t : -t) % p();
        return e < 0 ? e + p() : e;
    }

    CycNum value(long x) const { return CycNum::root(p(), exponent(x)); }

    // character of U_n: psi(u) = psi(u_12 + ... + u_{n-1,n})
    long exponent_of_unipotent(const Mat& u) const { return exponent(u.superdiag_sum()); }
    CycNum value_of_unipotent(const Mat& u) const { return CycNum::root(p(), exponent_of_unipotent(u)); }

    AddCharacter inverted() const { return AddCharacter(field, twist, -sign); }
};

// theta(g^j) = zeta_{q-1}^{k j} on the field's fixed generator
struct MultCharacter {
    FieldPtr field;
    long exponent_k;

    MultCharacter(FieldPtr fld, long k) : field(std::move(fld)), exponent_k(k) {}

    CycNum value(long x) const {
        if (x == 0) throw std::domain_error("multiplicative character at zero");
        return CycNum::root(field->q() - 1, exponent_k * field->dlog(x));
    }
};

// shared F_q in F_{q^n} towers
inline std::shared_ptr<const FieldExtension> extension_tower(const FieldPtr& base, int d) {
    static std::mutex mu;
    static std::map<std::tuple<long, int, int>, std::shared_ptr<const FieldExtension>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(base->p(), base->f(), d);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<const FieldExtension>(base, d)).first;
    return it->second;
}

class CuspidalRep {
public:
    CuspidalRep(int n, FieldPtr base, long theta_exponent)
        : n_(n), base_(std::move(base)), state_(std::make_shared<State>()) {
        if (n < 1 || n > 3) throw std::invalid_argument("cuspidal representations supported for n in {1,2,3}");
        ext_ = extension_tower(base_, n);
        const long D = ext_->top()->q() - 1;
        long k = theta_exponent % D;
        if (k < 0) k += D;
        orbit_.push_back(k);
        long cur = k;
        for (int i = 1; i < n; ++i) {
            cur = static_cast<long>((static_cast<long long>(cur) * base_->q()) % D);
            orbit_.push_back(cur);
        }
        std::sort(orbit_.begin(), orbit_.end());
        for (int i = 0; i + 1 < n; ++i)
            if (orbit_[static_cast<std::size_t>(i)] == orbit_[static_cast<std::size_t>(i) + 1])
                throw std::invalid_argument("character is not regular: orbit has fewer than n elements");
        k_min_ = orbit_.front();
    }

    int n() const { return n_; }
    const FieldPtr& field() const { return base_; }
    const std::shared_ptr<const FieldExtension>& tower() const { return ext_; }
    const std::vector<long>& orbit() const { return orbit_; }
    long theta_exponent() const { return k_min_; }
    long D() const { return ext_->top()->q() - 1; }

    std::string name() const {
        return "cusp(n=" + std::to_string(n_) + ", q=" + std::to_string(base_->q()) +
               ", k=" + std::to_string(k_min_) + ")";
    }

    BigInt dimension() const {
        BigInt d(1);
        long qi = 1;
        for (int i = 1; i < n_; ++i) {
            qi *= base_->q();
            d *= BigInt(qi - 1);
        }
        return d;
    }

    bool isomorphic(const CuspidalRep& o) const {
        return n_ == o.n_ && base_->q() == o.base_->q() && base_->p() == o.base_->p() &&
               orbit_ == o.orbit_;
    }

    CuspidalRep contragredient() const { return CuspidalRep(n_, base_, D() - k_min_); }

    bool self_contragredient() const { return contragredient().orbit_ == orbit_; }

    // theta at an element of the extension field
    CycNum theta(long x) const {
        if (x == 0) throw std::domain_error("theta at zero");
        return CycNum::root(D(), k_min_ * ext_->top()->dlog(x));
    }

    // central character on f^x
    CycNum central_character(long z) const { return theta(ext_->embed(z)); }

    std::vector<CycNum> central_character_vector() const {
        std::vector<CycNum> v;
        for (long z = 1; z < base_->q(); ++z) v.push_back(central_character(z));
        return v;
    }

    CycNum char_value(const ClassKey& key) const {
        {
            std::shared_lock lock(state_->mu);
            auto it = state_->table.find(key);
            if (it != state_->table.end()) return it->second;
        }
        CycNum v = compute_char_value(key);
        std::unique_lock lock(state_->mu);
        return state_->table.emplace(key, std::move(v)).first->second;
    }

    CycNum char_value(const Mat& g) const { return char_value(class_key(g)); }

    // mark the invariant gate as passed (set by validate_cuspidal)
    bool validated() const { return state_->validated; }
    void set_validated() const { state_->validated = true; }

    std::map<ClassKey, CycNum> table_snapshot() const {
        std::shared_lock lock(state_->mu);
        return state_->table;
    }

    void absorb_table(const std::map<ClassKey, CycNum>& table, bool mark_validated) const {
        std::unique_lock lock(state_->mu);
        for (const auto& [k, v] : table) state_->table.emplace(k, v);
        if (mark_validated) state_->validated = true;
    }

private:
    CycNum compute_char_value(const ClassKey& key) const {
        const long q = base_->q();
        if (key.parts.size() != 1) return CycNum(0);
        const auto& [poly, blocks] = key.parts.front();
        const int deg = static_cast<int>(poly.size()) - 1;
        if (deg == 1) {
            // eigenvalue a repeated n times with some block partition
            long a = base_->neg(poly[0]);
            if (a == 0) throw std::logic_error("singular class in character table");
            CycNum coeff = unipotent_coefficient(blocks);
            return coeff * central_character(a);
        }
        if (deg == n_ && blocks == std::vector<int>{1}) {
            // regular elliptic: sum of theta over the Frobenius orbit of a root
            long root = root_in_extension(poly);
            CycNum sum(0);
            long x = root;
            for (int i = 0; i < n_; ++i) {
                sum += theta(x);
                x = ext_->top()->pow(x, q);
            }
            return (n_ % 2 == 0) ? -sum : sum;
        }
        return CycNum(0);
    }

    CycNum unipotent_coefficient(const std::vector<int>& blocks) const {
        const long q = base_->q();
        if (n_ == 1) return CycNum(1);
        if (n_ == 2) {
            if (blocks == std::vector<int>{1, 1}) return CycNum(q - 1);
            return CycNum(-1);  // single Jordan block of size 2
        }
        if (blocks == std::vector<int>{1, 1, 1}) return CycNum((q - 1) * (q * q - 1));
        if (blocks == std::vector<int>{2, 1}) return CycNum(-(q - 1));
        return CycNum(1);  // regular unipotent
    }

    long root_in_extension(const std::vector<long>& poly) const {
        {
            std::shared_lock lock(state_->mu);
            auto it = state_->roots.find(poly);
            if (it != state_->roots.end()) return it->second;
        }
        const auto& top = *ext_->top();
        long found = -1;
        for (long x = 0; x < top.q(); ++x) {
            long acc = 0, pw = 1;
            for (std::size_t i = 0; i < poly.size(); ++i) {
                acc = top.add(acc, top.mul(ext_->embed(poly[i]), pw));
                if (i + 1 < poly.size()) pw = top.mul(pw, x);
            }
            if (acc == 0) {
                found = x;
                break;
            }
        }
        if (found < 0) throw std::logic_error("irreducible factor has no root in the extension field");
        std::unique_lock lock(state_->mu);
        state_->roots.emplace(poly, found);
        return found;
    }

    struct State {
        mutable std::shared_mutex mu;
        std::map<ClassKey, CycNum> table;
        std::map<std::vector<long>, long> roots;
        bool validated = false;
    };

    int n_;
    FieldPtr base_;
    std::shared_ptr<const FieldExtension> ext_;
    std::vector<long> orbit_;
    long k_min_;
    std::shared_ptr<State> state_;
};

// one representative per Frobenius orbit of regular characters, ordered by
// the smallest orbit exponent
inline std::vector<CuspidalRep> list_cuspidals(int n, const FieldPtr& field) {
    if (n < 1 || n > 3) throw std::invalid_argument("cuspidal enumeration supported for n in {1,2,3}");
    auto ext = extension_tower(field, n);
    const long D = ext->top()->q() - 1;
    std::vector<bool> seen(static_cast<std::size_t>(D), false);
    std::vector<CuspidalRep> out;
    for (long k = 0; k < D; ++k) {
        if (seen[static_cast<std::size_t>(k)]) continue;
        std::vector<long> orbit;
        long cur = k;
        bool regular = true;
        for (int i = 0; i < n; ++i) {
            if (i > 0 && cur == k) {
                regular = false;  // orbit shorter than n
            }
            orbit.push_back(cur);
            cur = static_cast<long>((static_cast<long long>(cur) * field->q()) % D);
        }
        if (cur != k) regular = false;  // should not happen: q^n = 1 mod D
        for (long e : orbit) seen[static_cast<std::size_t>(e)] = true;
        std::sort(orbit.begin(), orbit.end());
        for (std::size_t i = 0; i + 1 < orbit.size(); ++i)
            if (orbit[i] == orbit[i + 1]) regular = false;
        if (regular) out.emplace_back(n, field, k);
    }
    return out;
}

// ---- the invariant gate for constructed character tables ----

struct CuspidalValidation {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(const std::string& msg) {
        ok = false;
        failures.push_back(msg);
    }
};

inline CuspidalValidation validate_cuspidal(const CuspidalRep& rep, const GroupCensus& census) {
    CuspidalValidation out;
    const FieldSpec& F = *rep.field();
    const long q = F.q();
    const int n = rep.n();

    // degree
    Mat id = Mat::identity(n, rep.field());
    CycNum deg = rep.char_value(id);
    if (deg != CycNum::from_rational(rep.dimension(), BigInt(1)))
        out.fail("degree mismatch: chi(1) != prod (q^i - 1)");

    // exact orthonormality over the class census
    CycNum inner(0);
    for (std::size_t c = 0; c < census.keys.size(); ++c) {
        CycNum v = rep.char_value(census.keys[c]);
        inner += CycNum(census.class_size[c]) * v * v.conj();
    }
    if (inner != CycNum(static_cast<long>(census.elements->size())))
        out.fail("<chi, chi> != 1");

    // central character: chi(zI) = theta(z) chi(1), multiplicative in z
    for (long z = 1; z < q; ++z) {
        Mat zi(n, rep.field());
        for (int i = 0; i < n; ++i) zi.at(i, i) = z;
        if (rep.char_value(zi) != rep.central_character(z) * deg) {
            out.fail("central character mismatch at z=" + std::to_string(z));
            break;
        }
    }
    for (long z1 = 1; z1 < q; ++z1)
        for (long z2 = 1; z2 < q; ++z2)
            if (rep.central_character(F.mul(z1, z2)) !=
                rep.central_character(z1) * rep.central_character(z2)) {
                out.fail("central character not multiplicative");
                z1 = q;
                break;
            }

    // integrality: canonical denominators are 1 on the whole table
    for (const auto& k : census.keys) {
        if (rep.char_value(k).denominator() != 1) {
            out.fail("character value not an algebraic integer on class " + k.to_string());
            break;
        }
    }

    // cuspidality: sum over every proper parabolic radical vanishes at every g
    for (const auto& comp : proper_compositions(n)) {
        auto radical = parabolic_radical(comp, rep.field());
        for (const Mat& g : *census.elements) {
            CycNum s(0);
            for (const Mat& u : radical) {
                Mat gu = g * u;
                s += rep.char_value(census.key_of(census.lookup(gu)));
            }
            if (!s.is_zero()) {
                std::string c;
                for (int b : comp) c += (c.empty() ? "" : ",") + std::to_string(b);
                out.fail("unipotent-radical sum nonzero for composition (" + c + ")");
                break;
            }
        }
    }

    if (out.ok) rep.set_validated();
    return out;
}

}  // namespace cuspgamma
