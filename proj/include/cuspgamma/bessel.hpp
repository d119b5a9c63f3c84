#pragma once

// Normalized Bessel functions J_{sigma,psi} of cuspidal representations:
// J(g) = |U_n|^{-1} sum_{u in U_n} psi(u^{-1}) tr_sigma(g u), memoized on
// canonical coset representatives (J(u g) = psi(u) J(g) recovers the rest).
// Whittaker functions are finite combinations of right translates of J.

#include "cuspgamma/characters.hpp"
#include "cuspgamma/cyclotomic.hpp"
#include "cuspgamma/matrix_group.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace cuspgamma {

namespace detail {

// engine-stable integer draw in [lo, hi]; std::uniform_int_distribution is
// implementation-defined, which would break seeded reproducibility claims
inline long rand_range(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace detail

class BesselFn {
public:
    BesselFn(CuspidalRep rep, AddCharacter psi, std::shared_ptr<const GroupCensus> census = nullptr,
             std::size_t memo_budget = 4000000)
        : rep_(std::move(rep)), psi_(std::move(psi)), census_(std::move(census)), memo_budget_(memo_budget) {
        if (psi_.field->q() != rep_.field()->q() || psi_.field->p() != rep_.field()->p())
            throw std::invalid_argument("additive character lives on the wrong field");
        work_modulus_ = std::lcm(psi_.p(), rep_.D());
        const auto& U = unipotent_group(rep_.n(), rep_.field());
        inv_exponents_.reserve(U.size());
        for (const Mat& u : U)
            inv_exponents_.push_back(psi_.exponent(rep_.field()->neg(u.superdiag_sum())));
    }

    const CuspidalRep& rep() const { return rep_; }
    const AddCharacter& psi() const { return psi_; }
    long work_modulus() const { return work_modulus_; }

    CycNum value(const Mat& g) {
        Mat r = canonical_coset(g);
        if (r == g) return value_at_rep(r);
        Mat u = coset_factor(g, r);
        long e = psi_.exponent_of_unipotent(u);
        CycNum v = value_at_rep(r);
        if (e == 0) return v;
        return CycNum::root(work_modulus_, e * (work_modulus_ / psi_.p())) * v;
    }

    // g must already be a canonical coset representative
    CycNum value_at_rep(const Mat& g) {
        const std::string enc = g.encode();
        {
            std::lock_guard<std::mutex> lock(memo_mu_);
            auto it = memo_.find(enc);
            if (it != memo_.end()) return it->second;
        }
        CycNum v = compute(g);
        std::lock_guard<std::mutex> lock(memo_mu_);
        if (memo_.size() < memo_budget_) memo_.emplace(enc, v);
        return v;
    }

    // values aligned with enumerate_cosets order
    const std::vector<Mat>& coset_reps(std::size_t coset_budget = 600000) {
        std::lock_guard<std::mutex> lock(table_mu_);
        if (reps_.empty()) reps_ = enumerate_cosets(rep_.n(), rep_.field(), coset_budget);
        return reps_;
    }

    std::size_t memo_size() {
        std::lock_guard<std::mutex> lock(memo_mu_);
        return memo_.size();
    }

    // preload from a cache: entries are (canonical representative, value)
    void absorb(const std::vector<std::pair<Mat, CycNum>>& entries) {
        std::lock_guard<std::mutex> lock(memo_mu_);
        for (const auto& [m, v] : entries) memo_.emplace(m.encode(), v);
    }

    std::vector<std::pair<Mat, CycNum>> snapshot() {
        std::lock_guard<std::mutex> lock(memo_mu_);
        std::vector<std::pair<Mat, CycNum>> out;
        out.reserve(memo_.size());
        for (const auto& [enc, v] : memo_)
            out.emplace_back(Mat::decode(enc, rep_.n(), rep_.field()), v);
        return out;
    }

private:
    CycNum compute(const Mat& g) {
        const auto& U = unipotent_group(rep_.n(), rep_.field());
        const long p = psi_.p();
        // group the |U| terms by the psi exponent; partial sums stay in the
        // small field Q(zeta_D)
        std::vector<CycNum> partial(static_cast<std::size_t>(p), CycNum(0));
        for (std::size_t i = 0; i < U.size(); ++i) {
            Mat gu = g * U[i];
            const ClassKey& key = census_ ? census_->key_of(census_->lookup(gu)) : class_key(gu);
            partial[static_cast<std::size_t>(inv_exponents_[i])] += rep_.char_value(key);
        }
        CycNum total(0);
        const long step = work_modulus_ / p;
        for (long e = 0; e < p; ++e) {
            const CycNum& t = partial[static_cast<std::size_t>(e)];
            if (t.is_zero()) continue;
            total += e == 0 ? t.promoted(work_modulus_)
                            : CycNum::root(work_modulus_, e * step) * t.promoted(work_modulus_);
        }
        return total * CycNum::from_rational(BigInt(1), BigInt(static_cast<long>(U.size())));
    }

    CuspidalRep rep_;
    AddCharacter psi_;
    std::shared_ptr<const GroupCensus> census_;
    long work_modulus_;
    std::vector<long> inv_exponents_;
    std::unordered_map<std::string, CycNum> memo_;
    std::mutex memo_mu_;
    std::vector<Mat> reps_;
    std::mutex table_mu_;
    std::size_t memo_budget_;
};

// shared Bessel functions keyed by (representation, character); group censuses
// are attached automatically when the group fits the budget
class BesselPool {
public:
    explicit BesselPool(std::size_t group_budget = 600000) : group_budget_(group_budget) {}

    // invoked once per freshly constructed function, e.g. to preload a cache
    void set_load_hook(std::function<void(BesselFn&)> hook) { load_hook_ = std::move(hook); }

    BesselFn& get(const CuspidalRep& rep, const AddCharacter& psi) {
        auto key = std::make_tuple(rep.n(), rep.field()->p(), rep.field()->f(), rep.theta_exponent(),
                                   psi.twist, psi.sign);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = pool_.find(key);
        if (it == pool_.end()) {
            std::shared_ptr<const GroupCensus> census;
            if (gl_order(rep.n(), rep.field()->q()) <= group_budget_)
                census = GroupCensus::get(rep.n(), rep.field(), group_budget_);
            it = pool_.emplace(key, std::make_unique<BesselFn>(rep, psi, census)).first;
            if (load_hook_) load_hook_(*it->second);
        }
        return *it->second;
    }

    template <typename Fn>
    void for_each(Fn&& fn) {
        std::lock_guard<std::mutex> lock(mu_);
        for (auto& [key, J] : pool_) fn(*J);
    }

private:
    std::map<std::tuple<int, long, int, long, long, int>, std::unique_ptr<BesselFn>> pool_;
    std::mutex mu_;
    std::size_t group_budget_;
    std::function<void(BesselFn&)> load_hook_;
};

// W(g) = sum_i c_i J(g x_i); satisfies W(u g) = psi(u) W(g)
class WhittakerFn {
public:
    WhittakerFn(BesselFn& base, std::vector<std::pair<CycNum, Mat>> combo)
        : base_(&base), combo_(std::move(combo)) {}

    static WhittakerFn bessel(BesselFn& base) {
        return WhittakerFn(base, {{CycNum(1), Mat::identity(base.rep().n(), base.rep().field())}});
    }

    CycNum value(const Mat& g) const {
        CycNum acc(0);
        for (const auto& [c, x] : combo_) acc += c * base_->value(g * x);
        return acc;
    }

    const std::vector<std::pair<CycNum, Mat>>& combo() const { return combo_; }
    BesselFn& base() const { return *base_; }

private:
    BesselFn* base_;
    std::vector<std::pair<CycNum, Mat>> combo_;
};

inline Mat random_invertible(int n, const FieldPtr& field, std::mt19937_64& rng) {
    for (;;) {
        Mat m(n, field);
        for (auto& v : m.e) v = detail::rand_range(rng, 0, field->q() - 1);
        if (m.invertible()) return m;
    }
}

// deterministic test-vector generator: 1..5 translators, small nonzero coefficients
inline WhittakerFn whittaker_random(BesselFn& base, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int k = static_cast<int>(detail::rand_range(rng, 1, 5));
    std::vector<std::pair<CycNum, Mat>> combo;
    for (int i = 0; i < k; ++i) {
        long c = 0;
        while (c == 0) c = detail::rand_range(rng, -3, 3);
        combo.emplace_back(CycNum(c), random_invertible(base.rep().n(), base.rep().field(), rng));
    }
    return WhittakerFn(base, std::move(combo));
}

// ---- support audit ----

inline std::vector<std::vector<int>> all_compositions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            out.push_back(cur);
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

struct SupportCell {
    std::vector<int> composition;
    std::vector<long> deltas;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < composition.size(); ++i)
            s += (i ? "," : "") + std::to_string(composition[i]);
        s += ") deltas (";
        for (std::size_t i = 0; i < deltas.size(); ++i) s += (i ? "," : "") + std::to_string(deltas[i]);
        return s + ")";
    }
};

// block-antidiagonal core: delta_i I_{n_i} from the top-right corner down-left
inline Mat support_cell_core(const SupportCell& cell, const FieldPtr& field) {
    int n = 0;
    for (int b : cell.composition) n += b;
    Mat w(n, field);
    int row = 0, colsum = 0;
    for (std::size_t i = 0; i < cell.composition.size(); ++i) {
        int b = cell.composition[i];
        colsum += b;
        for (int t = 0; t < b; ++t) w.at(row + t, n - colsum + t) = cell.deltas[i];
        row += b;
    }
    return w;
}

struct SupportAuditReport {
    bool ok = true;
    std::size_t cosets_checked = 0;
    std::size_t nonzero_cosets = 0;
    std::vector<std::pair<SupportCell, long>> nonzero_cells;  // cell -> nonzero coset count
    BigInt max_denominator = 1;
    std::vector<Mat> violations;
};

inline SupportAuditReport bessel_support_audit(BesselFn& J, std::size_t coset_budget = 600000) {
    const int n = J.rep().n();
    const FieldPtr& field = J.rep().field();
    const long q = field->q();

    // map every matrix of every cell U w U to its cell id
    std::vector<SupportCell> cells;
    for (const auto& comp : all_compositions(n)) {
        std::vector<long> deltas(comp.size(), 1);
        for (;;) {
            cells.push_back({comp, deltas});
            std::size_t i = deltas.size();
            bool done = false;
            while (i-- > 0) {
                if (++deltas[i] < q) break;
                deltas[i] = 1;
                if (i == 0) done = true;
            }
            if (done) break;
        }
    }
    const auto& U = unipotent_group(n, field);
    std::unordered_map<std::string, int> cell_of;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        Mat w = support_cell_core(cells[ci], field);
        for (const Mat& u2 : U) {
            Mat wu = w * u2;
            for (const Mat& u1 : U) cell_of.emplace((u1 * wu).encode(), static_cast<int>(ci));
        }
    }

    SupportAuditReport report;
    std::vector<long> counts(cells.size(), 0);
    for (const Mat& rep : J.coset_reps(coset_budget)) {
        ++report.cosets_checked;
        CycNum v = J.value_at_rep(rep);
        if (v.is_zero()) continue;
        ++report.nonzero_cosets;
        if (v.denominator() > report.max_denominator) report.max_denominator = v.denominator();
        auto it = cell_of.find(rep.encode());
        if (it == cell_of.end()) {
            report.ok = false;
            report.violations.push_back(rep);
        } else {
            ++counts[static_cast<std::size_t>(it->second)];
        }
    }
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        if (counts[ci] > 0) report.nonzero_cells.emplace_back(cells[ci], counts[ci]);
    return report;
}

}  // namespace cuspgamma
