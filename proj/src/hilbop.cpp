#include "hilbq/hilbop.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hilbq/modforms.hpp"

namespace hilbq {

OperatorSeries::OperatorSeries(const SurfaceModel& s, int level, int q_order)
    : level_(level), q_order_(q_order), basis_(fock_basis(s, level)) {
    for (size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<int>(i);
}

int OperatorSeries::index_of(const FockMonomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end())
        throw std::invalid_argument("OperatorSeries: monomial not of this level");
    return it->second;
}

void OperatorSeries::add_entry(int row, int col, const PQSeries& ser) {
    if (ser.is_zero()) return;
    auto key = std::make_pair(row, col);
    auto it = e_.find(key);
    if (it == e_.end()) e_.emplace(key, ser);
    else {
        it->second = it->second + ser;
        if (it->second.is_zero()) e_.erase(it);
    }
}

void OperatorSeries::add_term(int row, int col, int d, int dp, const TScalar& c) {
    if (c.is_zero() || d > q_order_) return;
    auto key = std::make_pair(row, col);
    auto it = e_.find(key);
    if (it == e_.end()) it = e_.emplace(key, PQSeries(q_order_)).first;
    it->second.add_term(d, dp, c);
    if (it->second.is_zero()) e_.erase(it);
}

PQSeries OperatorSeries::entry(int row, int col) const {
    auto it = e_.find({row, col});
    return it == e_.end() ? PQSeries(q_order_) : it->second;
}

PQSeries OperatorSeries::bracket(const SurfaceModel& s, const FockVector& lambda,
                                 const FockVector& mu) const {
    // (O lambda, mu) = sum_{i,j} lambda_j entry(i,j) (basis_i, mu)
    std::map<int, TScalar> lam;
    for (const auto& [m, c] : lambda.terms()) lam[index_of(m)] = c;
    std::map<int, TScalar> row_pair;
    PQSeries out(q_order_);
    for (const auto& [key, ser] : e_) {
        auto [i, j] = key;
        auto lj = lam.find(j);
        if (lj == lam.end()) continue;
        auto rp = row_pair.find(i);
        if (rp == row_pair.end()) {
            FockVector bi;
            bi.add(basis_[i], TScalar(1));
            rp = row_pair.emplace(i, fock_pairing(s, bi, mu)).first;
        }
        TScalar f = lj->second * rp->second;
        if (!f.is_zero()) out = out + f * ser;
    }
    return out;
}

OperatorSeries OperatorSeries::transformed(
    const std::function<PQSeries(const PQSeries&)>& f) const {
    OperatorSeries r = *this;
    r.e_.clear();
    for (const auto& [key, ser] : e_) {
        PQSeries t = f(ser);
        if (!t.is_zero()) r.e_.emplace(key, std::move(t));
    }
    return r;
}

OperatorSeries OperatorSeries::scaled(const PQSeries& c) const {
    return transformed([&](const PQSeries& s) { return c * s; });
}
OperatorSeries OperatorSeries::scaled(const TScalar& c) const {
    return transformed([&](const PQSeries& s) { return c * s; });
}
OperatorSeries OperatorSeries::derived_q() const {
    return transformed([](const PQSeries& s) { return derive_q(s); });
}
OperatorSeries OperatorSeries::derived_p() const {
    return transformed([](const PQSeries& s) { return derive_p(s); });
}

OperatorSeries operator+(const OperatorSeries& a, const OperatorSeries& b) {
    if (a.level_ != b.level_ || a.q_order_ != b.q_order_)
        throw std::invalid_argument("OperatorSeries: level/order mismatch");
    OperatorSeries r = a;
    for (const auto& [key, ser] : b.e_) r.add_entry(key.first, key.second, ser);
    return r;
}

OperatorSeries operator-(const OperatorSeries& a, const OperatorSeries& b) {
    if (a.level_ != b.level_ || a.q_order_ != b.q_order_)
        throw std::invalid_argument("OperatorSeries: level/order mismatch");
    OperatorSeries r = a;
    for (const auto& [key, ser] : b.e_) r.add_entry(key.first, key.second, -ser);
    return r;
}

std::string op_first_mismatch(const OperatorSeries& a, const OperatorSeries& b,
                              int dp_max) {
    if (a.level() != b.level() || a.q_order() != b.q_order())
        return "level or q_order mismatch";
    const size_t nb = a.basis().size();
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = 0; j < nb; ++j) {
            std::string m =
                first_mismatch(a.entry(static_cast<int>(i), static_cast<int>(j)),
                               b.entry(static_cast<int>(i), static_cast<int>(j)),
                               a.q_order(), dp_max);
            if (!m.empty()) {
                std::ostringstream os;
                os << "entry (" << i << "," << j << "): " << m;
                return os.str();
            }
        }
    return {};
}

FockVector apply_word(const SurfaceModel& s, const NakajimaWord& w, const FockVector& v) {
    FockVector cur = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        cur = nakajima_apply(s, it->first, it->second, cur);
        if (cur.is_zero()) break;
    }
    return cur;
}

FockMatrix matrix_of(const SurfaceModel& s, const std::vector<FockMonomial>& basis,
                     const std::function<FockVector(const FockVector&)>& op) {
    std::map<FockMonomial, int> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    FockMatrix m;
    for (size_t j = 0; j < basis.size(); ++j) {
        FockVector bj;
        bj.add(basis[j], TScalar(1));
        FockVector w = op(bj);
        for (const auto& [mono, c] : w.terms()) {
            auto it = index.find(mono);
            if (it == index.end())
                throw std::logic_error("matrix_of: operator does not preserve the level");
            m[{it->second, static_cast<int>(j)}] += c;
        }
    }
    for (auto it = m.begin(); it != m.end();)
        it = it->second.is_zero() ? m.erase(it) : std::next(it);
    return m;
}

FockVector apply_normal_ordered(const SurfaceModel& s, const std::vector<int>& b,
                                const TensorClass& t, const FockVector& v) {
    if (static_cast<int>(b.size()) != t.factors)
        throw std::invalid_argument("apply_normal_ordered: slot mismatch");
    FockVector out;
    const int r = static_cast<int>(b.size());
    for (const auto& term : t.terms) {
        // Stable insertion sort by index descending; crossing two odd symbols
        // flips the sign (only odd-odd pairs anticommute among distinct modes).
        std::vector<std::pair<int, int>> word;  // (b_i, comp_i)
        word.reserve(r);
        int sign = 1;
        for (int i = 0; i < r; ++i) {
            std::pair<int, int> x{b[i], term.comps[i]};
            int pos = static_cast<int>(word.size());
            while (pos > 0 && word[pos - 1].first < x.first) {
                if (s.parity(word[pos - 1].second) && s.parity(x.second)) sign = -sign;
                --pos;
            }
            word.insert(word.begin() + pos, x);
        }
        FockVector cur = v;
        for (auto it = word.rbegin(); it != word.rend() && !cur.is_zero(); ++it)
            cur = nakajima_apply_basis(s, it->first, it->second, cur);
        if (!cur.is_zero()) out += (Rational(sign) * term.coeff) * cur;
    }
    return out;
}

FockMatrix lehn_divisor(const SurfaceModel& s, const SurfaceClass& alpha, int n) {
    TensorClass da = s.delta_push(alpha, false);
    auto basis = fock_basis(s, n);
    return matrix_of(s, basis, [&](const FockVector& v) {
        FockVector acc;
        for (int m = 1; m <= n; ++m)
            acc += TScalar(-1) * apply_normal_ordered(s, {m, -m}, da, v);
        return acc;
    });
}

FockMatrix lehn_delta(const SurfaceModel& s, int n) {
    TensorClass d123 = s.small_diagonal();
    TensorClass dK = s.delta_push(s.cls("K"), false);
    auto basis = fock_basis(s, n);
    return matrix_of(s, basis, [&](const FockVector& v) {
        FockVector acc;
        for (int i = -n; i <= n; ++i) {
            if (i == 0) continue;
            for (int j = -n; j <= n; ++j) {
                if (j == 0) continue;
                int k = -i - j;
                if (k == 0 || std::abs(k) > n) continue;
                acc += TScalar(Rational(-1, 6)) *
                       apply_normal_ordered(s, {i, j, k}, d123, v);
            }
        }
        for (int m = 1; m <= n; ++m)
            acc += TScalar(Rational(-(m - 1), 2)) *
                   apply_normal_ordered(s, {m, -m}, dK, v);
        return acc;
    });
}

TensorClass star_class(const SurfaceModel& s, const SurfaceClass& gamma,
                       const std::vector<int>& b) {
    const int r = static_cast<int>(b.size());
    for (int bi : b)
        if (bi == 0) throw std::invalid_argument("star_class: zero entry in b");
    TensorClass out;
    out.factors = r;
    const SurfaceClass point = s.cls("point");

    // expand prod over slots of per-slot linear combinations
    auto expand = [&](const std::vector<const SurfaceClass*>& slots, const TScalar& pref) {
        std::vector<std::pair<TScalar, std::vector<int>>> acc = {{pref, {}}};
        for (int i = 0; i < r; ++i) {
            std::vector<std::pair<TScalar, std::vector<int>>> next;
            for (const auto& [c, comps] : acc)
                for (const auto& [idx, ci] : *slots[i]) {
                    TScalar nc = c * ci;
                    if (nc.is_zero()) continue;
                    auto nv = comps;
                    nv.push_back(idx);
                    next.push_back({nc, std::move(nv)});
                }
            acc = std::move(next);
        }
        for (auto& [c, comps] : acc) out.add(c, comps);
    };

    for (int i = 0; i < r; ++i) {
        std::vector<const SurfaceClass*> slots(r, &gamma);
        slots[i] = &point;
        expand(slots, TScalar(Rational(static_cast<long>(b[i]) * b[i])));
    }
    TensorClass dodd = s.delta_push(gamma, true);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            for (const auto& term : dodd.terms) {
                SurfaceClass ci, cj;
                ci[term.comps[0]] = TScalar(1);
                cj[term.comps[1]] = TScalar(1);
                std::vector<const SurfaceClass*> slots(r, &gamma);
                slots[i] = &ci;
                slots[j] = &cj;
                expand(slots, TScalar(Rational(-static_cast<long>(b[i]) * b[j])) * term.coeff);
            }
        }
    return out;
}

namespace {

// Ordered tuples (b_1..b_r), all nonzero, sum zero, positive part at most n.
std::vector<std::vector<int>> zero_sum_tuples(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int pos_sum, int neg_sum, int r) -> void {
        if (r >= 2 && pos_sum == -neg_sum && pos_sum > 0) out.push_back(cur);
        if (r == 2 * n) return;
        for (int b = -n; b <= n; ++b) {
            if (b == 0) continue;
            if (b > 0 && pos_sum + b > n) continue;
            if (b < 0 && neg_sum + b < -n) continue;
            cur.push_back(b);
            self(self, pos_sum + (b > 0 ? b : 0), neg_sum + (b < 0 ? b : 0), r + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0, 0);
    return out;
}

struct VertexComponent {
    std::vector<int> b;
    FockMatrix mat;  // matrix of :q_{b_1}..q_{b_r}(star^b(gamma)): without prefactors
};

// Shared by the omega operators and the A_r-form cross-check operators: the
// normal-ordered matrices for every contributing tuple. The quick reject
// tests whether the annihilator multiset of b embeds into the column's parts.
std::vector<VertexComponent> vertex_components(const SurfaceModel& s,
                                               const SurfaceClass& gamma, int n) {
    auto basis = fock_basis(s, n);
    std::map<FockMonomial, int> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);

    std::vector<std::multiset<int>> col_parts(basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (const auto& f : basis[j].f) col_parts[j].insert(f.k);

    std::vector<VertexComponent> comps;
    for (const auto& b : zero_sum_tuples(n)) {
        TensorClass star = star_class(s, gamma, b);
        if (star.terms.empty()) continue;
        std::multiset<int> need;
        for (int bi : b)
            if (bi < 0) need.insert(-bi);
        VertexComponent vc;
        vc.b = b;
        for (size_t j = 0; j < basis.size(); ++j) {
            bool ok = true;
            for (int k : need)
                if (need.count(k) > col_parts[j].count(k)) { ok = false; break; }
            if (!ok) continue;
            FockVector bj;
            bj.add(basis[j], TScalar(1));
            FockVector w = apply_normal_ordered(s, b, star, bj);
            for (const auto& [mono, c] : w.terms())
                vc.mat[{index.at(mono), static_cast<int>(j)}] += c;
        }
        for (auto it = vc.mat.begin(); it != vc.mat.end();)
            it = it->second.is_zero() ? vc.mat.erase(it) : std::next(it);
        if (!vc.mat.empty()) comps.push_back(std::move(vc));
    }
    return comps;
}

// prod_i (p^{m b_i / 2} - p^{-m b_i / 2}) / b_i as a doubled-exponent layer.
PLayer p_factor(const std::vector<int>& b, int m) {
    PLayer acc{{0, TScalar(1)}};
    for (int bi : b) {
        PLayer f;
        f[m * bi] = TScalar(Rational(1, bi));
        f[-m * bi] = TScalar(Rational(-1, bi));
        PLayer next;
        for (const auto& [e1, c1] : acc)
            for (const auto& [e2, c2] : f) {
                auto [it, ins] = next.emplace(e1 + e2, c1 * c2);
                if (!ins) {
                    it->second += c1 * c2;
                    if (it->second.is_zero()) next.erase(it);
                }
            }
        acc = std::move(next);
    }
    return acc;
}

PLayer layer_scale(const PLayer& l, const TScalar& c) {
    PLayer r;
    for (const auto& [e, x] : l) {
        TScalar v = c * x;
        if (!v.is_zero()) r[e] = v;
    }
    return r;
}

void add_pmatrix(OperatorSeries& o, const FockMatrix& m, int q_exp, const PLayer& layer) {
    for (const auto& [key, c] : m)
        for (const auto& [dp, x] : layer) o.add_term(key.first, key.second, q_exp, dp, c * x);
}

// log(1 - p^j) = -sum_{i >= 1, i*j <= W} p^{ij}/i, ascending to the window.
PLayer log_one_minus_p_pow(int j, int p_window) {
    PLayer l;
    for (int i = 1; i * j <= p_window; ++i) l[2 * i * j] = TScalar(Rational(-1, i));
    return l;
}

PLayer layer_sub(PLayer a, const PLayer& b) {
    for (const auto& [e, c] : b) {
        auto [it, ins] = a.emplace(e, -c);
        if (!ins) {
            it->second -= c;
            if (it->second.is_zero()) a.erase(it);
        }
    }
    return a;
}

// (p^{m/2} - p^{-m/2})^2 = p^m - 2 + p^{-m}
PLayer squared_sinh_layer(int m) {
    return PLayer{{2 * m, TScalar(1)}, {0, TScalar(-2)}, {-2 * m, TScalar(1)}};
}

Rational int_power_rational(long base, int e) { return Rational(int_pow(base, e)); }

// sum b_i = 0 forces every assembled entry into integer p-exponents even
// though the individual vertex factors carry half powers.
void assert_integral_entries(const OperatorSeries& o, const char* who) {
    for (const auto& [key, ser] : o.entries())
        if (ser.has_half_integer_exponents())
            throw std::logic_error(std::string(who) +
                                   ": half-integer p-exponent in an assembled entry");
}

}  // namespace

std::map<int, PMatrix> omega_matrix_by_r(const SurfaceModel& s, const SurfaceClass& gamma,
                                         int n, int m_dilation) {
    std::map<int, PMatrix> out;
    for (const auto& vc : vertex_components(s, gamma, n)) {
        const int r = static_cast<int>(vc.b.size());
        PLayer f = layer_scale(p_factor(vc.b, m_dilation),
                               Rational(1) / Rational(factorial(r)));
        PMatrix& pm = out[r];
        for (const auto& [key, c] : vc.mat)
            for (const auto& [dp, x] : f) {
                TScalar v = c * x;
                if (v.is_zero()) continue;
                auto [it, ins] = pm[key].emplace(dp, v);
                if (!ins) {
                    it->second += v;
                    if (it->second.is_zero()) pm[key].erase(it);
                }
            }
    }
    return out;
}

OperatorSeries q_hilb(const SurfaceModel& s, int n, int q_order, int p_window,
                      QVariant variant) {
    if ((variant == QVariant::Exc) != s.equivariant)
        throw std::invalid_argument("q_hilb: variant does not match the surface model");
    OperatorSeries o(s, n, q_order);
    auto basis = o.basis();

    // first line: sum_k ln((1-p^k)/(1-p)) q_k q_{-k}(Delta_* K_S); on E x C
    // this is -t^2 sum_k ln(...) q_k q_{-k}(Delta_E), the same class.
    TensorClass dK = s.delta_push(s.cls("K"), false);
    for (int k = 2; k <= n; ++k) {
        PLayer lr = layer_sub(log_one_minus_p_pow(k, p_window),
                              log_one_minus_p_pow(1, p_window));
        FockMatrix mk = matrix_of(s, basis, [&](const FockVector& v) {
            return apply_normal_ordered(s, {k, -k}, dK, v);
        });
        add_pmatrix(o, mk, 0, lr);
    }

    // second line: -(int_Sigma K_S) sum_{m,d} q^{md}/(md) [omega_{df}(p^m)
    // + (p^{m/2}-p^{-m/2})^2 e_{df}]; on E x C the prefactor is +1 and
    // e_{dt} = d e_t with e_t = -t^2 sum q_k q_{-k}(Delta_E) = e_f.
    TScalar c0 = -s.pair(s.cls("sigma"), s.cls("K"));
    SurfaceClass f = s.cls("f");
    FockMatrix ef = lehn_divisor(s, f, n);
    auto comps = vertex_components(s, f, n);
    for (int m = 1; m <= q_order; ++m) {
        for (int d = 1; m * d <= q_order; ++d) {
            TScalar coef = c0 * Rational(1, static_cast<long>(m) * d);
            for (const auto& vc : comps) {
                const int r = static_cast<int>(vc.b.size());
                PLayer lay = layer_scale(
                    p_factor(vc.b, m),
                    coef * (int_power_rational(d, r - 1) / Rational(factorial(r))));
                add_pmatrix(o, vc.mat, m * d, lay);
            }
            add_pmatrix(o, ef, m * d, layer_scale(squared_sinh_layer(m), coef * Rational(d)));
        }
    }
    assert_integral_entries(o, "q_hilb");
    return o;
}

OperatorSeries q_pt(const SurfaceModel& s, int n, int q_order, int p_window) {
    if (s.equivariant)
        throw std::invalid_argument("q_pt: requires a compact surface model");
    OperatorSeries o(s, n, q_order);
    auto basis = o.basis();

    TensorClass dc1 = s.delta_push(s.cls("c1"), false);
    for (int k = 1; k <= n; ++k) {
        PLayer lr = layer_scale(log_one_minus_p_pow(k, p_window), TScalar(-1));
        FockMatrix mk = matrix_of(s, basis, [&](const FockVector& v) {
            return apply_normal_ordered(s, {k, -k}, dc1, v);
        });
        add_pmatrix(o, mk, 0, lr);
    }

    TScalar ds(Rational(s.d_sigma()));
    auto comps = vertex_components(s, s.cls("f"), n);
    for (int m = 1; m <= q_order; ++m)
        for (int d = 1; m * d <= q_order; ++d) {
            TScalar coef = ds * Rational(1, static_cast<long>(m) * d);
            for (const auto& vc : comps) {
                const int r = static_cast<int>(vc.b.size());
                PLayer lay = layer_scale(
                    p_factor(vc.b, m),
                    coef * (int_power_rational(d, r - 1) / Rational(factorial(r))));
                add_pmatrix(o, vc.mat, m * d, lay);
            }
        }
    assert_integral_entries(o, "q_pt");
    return o;
}

OperatorSeries quantum_divisor_alpha(const SurfaceModel& s, const SurfaceClass& alpha,
                                     int n, int q_order, int p_window) {
    QVariant v = s.equivariant ? QVariant::Exc : QVariant::Compact;
    OperatorSeries o = q_hilb(s, n, q_order, p_window, v).derived_q();
    TScalar af = s.pair(alpha, s.cls("f"));
    o = o.scaled(af);
    OperatorSeries cl(s, n, q_order);
    add_pmatrix(cl, lehn_divisor(s, alpha, n), 0, PLayer{{0, TScalar(1)}});
    return cl + o;
}

OperatorSeries quantum_divisor_delta(const SurfaceModel& s, int n, int q_order,
                                     int p_window) {
    QVariant v = s.equivariant ? QVariant::Exc : QVariant::Compact;
    OperatorSeries o = q_hilb(s, n, q_order, p_window, v).derived_p();
    OperatorSeries cl(s, n, q_order);
    add_pmatrix(cl, lehn_delta(s, n), 0, PLayer{{0, TScalar(1)}});
    return cl + o;
}

OperatorSeries extremal_delta(const SurfaceModel& s, int n, int q_order, int p_window) {
    OperatorSeries o(s, n, q_order);
    auto basis = o.basis();
    TensorClass sd = s.small_diagonal();
    FockMatrix d123 = matrix_of(s, basis, [&](const FockVector& v) {
        FockVector acc;
        for (int i = -n; i <= n; ++i) {
            if (i == 0) continue;
            for (int j = -n; j <= n; ++j) {
                if (j == 0) continue;
                int k = -i - j;
                if (k == 0 || std::abs(k) > n) continue;
                acc += TScalar(Rational(-1, 6)) * apply_normal_ordered(s, {i, j, k}, sd, v);
            }
        }
        return acc;
    });
    add_pmatrix(o, d123, 0, PLayer{{0, TScalar(1)}});

    // k/2 (p^k+1)/(p^k-1) - 1/2 (p+1)/(p-1) ascending:
    //   (1-k)/2 + sum_{j>=1} p^j - k sum_{j>=1} p^{jk}
    TensorClass dK = s.delta_push(s.cls("K"), false);
    for (int k = 1; k <= n; ++k) {
        PLayer lay;
        if (k != 1) {
            lay[0] = TScalar(Rational(1 - k, 2));
            for (int j = 1; j <= p_window; ++j) {
                auto [it, ins] = lay.emplace(2 * j, TScalar(1));
                if (!ins) it->second += TScalar(1);
            }
            for (int j = 1; j * k <= p_window; ++j) {
                auto [it, ins] = lay.emplace(2 * j * k, TScalar(Rational(-k)));
                if (!ins) {
                    it->second += TScalar(Rational(-k));
                    if (it->second.is_zero()) lay.erase(it);
                }
            }
        }
        if (lay.empty()) continue;
        FockMatrix mk = matrix_of(s, basis, [&](const FockVector& v) {
            return apply_normal_ordered(s, {k, -k}, dK, v);
        });
        add_pmatrix(o, mk, 0, lay);
    }
    return o;
}

PQSeries wallcross_log_factor(int q_order, int p_window) {
    PQSeries r(q_order);
    for (const auto& [dp, c] : log_one_minus_p_pow(1, p_window)) r.add_term(0, dp, c);
    // log prod_r (1-p q^r)(1-p^{-1} q^r)/(1-q^r)^2 = sum_{m,d} q^{md}/m (1-p^m)(1-p^{-m})
    for (int m = 1; m <= q_order; ++m)
        for (int d = 1; m * d <= q_order; ++d) {
            Rational c(1, m);
            r.add_term(m * d, 0, Rational(2) * c);
            r.add_term(m * d, 2 * m, -c);
            r.add_term(m * d, -2 * m, -c);
        }
    return r;
}

WallcrossData wallcross_data(const SurfaceModel& s, int q_order, int p_window) {
    if (s.equivariant)
        throw std::invalid_argument("wallcross_data: requires a compact surface model");
    // I_0 = prod (1-q^n)^{-d_Sigma} = exp(d_Sigma sum_{n,m} q^{nm}/m)
    PQSeries logI0(q_order);
    for (int nn = 1; nn <= q_order; ++nn)
        for (int m = 1; nn * m <= q_order; ++m)
            logI0.add_term(nn * m, 0, Rational(s.d_sigma(), m));
    WallcrossData w{series_exp(logI0), PQSeries(q_order)};
    w.i1_deg2_scalar = wallcross_log_factor(q_order, p_window) * w.i0;
    return w;
}

std::map<std::pair<int, int>, TScalar> bracket_table(const SurfaceModel& s, int n,
                                                     const FockVector& lambda,
                                                     const FockVector& mu, int q_order,
                                                     int p_window) {
    QVariant v = s.equivariant ? QVariant::Exc : QVariant::Compact;
    OperatorSeries o = q_hilb(s, n, q_order, p_window, v);
    PQSeries ser = o.bracket(s, lambda, mu);
    std::map<std::pair<int, int>, TScalar> out;
    for (const auto& [d, layer] : ser.coeffs())
        for (const auto& [dp, c] : layer) {
            if (dp % 2 != 0)
                throw std::logic_error("bracket_table: half-integer p-exponent survived");
            int k = dp / 2;
            if (d == 0 && k <= 0)
                throw std::logic_error("bracket_table: non-effective (d,k) entry");
            if (d == 0 && k == 0) continue;  // excluded by definition
            out[{d, k}] = (k % 2 == 0) ? c : -c;
        }
    return out;
}

namespace detail {

OperatorSeries t_operator(const SurfaceModel& s, int n, int q_order, int p_window) {
    OperatorSeries o(s, n, q_order);
    for (const auto& vc : vertex_components(s, s.cls("f"), n)) {
        const int r = static_cast<int>(vc.b.size());
        // coefficient -(1/2)(1/r!)((-1)^r / prod b_i) sum_S (-1)^{|S|} A_r(p^{b_S})
        PQSeries avg(q_order);
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            int bs = 0;
            int par = 0;
            for (int i = 0; i < r; ++i)
                if (mask & (1u << i)) { bs += vc.b[i]; ++par; }
            PQSeries a = jacobi_a_dilated(r, bs, q_order, p_window);
            avg = (par % 2 == 0) ? avg + a : avg - a;
        }
        long prod_b = 1;
        for (int bi : vc.b) prod_b *= bi;
        Rational pref = Rational((r % 2 == 0) ? -1 : 1, 2 * prod_b) /
                        Rational(factorial(r));
        PQSeries coeff = TScalar(pref) * avg;
        for (const auto& [key, c] : vc.mat)
            o.add_entry(key.first, key.second, c * coeff);
    }
    return o;
}

OperatorSeries t_hat_operator(const SurfaceModel& s, int n, int q_order, int p_window) {
    OperatorSeries o(s, n, q_order);
    for (const auto& vc : vertex_components(s, s.cls("f"), n)) {
        const int r = static_cast<int>(vc.b.size());
        PQSeries avg(q_order);
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            if (r == 2 && (mask == 0 || mask == 3)) continue;  // S != {}, {1,2}
            int bs = 0;
            int par = 0;
            for (int i = 0; i < r; ++i)
                if (mask & (1u << i)) { bs += vc.b[i]; ++par; }
            if (bs == 0) continue;  // b_S A_{r-1}(p^{b_S}) -> 0 in the limit
            PQSeries a = TScalar(Rational(bs)) *
                         jacobi_a_dilated(r - 1, bs, q_order, p_window);
            avg = (par % 2 == 0) ? avg + a : avg - a;
        }
        long prod_b = 1;
        for (int bi : vc.b) prod_b *= bi;
        Rational pref = Rational((r % 2 == 0) ? -1 : 1, 2 * prod_b) /
                        Rational(factorial(r));
        PQSeries coeff = TScalar(pref) * avg;
        for (const auto& [key, c] : vc.mat)
            o.add_entry(key.first, key.second, c * coeff);
    }
    return o;
}

}  // namespace detail

}  // namespace hilbq
