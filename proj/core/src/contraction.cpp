#include "chox/contraction.hpp"

#include <algorithm>
#include <set>

namespace chox {

long LocalComplex::rank(int n) const {
    auto it = ranks.find(n);
    return it == ranks.end() ? 0 : it->second;
}

IntMat LocalComplex::boundary(int n) const {
    auto it = d.find(n);
    if (it != d.end()) return it->second;
    return IntMat(rank(n - 1), rank(n));
}

IntMat LocalContraction::block(const LocalComplex& c, int n) const {
    auto it = gamma.find(n);
    if (it != gamma.end()) return it->second;
    return IntMat(c.rank(n + 1), c.rank(n));
}

LocalComplex piece_complex(const GradedChainComplex& c, const Simplex& s) {
    LocalComplex out;
    for (const auto& [k, r] : c.ranks)
        if (k.first == s) out.ranks[k.second] = r;
    for (const auto& [k, m] : c.diff)
        if (std::get<0>(k) == s && std::get<1>(k) == s) out.d[std::get<2>(k)] = m;
    return out;
}

LocalResult local_contract(const LocalComplex& c) {
    if (c.ranks.empty()) return LocalContraction{};
    int lo = c.ranks.begin()->first, hi = lo;
    for (const auto& [n, r] : c.ranks) {
        (void)r;
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    // homology must vanish everywhere; collect lifts as we go
    std::map<int, IntMat> lift;  // lift[n]: C_{n-1} -> C_n with d lift = 1 on im d
    for (int n = lo; n <= hi + 1; ++n) {
        IntMat dn = c.boundary(n);
        IntMat dn1 = c.boundary(n + 1);
        std::vector<Int> cyc;
        HomologySummary h = homology(dn, dn1, &cyc);
        if (n > hi) h = HomologySummary{};  // nothing above top degree
        if (n <= hi && !h.trivial()) {
            LocalWitness w;
            w.degree = n;
            w.summary = h;
            w.cycle = cyc;
            return w;
        }
    }
    for (int n = lo; n <= hi; ++n) {
        IntMat dn = c.boundary(n);
        if (dn.rows() == 0 || dn.cols() == 0) {
            lift[n] = IntMat(dn.cols(), dn.rows());
            continue;
        }
        SmithForm f = smith_normal_form(dn);
        // exactness makes every invariant a unit
        IntMat pseudo(dn.cols(), dn.rows());
        for (long i = 0; i < f.rank; ++i) {
            if (!(f.invariants[i] == 1 || f.invariants[i] == -1))
                throw error("non-unit invariant factor in an exact complex");
            pseudo.at(i, i) = f.invariants[i];
        }
        lift[n] = f.t * pseudo * f.s;
    }
    LocalContraction g;
    for (int n = lo; n <= hi; ++n) {
        long rn = c.rank(n);
        if (rn == 0) continue;
        IntMat ident = IntMat::identity(rn);
        IntMat ln = lift.count(n) ? lift[n] : IntMat(rn, c.rank(n - 1));
        IntMat ln1 = lift.count(n + 1) ? lift[n + 1] : IntMat(c.rank(n + 1), rn);
        IntMat gamma = ln1 * (ident - ln * c.boundary(n));
        if (!gamma.is_zero()) g.gamma[n] = std::move(gamma);
    }
    return g;
}

bool local_contraction_valid(const LocalComplex& c, const LocalContraction& g) {
    if (c.ranks.empty()) return true;
    int lo = c.ranks.begin()->first, hi = lo;
    for (const auto& [n, r] : c.ranks) {
        (void)r;
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    for (int n = lo; n <= hi; ++n) {
        long rn = c.rank(n);
        if (rn == 0) continue;
        IntMat should = c.boundary(n + 1) * g.block(c, n) + g.block(c, n - 1) * c.boundary(n);
        if (!(should - IntMat::identity(rn)).is_zero()) return false;
    }
    return true;
}

GradedHomotopy globalize_contraction(
    const GradedChainComplex& c, const std::map<Simplex, LocalContraction, SimplexOrder>& locals) {
    if (c.variant == Variant::Full)
        throw unsupported_variant_error("globalization needs the costar or star variant");
    for (const auto& [s, g] : locals) {
        LocalComplex lc = piece_complex(c, s);
        if (!local_contraction_valid(lc, g))
            throw invalid_local_contraction_error("local contraction fails at " + simplex_string(s));
    }
    // pieces actually present
    std::set<Simplex, SimplexOrder> pieces;
    for (const auto& [k, r] : c.ranks) {
        (void)r;
        pieces.insert(k.first);
    }
    for (const Simplex& s : pieces)
        if (!locals.count(s))
            throw invalid_local_contraction_error("missing local contraction at " + simplex_string(s));

    // flag recursion: M(tau,sigma) = P_tau on the diagonal and
    // M(tau,sigma) = -P_tau . sum_{upsilon} d(tau,upsilon) M(upsilon,sigma)
    GradedHomotopy p;
    p.on = &c;
    std::map<std::pair<Simplex, Simplex>, std::map<int, IntMat>> memo;
    std::map<Simplex, std::vector<std::pair<Simplex, const IntMat*>>> d_into;  // tau -> (upsilon, block)
    std::map<std::pair<Simplex, Simplex>, std::map<int, const IntMat*>> d_blocks;
    for (const auto& [k, m] : c.diff) {
        d_blocks[{std::get<0>(k), std::get<1>(k)}][std::get<2>(k)] = &m;
    }

    std::function<const std::map<int, IntMat>&(const Simplex&, const Simplex&)> flag_sum =
        [&](const Simplex& tau, const Simplex& sigma) -> const std::map<int, IntMat>& {
        auto key = std::make_pair(tau, sigma);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::map<int, IntMat> out;
        const LocalContraction& ptau = locals.at(tau);
        LocalComplex lc_tau = piece_complex(c, tau);
        if (tau == sigma) {
            for (const auto& [n, m] : ptau.gamma) out[n] = m;
        } else {
            // accumulate sum over upsilon strictly between tau and sigma (inclusive of sigma)
            std::map<int, IntMat> acc;  // degree n: C(sigma)_n -> C(tau)_n
            for (const auto& [pairk, degs] : d_blocks) {
                if (pairk.first != tau || pairk.second == tau) continue;
                const Simplex& ups = pairk.second;
                bool between = c.variant == Variant::Costar
                                   ? (is_face(tau, ups) && is_face(ups, sigma))
                                   : (is_face(ups, tau) && is_face(sigma, ups));
                if (!between) continue;
                const std::map<int, IntMat>& m_ups = flag_sum(ups, sigma);
                for (const auto& [n, mm] : m_ups) {
                    auto dit = degs.find(n + 1);
                    if (dit == degs.end()) continue;
                    IntMat prod = (*dit->second) * mm;  // C(sigma)_n -> C(tau)_n
                    if (prod.is_zero()) continue;
                    auto a = acc.find(n);
                    if (a == acc.end())
                        acc.emplace(n, std::move(prod));
                    else
                        a->second = a->second + prod;
                }
            }
            for (const auto& [n, mm] : acc) {
                IntMat gl = ptau.block(lc_tau, n);
                IntMat res = -(gl * mm);
                if (!res.is_zero()) out[n] = std::move(res);
            }
        }
        return memo.emplace(key, std::move(out)).first->second;
    };

    for (const Simplex& sigma : pieces)
        for (const Simplex& tau : pieces) {
            if (!variant_allows(c.variant, tau, sigma)) continue;
            const auto& m = flag_sum(tau, sigma);
            for (const auto& [n, mm] : m) p.set_block(tau, sigma, n, mm);
        }
    return p;
}

bool contraction_valid(const GradedChainComplex& c, const GradedHomotopy& p) {
    GradedChainMap b = homotopy_boundary(p);
    GradedChainMap one = identity_map(c);
    return map_equal(b, one);
}

bool homotopy_matches(const GradedHomotopy& p, const GradedChainMap& target) {
    return map_equal(homotopy_boundary(p), target);
}

ContractionResult is_contractible(const GradedChainComplex& c) {
    if (c.variant == Variant::Full)
        throw unsupported_variant_error(
            "contractibility by local pieces needs the costar or star variant");
    std::set<Simplex, SimplexOrder> pieces;
    for (const auto& [k, r] : c.ranks) {
        (void)r;
        pieces.insert(k.first);
    }
    std::map<Simplex, LocalContraction, SimplexOrder> locals;
    for (const Simplex& s : pieces) {
        LocalResult r = local_contract(piece_complex(c, s));
        if (std::holds_alternative<LocalWitness>(r)) {
            ContractibilityWitness w;
            w.piece = s;
            w.local = std::get<LocalWitness>(r);
            return w;
        }
        locals[s] = std::get<LocalContraction>(r);
    }
    ContractionCertificate cert;
    cert.homotopy = globalize_contraction(c, locals);
    cert.verified = contraction_valid(c, cert.homotopy);
    if (!cert.verified) throw error("globalized contraction failed exact verification");
    return cert;
}

EquivalenceData split_cone_contraction(const GradedChainMap& f, const GradedChainComplex& cone,
                                       const GradedHomotopy& q) {
    const GradedChainComplex& c = *f.source;
    const GradedChainComplex& d = *f.target;
    EquivalenceData out;
    out.inverse.source = f.target;
    out.inverse.target = f.source;
    out.on_source.on = f.source;
    out.on_target.on = f.target;
    for (const auto& [k, m] : q.blocks) {
        const auto& [tau, sigma, n] = k;
        (void)cone;
        long rc_t = c.rank(tau, n + 1), rd_t = d.rank(tau, n + 2);
        long rc_s = c.rank(sigma, n), rd_s = d.rank(sigma, n + 1);
        (void)rd_t;
        if (rc_t > 0 && rc_s > 0) {
            IntMat a(rc_t, rc_s);
            for (long i = 0; i < rc_t; ++i)
                for (long j = 0; j < rc_s; ++j) a.at(i, j) = m.at(i, j);
            if (!a.is_zero()) out.on_source.set_block(tau, sigma, n, std::move(a));
        }
        if (rc_t > 0 && rd_s > 0) {
            IntMat g(rc_t, rd_s);
            for (long i = 0; i < rc_t; ++i)
                for (long j = 0; j < rd_s; ++j) g.at(i, j) = m.at(i, rc_s + j);
            if (!g.is_zero()) out.inverse.set_block(tau, sigma, n + 1, std::move(g));
        }
        if (rd_t > 0 && rd_s > 0) {
            IntMat cc(rd_t, rd_s);
            for (long i = 0; i < rd_t; ++i)
                for (long j = 0; j < rd_s; ++j) cc.at(i, j) = -m.at(rc_t + i, rc_s + j);
            if (!cc.is_zero()) out.on_target.set_block(tau, sigma, n + 1, std::move(cc));
        }
    }
    return out;
}

EquivalenceCheck is_chain_equivalence(const GradedChainMap& f) {
    EquivalenceCheck out;
    ConeComplex cone = mapping_cone(f);
    auto keep = std::make_shared<GradedChainComplex>(std::move(cone.cone));
    out.cone = keep;
    ContractionResult r = is_contractible(*keep);
    if (std::holds_alternative<ContractibilityWitness>(r)) {
        out.equivalent = false;
        out.witness = std::get<ContractibilityWitness>(r);
        return out;
    }
    out.equivalent = true;
    out.cone_certificate = std::get<ContractionCertificate>(r);
    out.cone_certificate->keepalive = keep;
    out.data = split_cone_contraction(f, *keep, out.cone_certificate->homotopy);
    return out;
}

TotalHomologyReport total_homology(const GradedChainComplex& c) {
    TotalHomologyReport rep;
    TotalComplex t = totalize(c);
    if (t.layout.empty()) return rep;
    for (int n = t.lo; n <= t.hi; ++n) {
        std::vector<Int> cyc;
        HomologySummary h = homology(t.d.at(n), t.d.at(n + 1), &cyc);
        if (!h.trivial()) {
            rep.acyclic = false;
            rep.degree = n;
            rep.summary = h;
            long pos = 0;
            for (const auto& [s, r] : t.layout.at(n)) {
                std::vector<Int> part(cyc.begin() + pos, cyc.begin() + pos + r);
                bool nonzero = false;
                for (const Int& v : part)
                    if (v != 0) nonzero = true;
                if (nonzero) rep.witness_chain[{s, n}] = std::move(part);
                pos += r;
            }
            return rep;
        }
    }
    return rep;
}

namespace {

struct ElimStep {
    int n = 0;  // pivot in d[n]: row a in degree n-1, column b in degree n
    long row = 0, col = 0;
    Int u;
    std::vector<Int> phi;    // column b of d[n] at step time (E rows)
    std::vector<Int> theta;  // row a of d[n] at step time (E cols)
};

}  // namespace

GradedHomotopy acyclic_contraction(const GradedChainComplex& c, const BaseMetric* metric) {
    TotalComplex t = totalize(c);
    GradedHomotopy p;
    p.on = &c;
    if (t.layout.empty()) return p;
    const int lo = t.lo, hi = t.hi;
    std::map<int, IntMat> d = t.d;
    std::map<int, long> dim;
    for (int n = lo; n <= hi; ++n) {
        long k = 0;
        for (const auto& [s, r] : t.layout.at(n)) {
            (void)s;
            k += r;
        }
        dim[n] = k;
    }
    std::map<int, std::vector<Simplex>> piece_of;
    for (int n = lo; n <= hi; ++n)
        for (const auto& [s, r] : t.layout.at(n))
            for (long i = 0; i < r; ++i) piece_of[n].push_back(s);
    std::map<int, std::vector<bool>> dead;
    for (int n = lo; n <= hi; ++n) dead[n].assign(dim[n], false);

    std::vector<ElimStep> steps;
    while (true) {
        int best_n = 0;
        long best_r = -1, best_c = -1;
        double best_score = 0;
        bool found = false;
        for (int n = lo + 1; n <= hi; ++n) {
            const IntMat& dn = d.at(n);
            for (long i = 0; i < dn.rows(); ++i) {
                if (dead[n - 1][i]) continue;
                for (long j = 0; j < dn.cols(); ++j) {
                    if (dead[n][j]) continue;
                    const Int& v = dn.at(i, j);
                    if (!(v == 1 || v == -1)) continue;
                    double score = 0;
                    if (metric)
                        score = metric->distance(piece_of[n - 1][i], piece_of[n][j]).box.hi.get_d();
                    if (!found || score < best_score) {
                        found = true;
                        best_n = n;
                        best_r = i;
                        best_c = j;
                        best_score = score;
                    }
                }
            }
        }
        if (!found) break;
        const int n = best_n;
        IntMat& dn = d.at(n);
        ElimStep st;
        st.n = n;
        st.row = best_r;
        st.col = best_c;
        st.u = dn.at(best_r, best_c);
        st.phi.resize(dn.rows());
        for (long i = 0; i < dn.rows(); ++i)
            st.phi[i] = (i == best_r || dead[n - 1][i]) ? Int(0) : dn.at(i, best_c);
        st.theta.resize(dn.cols());
        for (long j = 0; j < dn.cols(); ++j)
            st.theta[j] = (j == best_c || dead[n][j]) ? Int(0) : dn.at(best_r, j);
        // reduced differential on E: psi - phi u^{-1} theta
        for (long i = 0; i < dn.rows(); ++i) {
            if (st.phi[i] == 0) continue;
            for (long j = 0; j < dn.cols(); ++j) {
                if (st.theta[j] == 0) continue;
                dn.at(i, j) -= st.phi[i] * st.u * st.theta[j];
            }
        }
        for (long j = 0; j < dn.cols(); ++j) dn.at(best_r, j) = 0;
        for (long i = 0; i < dn.rows(); ++i) dn.at(i, best_c) = 0;
        if (d.count(n + 1)) {
            IntMat& dn1 = d.at(n + 1);
            for (long j = 0; j < dn1.cols(); ++j) dn1.at(best_c, j) = 0;
        }
        if (d.count(n - 1)) {
            IntMat& dn_1 = d.at(n - 1);
            for (long i = 0; i < dn_1.rows(); ++i) dn_1.at(i, best_r) = 0;
        }
        dead[n - 1][best_r] = true;
        dead[n][best_c] = true;
        steps.push_back(std::move(st));
    }
    for (int n = lo; n <= hi; ++n)
        for (size_t i = 0; i < dead[n].size(); ++i)
            if (!dead[n][i])
                throw error("contraction of a non-acyclic complex requested");

    // replay backwards: Gamma := h + i Gamma p, all over the full bases
    std::map<int, IntMat> gamma;
    for (int n = lo; n <= hi; ++n)
        gamma[n] = IntMat(n + 1 <= hi ? dim[n + 1] : 0, dim[n]);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        const ElimStep& st = *it;
        const int n = st.n;
        // p: degree n col b -> 0; degree n-1 col a -> -u^{-1} phi
        // i: degree n row b gains -u^{-1} theta
        // compose only the affected degrees
        std::map<int, IntMat> next;
        for (int m = lo; m <= hi; ++m) {
            IntMat g = gamma[m];  // Gamma_old
            // right-compose with p at degree m
            if (m == n && g.cols() > 0) {
                for (long i = 0; i < g.rows(); ++i) g.at(i, st.col) = 0;
            }
            if (m == n - 1 && g.cols() > 0) {
                // column a := g * (-u^{-1} phi)
                for (long i = 0; i < g.rows(); ++i) {
                    Int acc(0);
                    for (long k = 0; k < g.cols(); ++k)
                        if (st.phi[k] != 0) acc += g.at(i, k) * st.phi[k];
                    g.at(i, st.row) = -st.u * acc;
                }
            }
            // left-compose with i at degree m+1
            if (m + 1 == n && g.rows() > 0) {
                // row b := -u^{-1} theta . g
                for (long j = 0; j < g.cols(); ++j) {
                    Int acc(0);
                    for (long k = 0; k < g.rows(); ++k)
                        if (st.theta[k] != 0) acc += st.theta[k] * g.at(k, j);
                    g.at(st.col, j) = -st.u * acc;
                }
            }
            next[m] = std::move(g);
        }
        // add h_step: single entry (b <- a) of value u^{-1} at degree n-1
        if (n - 1 >= lo) next[n - 1].at(st.col, st.row) += st.u;
        gamma = std::move(next);
    }

    // verify on the total complex, then re-block
    for (int n = lo; n <= hi; ++n) {
        IntMat should = (n + 1 <= hi ? t.d.at(n + 1) * gamma[n] : IntMat(dim[n], dim[n]));
        if (n - 1 >= lo) should = should + gamma[n - 1] * t.d.at(n);
        if (!(should - IntMat::identity(dim[n])).is_zero())
            throw error("elimination contraction failed exact verification");
    }
    for (int n = lo; n <= hi; ++n) {
        if (n + 1 > hi) continue;
        for (const auto& [tau, rt] : t.layout.at(n + 1))
            for (const auto& [sigma, rs] : t.layout.at(n)) {
                long ro = t.offset.at(n + 1).at(tau);
                long co = t.offset.at(n).at(sigma);
                IntMat blk(rt, rs);
                for (long i = 0; i < rt; ++i)
                    for (long j = 0; j < rs; ++j) blk.at(i, j) = gamma[n].at(ro + i, co + j);
                if (!blk.is_zero()) p.set_block(tau, sigma, n, std::move(blk));
            }
    }
    return p;
}

}  // namespace chox
