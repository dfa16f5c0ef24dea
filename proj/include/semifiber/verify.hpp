#pragma once

// Semigroup-tree enumeration, the per-pair identity/theorem battery,
// campaign orchestration over all ordered pairs up to a genus bound, and
// deterministic JSON/CSV reporting.

#include <atomic>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "semifiber/errors.hpp"
#include "semifiber/fiber.hpp"
#include "semifiber/semigroup.hpp"
#include "semifiber/window.hpp"

namespace semifiber {

inline std::vector<NumericalSemigroup> enumerate_semigroups(int max_genus) {
    if (max_genus < 0 || max_genus > 20)
        throw GuardExceeded("max_genus " + std::to_string(max_genus) +
                            " outside supported range [0, 20]");
    std::vector<NumericalSemigroup> out;
    // Tree enumeration: each semigroup's children remove one minimal
    // generator exceeding the Frobenius number, which visits every semigroup
    // exactly once.
    std::function<void(const NumericalSemigroup&)> walk =
        [&](const NumericalSemigroup& H) {
            out.push_back(H);
            if (H.genus() >= max_genus) return;
            for (int g : H.generators()) {
                if (g <= H.frobenius()) continue;
                long bound = 2L * (std::max<long>(H.frobenius(), g) + 2) + 2;
                auto member = [&](long x) { return x != g && H.contains(x); };
                std::vector<int> gens;
                for (long m = 1; m <= bound; ++m) {
                    if (!member(m)) continue;
                    bool decomposable = false;
                    for (long a = 1; a < m && !decomposable; ++a)
                        if (member(a) && member(m - a)) decomposable = true;
                    if (!decomposable) gens.push_back(static_cast<int>(m));
                }
                walk(NumericalSemigroup::from_generators(gens));
            }
        };
    walk(NumericalSemigroup::from_generators({1}));
    std::sort(out.begin(), out.end(),
              [](const NumericalSemigroup& a, const NumericalSemigroup& b) {
                  if (a.genus() != b.genus()) return a.genus() < b.genus();
                  return a.generators() < b.generators();
              });
    return out;
}

struct IdentityItem {
    std::string id;
    long lhs = 0, rhs = 0;
    bool ok = false;
};

struct TheoremItem {
    std::string id;
    bool predicted = false, direct = false, ok = false;
};

struct SkippedItem {
    std::string id;
    std::string reason;
};

struct TheoremReport {
    std::vector<int> gens1, gens2;
    FiberClassification cls;
    std::string provenance;
    std::vector<IdentityItem> identities;
    std::vector<TheoremItem> theorems;
    std::vector<SkippedItem> skipped;
    int window_N = 0, window_D = 0;
    std::optional<bool> window_stable;  // unset when the recheck is skipped
    uint64_t seed = 0;
    std::string error;  // nonempty when the pair aborted with an exception

    bool all_ok() const {
        if (!error.empty()) return false;
        for (const auto& i : identities)
            if (!i.ok) return false;
        for (const auto& t : theorems)
            if (!t.ok) return false;
        if (window_stable && !*window_stable) return false;
        return true;
    }
};

struct CheckConfig {
    uint64_t seed = 0;
    bool stability_recheck = false;
    WindowOverrides window;
};

namespace verify_detail {

inline void add_num(TheoremReport& rep, const char* id, long lhs, long rhs) {
    rep.identities.push_back({id, lhs, rhs, lhs == rhs});
}

inline void add_iff(TheoremReport& rep, const char* id, bool lhs, bool rhs) {
    rep.identities.push_back({id, lhs ? 1 : 0, rhs ? 1 : 0, lhs == rhs});
}

/// Module equality recorded as the two colengths inside the joint sum, so a
/// failed identity is diagnosable from the report.
inline void add_eq_ideal(TheoremReport& rep, const char* id, const RelativeIdealZ& a,
                         const RelativeIdealZ& b) {
    RelativeIdealZ s = relideal::sum(a, b);
    long la = relideal::length_between(s, a);
    long lb = relideal::length_between(s, b);
    rep.identities.push_back({id, la, lb, la == 0 && lb == 0});
}

template <class K>
void add_eq_mod(TheoremReport& rep, const char* id, const Submodule<K>& a,
                const Submodule<K>& b) {
    Submodule<K> s = window_ops::mod_sum(a, b);
    long la = window_ops::length_quotient(s, a);
    long lb = window_ops::length_quotient(s, b);
    rep.identities.push_back({id, la, lb, la == 0 && lb == 0});
}

inline void skip(TheoremReport& rep, const char* id, std::string reason) {
    rep.skipped.push_back({id, std::move(reason)});
}

inline void add_theorem(TheoremReport& rep, const char* id, bool predicted,
                        bool direct) {
    rep.theorems.push_back({id, predicted, direct, predicted == direct});
}

/// Branch-level lemmas in the integer degree-set model (non-Gorenstein
/// branches only; they are vacuous or false for Gorenstein branches).
inline void branch_items(TheoremReport& rep, const NumericalSemigroup& H,
                         const RelativeIdealZ& Kc, const RingClassification& cls,
                         const char* side) {
    auto id = [&](const char* stem) {
        static thread_local std::string buf;
        buf = std::string(stem) + "_" + side;
        return buf.c_str();
    };
    if (cls.flags.gorenstein) {
        skip(rep, id("socle_scaling"), "branch is Gorenstein");
        skip(rep, id("stable_square"), "branch is Gorenstein");
        return;
    }
    RelativeIdealZ R = relideal::ring_ideal(H);
    RelativeIdealZ m = relideal::maximal_ideal(H);
    RelativeIdealZ a = relideal::colon(R, Kc);
    RelativeIdealZ Km = relideal::colon(Kc, m);
    add_eq_ideal(rep, id("socle_scaling"), relideal::product(a, Km),
                 relideal::product(a, Kc));
    add_eq_ideal(rep, id("socle_multiplication"),
                 relideal::product(a, relideal::colon(R, m)), a);
    RelativeIdealZ K2 = relideal::product(Kc, Kc);
    RelativeIdealZ K3 = relideal::product(K2, Kc);
    add_iff(rep, id("stable_square"), a == relideal::product(a, Kc), K2 == K3);
}

template <class K>
void run_single(TheoremReport& rep, const NumericalSemigroup& H1,
                const NumericalSemigroup& H2, const CheckConfig& cfg) {
    FiberRing<K> F = build_fiber<K>(H1, H2, cfg.window);
    rep.window_N = F.win().bound();
    rep.window_D = F.win().neg_offset();
    int fallbacks = 0;
    CanonicalIdeal<K> can = canonical_for(F, cfg.seed, &fallbacks);
    rep.provenance = provenance_name(can.provenance);
    rep.cls = classify_fiber(F, can, cfg.seed + 17);
    const Submodule<K>& X = can.X;
    const BranchWindow<K>& W = F.win();

    // --- identities on every pair ---
    add_num(rep, "v_additivity", F.v, F.left_class.v + F.right_class.v);
    add_num(rep, "e_additivity", F.e, F.left_class.e + F.right_class.e);
    add_num(rep, "product_ring_colength", window_ops::length_quotient(F.B, F.A), 1);
    add_eq_mod(rep, "max_ideal_decomposition", F.J,
               window_ops::decoupled_module(W, relideal::maximal_ideal(H1),
                                            relideal::maximal_ideal(H2)));
    {
        RelativeIdealZ m1 = relideal::maximal_ideal(H1);
        RelativeIdealZ m2 = relideal::maximal_ideal(H2);
        RelativeIdealZ m1n = m1, m2n = m2;
        Submodule<K> Jn = F.J;
        bool ok = true;
        for (int n = 2; n <= 3; ++n) {
            Jn = window_ops::mod_product(Jn, F.J);
            m1n = relideal::product(m1n, m1);
            m2n = relideal::product(m2n, m2);
            if (!(Jn == window_ops::decoupled_module(W, m1n, m2n))) ok = false;
        }
        rep.identities.push_back({"power_decomposition", ok ? 1 : 0, 1, ok});
    }

    branch_items(rep, H1, F.K_left, F.left_class, "left");
    branch_items(rep, H2, F.L_right, F.right_class, "right");

    bool both_singular = !H1.is_full() && !H2.is_full();
    bool one_dvr = F.dvr_count() == 1;

    if (both_singular) {
        add_num(rep, "type_sum_formula", F.r,
                F.left_class.r + F.right_class.r + 1);
        long lKR = relideal::length_between(F.K_left, relideal::ring_ideal(H1));
        long lLS = relideal::length_between(F.L_right, relideal::ring_ideal(H2));
        add_num(rep, "canonical_colength_sum", rep.cls.len_X_mod_A, lKR + lLS + 2);
        if (can.provenance == Provenance::direct_construction) {
            RelativeIdealZ m1 = relideal::maximal_ideal(H1);
            RelativeIdealZ m2 = relideal::maximal_ideal(H2);
            add_eq_mod(rep, "canonical_socle_splits",
                       window_ops::mod_colon(X, F.J, F.J),
                       window_ops::decoupled_module(W, relideal::colon(F.K_left, m1),
                                                    relideal::colon(F.L_right, m2)));
            add_eq_mod(rep, "max_ideal_times_canonical",
                       window_ops::mod_product(F.J, X),
                       window_ops::decoupled_module(
                           W, relideal::product(m1, F.K_left),
                           relideal::product(m2, F.L_right)));
            Submodule<K> dual = window_ops::mod_colon(F.A, X, F.J);
            bool gor1 = F.left_class.flags.gorenstein;
            bool gor2 = F.right_class.flags.gorenstein;
            RelativeIdealZ a1 = relideal::colon(relideal::ring_ideal(H1), F.K_left);
            RelativeIdealZ a2 = relideal::colon(relideal::ring_ideal(H2), F.L_right);
            if (!gor1 && !gor2)
                add_eq_mod(rep, "dual_shape", dual,
                           window_ops::decoupled_module(W, a1, a2));
            else if (gor1 && !gor2)
                add_eq_mod(rep, "dual_shape", dual,
                           window_ops::decoupled_module(W, m1, a2));
            else if (!gor1 && gor2)
                add_eq_mod(rep, "dual_shape", dual,
                           window_ops::decoupled_module(W, a1, m2));
            else
                skip(rep, "dual_shape", "both branches Gorenstein");
        } else {
            skip(rep, "canonical_socle_splits", "canonical ideal not from the direct construction");
            skip(rep, "max_ideal_times_canonical", "canonical ideal not from the direct construction");
            skip(rep, "dual_shape", "canonical ideal not from the direct construction");
        }
    } else {
        for (const char* id : {"type_sum_formula", "canonical_colength_sum",
                               "canonical_socle_splits", "max_ideal_times_canonical",
                               "dual_shape"})
            skip(rep, id, "a branch is a DVR");
    }

    if (one_dvr && can.provenance == Provenance::dvr_construction && can.z && can.q) {
        int d = H1.is_full() ? 0 : 1;  // DVR branch
        int o = 1 - d;
        const NumericalSemigroup& Ho = F.branch(o);
        const RelativeIdealZ& L = (o == 0) ? F.K_left : F.L_right;
        RelativeIdealZ So = relideal::ring_ideal(Ho);
        RelativeIdealZ no = relideal::maximal_ideal(Ho);
        RelativeIdealZ md = relideal::maximal_ideal(F.branch(d));
        RelativeIdealZ SL = relideal::colon(So, L);
        auto dec = [&](const RelativeIdealZ& on_d, const RelativeIdealZ& on_o) {
            return (d == 0) ? window_ops::decoupled_module(W, on_d, on_o)
                            : window_ops::decoupled_module(W, on_o, on_d);
        };
        // xi = (1, xi2) with xi2 = q_o * s^{-z}; rho its branchwise inverse
        auto xi = W.mul(*can.q, W.monomial(o, -*can.z));
        {
            auto unit_d = W.monomial(d, 0);
            for (size_t i = 0; i < xi.size(); ++i) xi[i] += unit_d[i];
        }
        auto rho = W.inverse(xi);
        auto rho_o = W.mul(rho, W.monomial(o, 0));  // branch-o component

        Submodule<K> XB = window_ops::mod_colon(X, F.B, F.J);
        add_eq_mod(rep, "dvr_dual_product_ring", XB,
                   window_ops::mod_scale(xi, dec(md, L)));
        {
            bool pairing = (W.mul(xi, rho_o) == W.monomial(o, 0));
            Submodule<K> Ln = dec(relideal::ring_ideal(F.branch(d)),
                                  relideal::colon(L, no));
            Submodule<K> Lm = dec(relideal::ring_ideal(F.branch(d)), L);
            auto rho_pure = rho_o;
            bool in_socle = Ln.contains(rho_pure) && !Lm.contains(rho_pure);
            add_iff(rep, "dvr_unit_pairing", pairing && in_socle, true);
        }
        add_eq_mod(rep, "dvr_decomposition", X, window_ops::mod_sum(XB, F.A));
        Submodule<K> dual = window_ops::mod_colon(F.A, X, F.J);
        // The dual-shape identities need (S:L)L inside n, which forces the
        // singular branch to be non-Gorenstein (otherwise S:L = S contains a
        // unit and n:L differs from S:L).
        bool o_gorenstein = F.branch_class(o).flags.gorenstein;
        if (!o_gorenstein) {
            add_eq_mod(rep, "dvr_dual", dual, window_ops::mod_scale(rho, dec(md, SL)));
            add_eq_mod(rep, "dvr_trace_product", window_ops::mod_product(dual, X),
                       dec(md, relideal::product(SL, L)));
        } else {
            skip(rep, "dvr_dual", "singular branch is Gorenstein");
            skip(rep, "dvr_trace_product", "singular branch is Gorenstein");
        }
        {
            Submodule<K> XJ = window_ops::mod_colon(X, F.J, F.J);
            bool proof_form =
                XJ == window_ops::mod_scale(
                          xi, dec(relideal::ring_ideal(F.branch(d)),
                                  relideal::colon(L, no)));
            bool stated_form =
                XJ == window_ops::mod_scale(
                          xi, dec(relideal::ring_ideal(F.branch(d)), SL));
            rep.identities.push_back({"dvr_socle_shape", stated_form ? 1 : 0,
                                      proof_form ? 1 : 0, proof_form});
        }
        {
            Submodule<K> X2 = window_ops::mod_product(X, X);
            Submodule<K> X3 = window_ops::mod_product(X2, X);
            RelativeIdealZ L2 = relideal::product(L, L);
            RelativeIdealZ L3 = relideal::product(L2, L);
            bool xs = (X2 == X3), ls = (L2 == L3);
            add_iff(rep, "dvr_square_transfer", xs, ls);
            if (o_gorenstein)
                skip(rep, "dvr_colength_transfer", "singular branch is Gorenstein");
            else if (xs)
                add_num(rep, "dvr_colength_transfer",
                        window_ops::length_quotient(F.A, dual),
                        relideal::length_between(So, SL));
            else
                skip(rep, "dvr_colength_transfer", "X-squares not stable");
        }
    } else if (one_dvr) {
        for (const char* id :
             {"dvr_dual_product_ring", "dvr_unit_pairing", "dvr_decomposition",
              "dvr_dual", "dvr_trace_product", "dvr_socle_shape",
              "dvr_square_transfer", "dvr_colength_transfer"})
            skip(rep, id, "no DVR-construction witness");
    } else {
        for (const char* id :
             {"dvr_dual_product_ring", "dvr_unit_pairing", "dvr_decomposition",
              "dvr_dual", "dvr_trace_product", "dvr_socle_shape",
              "dvr_square_transfer", "dvr_colength_transfer"})
            skip(rep, id, both_singular ? "no DVR branch" : "both branches are DVRs");
    }

    // --- theorems: predicted vs direct ---
    const RingFlags& dir = rep.cls.direct;
    const RingFlags& pre = rep.cls.predicted;
    add_theorem(rep, "gorenstein_iff_both_dvr", pre.gorenstein, dir.gorenstein);
    add_theorem(rep, "almost_gorenstein_transfer", pre.almost_gorenstein,
                dir.almost_gorenstein);
    add_theorem(rep, "generalized_gorenstein_transfer", pre.generalized_gorenstein,
                dir.generalized_gorenstein);
    add_theorem(rep, "two_almost_gorenstein_transfer", pre.two_almost_gorenstein,
                dir.two_almost_gorenstein);
    add_theorem(rep, "nearly_gorenstein_transfer", pre.nearly_gorenstein,
                dir.nearly_gorenstein);
    add_theorem(rep, "almost_iff_generalized", dir.almost_gorenstein,
                dir.generalized_gorenstein);
    add_theorem(rep, "chain_gorenstein_implies_almost", true,
                !dir.gorenstein || dir.almost_gorenstein);
    add_theorem(rep, "chain_almost_implies_nearly", true,
                !dir.almost_gorenstein || dir.nearly_gorenstein);
    add_theorem(rep, "chain_almost_implies_generalized", true,
                !dir.almost_gorenstein || dir.generalized_gorenstein);
    if (H1.generators() == H2.generators())
        add_theorem(rep, "diagonal_equivalence",
                    F.left_class.flags.almost_gorenstein, dir.almost_gorenstein);
}

}  // namespace verify_detail

template <class K>
TheoremReport check_pair(const NumericalSemigroup& H1, const NumericalSemigroup& H2,
                         const CheckConfig& cfg) {
    TheoremReport rep;
    rep.gens1 = H1.generators();
    rep.gens2 = H2.generators();
    rep.seed = cfg.seed;
    try {
        // retry with a larger window when a computation leaves the current one
        CheckConfig eff = cfg;
        for (int attempt = 0;; ++attempt) {
            try {
                verify_detail::run_single<K>(rep, H1, H2, eff);
                break;
            } catch (const PrecisionExhausted&) {
                if (attempt >= 2) throw;
                rep = TheoremReport{};
                rep.gens1 = H1.generators();
                rep.gens2 = H2.generators();
                rep.seed = cfg.seed;
                BranchWindow<K> probe(H1, H2, eff.window);
                eff.window.bound = probe.bound() + 16;
                eff.window.neg_offset = probe.neg_offset() + 8;
            }
        }
        if (cfg.stability_recheck) {
            TheoremReport again;
            again.gens1 = rep.gens1;
            again.gens2 = rep.gens2;
            again.seed = cfg.seed;
            CheckConfig big = cfg;
            big.stability_recheck = false;
            big.window.bound = rep.window_N + 8;
            big.window.neg_offset = rep.window_D + 2;
            verify_detail::run_single<K>(again, H1, H2, big);
            bool same = true;
            same &= (rep.cls.direct == again.cls.direct);
            same &= (rep.cls.predicted == again.cls.predicted);
            same &= (rep.cls.e == again.cls.e && rep.cls.v == again.cls.v &&
                     rep.cls.r == again.cls.r);
            same &= (rep.cls.len_X_mod_A == again.cls.len_X_mod_A &&
                     rep.cls.len_A_mod_c == again.cls.len_A_mod_c);
            same &= (rep.identities.size() == again.identities.size());
            if (same)
                for (size_t i = 0; i < rep.identities.size(); ++i)
                    same &= (rep.identities[i].ok == again.identities[i].ok);
            rep.window_stable = same;
        }
    } catch (const Error& e) {
        rep.error = e.what();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Campaign orchestration
// ---------------------------------------------------------------------------

struct CampaignConfig {
    int max_genus = 4;
    bool include_dvr = true;
    std::string field = "rational";  // "rational" or "prime:<p>"
    int jobs = 1;
    uint64_t seed = 0;
    WindowOverrides window;
    std::optional<bool> stability;  // default: recheck only for genus <= 4
};

struct CampaignResult {
    std::vector<TheoremReport> pairs;
    long checks = 0;
    long failures = 0;
    std::vector<std::string> counterexamples;
    bool negative_controls_ok = false;
};

inline uint64_t pair_seed(uint64_t master, const std::string& key) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h ^ master;
}

inline std::string pair_key(const std::vector<int>& g1, const std::vector<int>& g2) {
    std::ostringstream os;
    for (size_t i = 0; i < g1.size(); ++i) os << (i ? "," : "") << g1[i];
    os << "|";
    for (size_t i = 0; i < g2.size(); ++i) os << (i ? "," : "") << g2[i];
    return os.str();
}

/// Corrupted canonical candidates must fail the battery and a deliberately
/// broken prediction must register as a counterexample.
template <class K>
bool negative_control_suite(uint64_t seed) {
    NumericalSemigroup H = NumericalSemigroup::from_generators({2, 3});
    FiberRing<K> F = build_fiber<K>(H, H);
    if (validate_canonical(F, F.A, seed).all_ok()) return false;     // r(A) = 3
    if (validate_canonical(F, F.B, seed).all_ok()) return false;     // X:X = B
    if (validate_canonical(F, F.Abar, seed).all_ok()) return false;  // X:X = Abar
    // comparator self-test: flipping one predicted flag must break agreement
    CanonicalIdeal<K> can = canonical_for(F, seed);
    FiberClassification cls = classify_fiber(F, can, seed);
    if (!cls.agree) return false;
    FiberClassification broken = cls;
    broken.predicted.almost_gorenstein = !broken.predicted.almost_gorenstein;
    broken.agree = (broken.direct == broken.predicted);
    return !broken.agree;
}

template <class K>
CampaignResult run_campaign(const CampaignConfig& cfg) {
    auto sgs = enumerate_semigroups(cfg.max_genus);
    std::vector<std::pair<int, int>> index_pairs;
    for (size_t i = 0; i < sgs.size(); ++i)
        for (size_t j = 0; j < sgs.size(); ++j) {
            if (!cfg.include_dvr && (sgs[i].is_full() || sgs[j].is_full())) continue;
            index_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    CampaignResult res;
    res.pairs.resize(index_pairs.size());
    bool stability = cfg.stability.value_or(cfg.max_genus <= 4);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= index_pairs.size()) break;
            const auto& [i, j] = index_pairs[k];
            CheckConfig cc;
            cc.window = cfg.window;
            cc.stability_recheck = stability;
            cc.seed = pair_seed(cfg.seed,
                                pair_key(sgs[i].generators(), sgs[j].generators()));
            res.pairs[k] = check_pair<K>(sgs[i], sgs[j], cc);
        }
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& rep : res.pairs) {
        res.checks +=
            static_cast<long>(rep.identities.size() + rep.theorems.size());
        if (!rep.all_ok()) {
            ++res.failures;
            res.counterexamples.push_back(pair_key(rep.gens1, rep.gens2));
        }
    }
    res.negative_controls_ok = negative_control_suite<K>(cfg.seed + 101);
    if (!res.negative_controls_ok) {
        ++res.failures;
        res.counterexamples.push_back("negative_control_suite");
    }
    return res;
}

// ---------------------------------------------------------------------------
// Serialization (stable key order; deterministic given config and seed)
// ---------------------------------------------------------------------------

inline constexpr const char* kVersion = "1.0.0";

inline nlohmann::ordered_json flags_json(const RingFlags& f) {
    return nlohmann::ordered_json{{"gorenstein", f.gorenstein},
                                  {"almost_gorenstein", f.almost_gorenstein},
                                  {"generalized_gorenstein", f.generalized_gorenstein},
                                  {"two_almost_gorenstein", f.two_almost_gorenstein},
                                  {"nearly_gorenstein", f.nearly_gorenstein},
                                  {"is_dvr", f.is_dvr}};
}

inline nlohmann::ordered_json report_json(const TheoremReport& rep) {
    nlohmann::ordered_json j;
    j["pair"] = {{"gens1", rep.gens1}, {"gens2", rep.gens2}};
    if (!rep.error.empty()) {
        j["error"] = rep.error;
        return j;
    }
    nlohmann::ordered_json cls;
    cls["e"] = rep.cls.e;
    cls["v"] = rep.cls.v;
    cls["r"] = rep.cls.r;
    cls["flags"] = flags_json(rep.cls.direct);
    cls["predicted"] = flags_json(rep.cls.predicted);
    cls["agree"] = rep.cls.agree;
    cls["lengths"] = {{"len_X_mod_A", rep.cls.len_X_mod_A},
                      {"len_A_mod_c", rep.cls.len_A_mod_c}};
    j["classification"] = cls;
    j["provenance"] = rep.provenance;
    j["identities"] = nlohmann::ordered_json::array();
    for (const auto& i : rep.identities)
        j["identities"].push_back(
            {{"id", i.id}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"ok", i.ok}});
    j["theorems"] = nlohmann::ordered_json::array();
    for (const auto& t : rep.theorems)
        j["theorems"].push_back({{"id", t.id},
                                 {"predicted", t.predicted},
                                 {"direct", t.direct},
                                 {"ok", t.ok}});
    j["skipped"] = nlohmann::ordered_json::array();
    for (const auto& s : rep.skipped)
        j["skipped"].push_back({{"id", s.id}, {"reason", s.reason}});
    j["window"] = {{"N", rep.window_N},
                   {"D", rep.window_D},
                   {"stable", rep.window_stable ? nlohmann::ordered_json(*rep.window_stable)
                                                : nlohmann::ordered_json(nullptr)}};
    j["seed"] = rep.seed;
    return j;
}

inline nlohmann::ordered_json campaign_json(const CampaignConfig& cfg,
                                            const CampaignResult& res,
                                            const std::string& field_name) {
    nlohmann::ordered_json j;
    j["meta"] = {{"version", kVersion},
                 {"field", field_name},
                 {"seed", cfg.seed},
                 {"max_genus", cfg.max_genus}};
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& rep : res.pairs) j["pairs"].push_back(report_json(rep));
    j["summary"] = {{"pairs", res.pairs.size()},
                    {"checks", res.checks},
                    {"failures", res.failures},
                    {"counterexamples", res.counterexamples},
                    {"negative_controls_ok", res.negative_controls_ok}};
    return j;
}

inline std::string campaign_csv(const CampaignResult& res) {
    std::ostringstream os;
    os << "gens1;gens2;e;v;r;gorenstein;almost;generalized;two_almost;nearly;"
          "agree;ok\n";
    auto join = [](const std::vector<int>& g) {
        std::ostringstream s;
        for (size_t i = 0; i < g.size(); ++i) s << (i ? "," : "") << g[i];
        return s.str();
    };
    for (const auto& rep : res.pairs) {
        const auto& f = rep.cls.direct;
        os << join(rep.gens1) << ";" << join(rep.gens2) << ";" << rep.cls.e << ";"
           << rep.cls.v << ";" << rep.cls.r << ";" << f.gorenstein << ";"
           << f.almost_gorenstein << ";" << f.generalized_gorenstein << ";"
           << f.two_almost_gorenstein << ";" << f.nearly_gorenstein << ";"
           << rep.cls.agree << ";" << rep.all_ok() << "\n";
    }
    return os.str();
}

}  // namespace semifiber
