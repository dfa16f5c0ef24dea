// Command-line front end: classify single semigroup rings and fiber
// products, verify one pair against the identity/theorem battery, or run a
// full campaign over all pairs up to a genus bound.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "semifiber/fiber.hpp"
#include "semifiber/semigroup.hpp"
#include "semifiber/verify.hpp"

namespace {

using namespace semifiber;
using nlohmann::ordered_json;

struct Options {
    std::string command;
    std::string gens1, gens2;
    bool json = false, csv = false;
    std::string field = "rational";
    std::optional<int> window, neg_offset;
    int jobs = 1;
    uint64_t seed = 0;
    int max_genus = 4;
    std::string out;
};

ordered_json classification_json(const NumericalSemigroup& H,
                                 const RingClassification& c) {
    ordered_json j;
    j["gens"] = H.generators();
    j["e"] = c.e;
    j["v"] = c.v;
    j["F"] = H.frobenius();
    j["genus"] = H.genus();
    j["r"] = c.r;
    j["flags"] = flags_json(c.flags);
    j["lengths"] = {{"len_K_mod_R", c.len_K_mod_R}, {"len_R_mod_c", c.len_R_mod_c}};
    return j;
}

void print_flags_table(std::ostream& os, const RingFlags& f) {
    os << "  gorenstein             " << (f.gorenstein ? "yes" : "no") << "\n"
       << "  almost gorenstein      " << (f.almost_gorenstein ? "yes" : "no") << "\n"
       << "  generalized gorenstein " << (f.generalized_gorenstein ? "yes" : "no") << "\n"
       << "  2-almost gorenstein    " << (f.two_almost_gorenstein ? "yes" : "no") << "\n"
       << "  nearly gorenstein      " << (f.nearly_gorenstein ? "yes" : "no") << "\n"
       << "  dvr                    " << (f.is_dvr ? "yes" : "no") << "\n";
}

int cmd_classify_sg(const Options& opt) {
    NumericalSemigroup H = NumericalSemigroup::from_generators(parse_generators(opt.gens1));
    RingClassification c = classify_ring(H);
    if (opt.json) {
        std::cout << classification_json(H, c).dump(2) << "\n";
    } else {
        std::cout << "semigroup <" << H.to_string() << ">\n"
                  << "  e = " << c.e << ", v = " << c.v << ", F = " << H.frobenius()
                  << ", genus = " << H.genus() << ", r = " << c.r << "\n"
                  << "  l(K/R) = " << c.len_K_mod_R << ", l(R/c) = " << c.len_R_mod_c
                  << "\n";
        print_flags_table(std::cout, c.flags);
    }
    return 0;
}

template <class K>
int cmd_classify_fiber(const Options& opt, WindowOverrides ov) {
    NumericalSemigroup H1 = NumericalSemigroup::from_generators(parse_generators(opt.gens1));
    NumericalSemigroup H2 = NumericalSemigroup::from_generators(parse_generators(opt.gens2));
    FiberRing<K> F = build_fiber<K>(H1, H2, ov);
    CanonicalIdeal<K> can = canonical_for(F, opt.seed);
    FiberClassification cls = classify_fiber(F, can, opt.seed + 17);
    if (opt.json) {
        ordered_json j;
        j["pair"] = {{"gens1", H1.generators()}, {"gens2", H2.generators()}};
        j["e"] = cls.e;
        j["v"] = cls.v;
        j["r"] = cls.r;
        j["flags"] = flags_json(cls.direct);
        j["predicted"] = flags_json(cls.predicted);
        j["agree"] = cls.agree;
        j["lengths"] = {{"len_X_mod_A", cls.len_X_mod_A},
                        {"len_A_mod_c", cls.len_A_mod_c}};
        j["provenance"] = provenance_name(can.provenance);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "fiber product <" << H1.to_string() << "> x_k <" << H2.to_string()
                  << ">\n"
                  << "  e = " << cls.e << ", v = " << cls.v << ", r = " << cls.r
                  << ", l(X/A) = " << cls.len_X_mod_A << ", l(A/c) = " << cls.len_A_mod_c
                  << "\n"
                  << "direct:\n";
        print_flags_table(std::cout, cls.direct);
        std::cout << "predicted:\n";
        print_flags_table(std::cout, cls.predicted);
        std::cout << "agree: " << (cls.agree ? "yes" : "no") << "\n";
    }
    return cls.agree ? 0 : 1;
}

template <class K>
int cmd_verify_pair(const Options& opt, WindowOverrides ov) {
    NumericalSemigroup H1 = NumericalSemigroup::from_generators(parse_generators(opt.gens1));
    NumericalSemigroup H2 = NumericalSemigroup::from_generators(parse_generators(opt.gens2));
    CheckConfig cc;
    cc.seed = opt.seed;
    cc.window = ov;
    cc.stability_recheck = true;
    TheoremReport rep = check_pair<K>(H1, H2, cc);
    if (opt.json) {
        std::cout << report_json(rep).dump(2) << "\n";
    } else {
        std::cout << "pair " << pair_key(rep.gens1, rep.gens2) << "\n";
        if (!rep.error.empty()) {
            std::cout << "  error: " << rep.error << "\n";
        } else {
            for (const auto& i : rep.identities)
                std::cout << "  identity " << i.id << ": lhs=" << i.lhs
                          << " rhs=" << i.rhs << " " << (i.ok ? "ok" : "FAIL") << "\n";
            for (const auto& t : rep.theorems)
                std::cout << "  theorem " << t.id << ": predicted=" << t.predicted
                          << " direct=" << t.direct << " " << (t.ok ? "ok" : "FAIL")
                          << "\n";
            for (const auto& s : rep.skipped)
                std::cout << "  skipped " << s.id << " (" << s.reason << ")\n";
            std::cout << "  window N=" << rep.window_N << " D=" << rep.window_D
                      << " stable="
                      << (rep.window_stable ? (*rep.window_stable ? "yes" : "NO")
                                            : "unchecked")
                      << "\n";
        }
    }
    return rep.all_ok() ? 0 : 1;
}

template <class K>
int cmd_campaign(const Options& opt, WindowOverrides ov, const std::string& field_name) {
    CampaignConfig cfg;
    cfg.max_genus = opt.max_genus;
    cfg.field = opt.field;
    cfg.jobs = opt.jobs;
    cfg.seed = opt.seed;
    cfg.window = ov;
    CampaignResult res = run_campaign<K>(cfg);
    ordered_json j = campaign_json(cfg, res, field_name);
    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f) {
            std::cerr << "cannot write " << opt.out << "\n";
            return 2;
        }
        f << j.dump(2) << "\n";
        if (opt.csv) {
            std::string csv_path = opt.out;
            auto pos = csv_path.rfind(".json");
            if (pos != std::string::npos && pos == csv_path.size() - 5)
                csv_path = csv_path.substr(0, pos);
            csv_path += ".csv";
            std::ofstream c(csv_path);
            if (!c) {
                std::cerr << "cannot write " << csv_path << "\n";
                return 2;
            }
            c << campaign_csv(res);
        }
    } else if (opt.json) {
        std::cout << j.dump(2) << "\n";
    } else if (opt.csv) {
        std::cout << campaign_csv(res);
    }
    std::cout << "pairs=" << res.pairs.size() << " checks=" << res.checks
              << " failures=" << res.failures << "\n";
    return res.failures == 0 ? 0 : 1;
}

template <class K>
int dispatch(const Options& opt, const std::string& field_name) {
    WindowOverrides ov{opt.window, opt.neg_offset};
    if (opt.command == "classify-fiber") return cmd_classify_fiber<K>(opt, ov);
    if (opt.command == "verify-pair") return cmd_verify_pair<K>(opt, ov);
    if (opt.command == "campaign") return cmd_campaign<K>(opt, ov, field_name);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classifier and verifier for one-dimensional fiber products of "
                 "numerical semigroup rings"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* c) {
        c->add_flag("--json", opt.json, "emit JSON on stdout");
        c->add_option("--field", opt.field, "coefficient field: rational | prime:<p>")
            ->capture_default_str();
        c->add_option("--window", opt.window, "window bound override (N)");
        c->add_option("--neg-offset", opt.neg_offset, "negative offset override (D)");
        c->add_option("--seed", opt.seed, "seed for randomized internals")
            ->capture_default_str();
    };

    CLI::App* sg = app.add_subcommand("classify-sg", "classify one semigroup ring");
    sg->add_option("gens", opt.gens1, "comma-separated generators")->required();
    sg->add_flag("--json", opt.json, "emit JSON on stdout");

    CLI::App* fib = app.add_subcommand("classify-fiber", "classify a fiber product");
    fib->add_option("gens1", opt.gens1, "left generators")->required();
    fib->add_option("gens2", opt.gens2, "right generators")->required();
    add_common(fib);

    CLI::App* vp = app.add_subcommand("verify-pair",
                                      "run the identity/theorem battery on one pair");
    vp->add_option("gens1", opt.gens1, "left generators")->required();
    vp->add_option("gens2", opt.gens2, "right generators")->required();
    add_common(vp);

    CLI::App* camp = app.add_subcommand("campaign",
                                        "verify all ordered pairs up to a genus bound");
    add_common(camp);
    camp->add_flag("--csv", opt.csv, "also export the CSV summary");
    camp->add_option("--jobs", opt.jobs, "worker threads")->capture_default_str();
    camp->add_option("--max-genus", opt.max_genus, "genus bound")->capture_default_str();
    camp->add_option("--out", opt.out, "report output path (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    opt.command = app.get_subcommands().front()->get_name();

    try {
        if (opt.command == "classify-sg") return cmd_classify_sg(opt);
        if (opt.field == "rational") return dispatch<semifiber::RationalField>(opt, "rational");
        if (opt.field.rfind("prime:", 0) == 0) {
            uint64_t p = std::stoull(opt.field.substr(6));
            semifiber::PrimeField::set_modulus(p);
            return dispatch<semifiber::PrimeField>(opt, semifiber::PrimeField::name());
        }
        std::cerr << "unknown field '" << opt.field << "'\n";
        return 2;
    } catch (const semifiber::BadOverride& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const semifiber::NotCofinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const semifiber::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
