// Batch front-end: every construction and checker behind one binary with
// JSON reports on stdout.  Exit codes: 0 = all checks pass, 1 = a
// mathematical check failed, 2 = schema/parameter violation.

#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "wittsen/json_io.hpp"
#include "wittsen/witt_universal.hpp"

using namespace wittsen;
using nlohmann::json;

namespace {

constexpr unsigned long kDefaultSeed = 0x5eed5eedul;

std::vector<mpz_class> parse_coeffs(const std::string& s) {
    std::vector<mpz_class> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.emplace_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    return out;
}

Eisenstein make_E(unsigned long p, const std::string& e_coeffs) {
    if (e_coeffs.empty()) return Eisenstein::unramified(p);
    return Eisenstein(p, parse_coeffs(e_coeffs));
}

int finish(json report, const std::string& out_path, bool ok) {
    report["ok"] = ok;
    std::cout << report.dump(2) << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << report.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

json params_json(std::initializer_list<std::pair<std::string, json>> kv) {
    json j;
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

// ---- command runners (shared by the direct path and verify-report) ----

json run_construct_b(unsigned long p, int n, int L, int N, bool& ok) {
    auto r = construct_b_unramified(p, n, L, N);
    ok = r.report.ok;
    json j;
    j["command"] = "construct-b";
    j["params"] = params_json({{"p", p}, {"n", n}, {"L", L}, {"N", N}});
    j["report"] = to_json(r.report);
    j["recursion_table"] = to_json(r.table);
    j["b"] = witt_to_json(r.b);
    return j;
}

json run_construct_b_general(unsigned long p, const std::string& e_coeffs, int L, int N,
                             int digit_order, int k, bool& ok) {
    Eisenstein E = make_E(p, e_coeffs);
    json j;
    j["params"] = params_json({{"p", p},
                               {"E", to_json(E)},
                               {"L", L},
                               {"N", N},
                               {"digit_order", digit_order},
                               {"k", k}});
    if (k > 0) {
        auto r = construct_b_truncated(E, k, L, N);
        ok = r.report.ok;
        j["command"] = "construct-b-general";
        j["variant"] = "truncated";
        j["report"] = to_json(r.report);
        j["b"] = witt_to_json(r.b);
    } else {
        auto r = construct_b_general(E, L, N, digit_order);
        ok = r.report.ok;
        j["command"] = "construct-b-general";
        j["variant"] = "digit";
        j["report"] = to_json(r.report);
        j["b"] = witt_to_json(r.b);
    }
    return j;
}

json run_construct_c(unsigned long p, const std::string& e_coeffs, int L, int N, int digit_order,
                     int k, bool& ok) {
    Eisenstein E = make_E(p, e_coeffs);
    json j;
    j["params"] = params_json({{"p", p},
                               {"E", to_json(E)},
                               {"L", L},
                               {"N", N},
                               {"digit_order", digit_order},
                               {"k", k}});
    if (k > 0) {
        auto r = construct_c_truncated(E, k, L, N);
        ok = r.report.ok;
        j["command"] = "construct-c";
        j["variant"] = "truncated";
        j["report"] = to_json(r.report);
        j["c"] = witt_to_json(r.c);
    } else {
        auto r = construct_c(E, L, N, digit_order);
        ok = r.report.ok;
        j["command"] = "construct-c";
        j["variant"] = "digit";
        j["report"] = to_json(r.report);
        j["c"] = witt_to_json(r.c);
    }
    return j;
}

json run_solve_vf(unsigned long p, int L, int N, bool& ok) {
    auto r = solve_v_f(p, L, N);
    ok = r.report.ok;
    json j;
    j["command"] = "solve-vf";
    j["params"] = params_json({{"p", p}, {"L", L}, {"N", N}});
    j["report"] = to_json(r.report);
    j["x"] = witt_to_json(r.x);
    return j;
}

SenModule module_from_flags(unsigned long p, const std::string& e_coeffs, int n, int N, int rank,
                            bool have_twist, int twist_k, const std::string& variant,
                            long theta_scalar, const std::string& module_file) {
    if (!module_file.empty()) {
        std::ifstream f(module_file);
        if (!f) throw BadInput("cannot open module file " + module_file);
        json j = json::parse(f);
        return sen_module_from_json(j);
    }
    Eisenstein E = make_E(p, e_coeffs);
    SenRing R(E, n, N);
    if (have_twist) {
        TwistVariant tv = (variant == "ideal-over-p-power") ? TwistVariant::ideal_over_p_power
                                                            : TwistVariant::ideal_power;
        return make_twist(R, twist_k, tv);
    }
    SenModule M(R, rank);
    for (int i = 0; i < rank; ++i)
        M.theta[i][i] = SRingElem::from_int(R.ring, theta_scalar);
    return M;
}

json run_sen_check(const SenModule& M, int trials, unsigned long seed, bool& ok) {
    auto lrep = check_leibniz(M, trials, seed);
    auto nrep = check_nilpotence(M);
    auto wrep = sen_weights(M);
    ok = lrep.pass && nrep.nilpotent;
    json j;
    j["command"] = "sen-check";
    j["params"] = params_json({{"module", to_json(M)}, {"trials", trials}, {"seed", seed}});
    j["leibniz"] = to_json(lrep);
    j["nilpotence"] = to_json(nrep);
    j["weights"] = to_json(wrep);
    return j;
}

json run_sen_cohomology(const SenModule& M, bool& ok) {
    auto rep = sen_cohomology(M);
    ok = true;  // a computation, not a pass/fail check
    json j;
    j["command"] = "sen-cohomology";
    j["params"] = params_json({{"module", to_json(M)}});
    j["cohomology"] = to_json(rep);
    return j;
}

json run_delta_verify(unsigned long p, const std::string& e_coeffs, int N, int i_max, int k_max,
                      int gen_cap, bool& ok) {
    Eisenstein E = make_E(p, e_coeffs);
    auto ring = make_delta_ring(E, N, gen_cap);
    auto rep = verify_eta_on_delta_powers(ring, i_max);
    auto rep2 = theta_on_envelope_generators(p, N, i_max, k_max, gen_cap);
    ok = rep.ok && rep2.ok;
    json j;
    j["command"] = "delta-verify";
    j["params"] = params_json({{"p", p},
                               {"E", to_json(E)},
                               {"N", N},
                               {"i_max", i_max},
                               {"k_max", k_max},
                               {"gen_cap", gen_cap}});
    j["eta_on_delta_powers"] = to_json(rep);
    j["theta_on_envelope_generators"] = to_json(rep2);
    return j;
}

json run_witt_selftest(unsigned long p, int L, int N, int count, unsigned long seed, bool& ok) {
    std::mt19937_64 rng(seed);
    auto rnd = [&](int len) {
        WittVec<PAdic> x;
        for (int i = 0; i < len; ++i) {
            mpz_class acc = 0;
            for (int k = 0; k < N; ++k) acc = acc * p + static_cast<unsigned long>(rng() % p);
            x.c.push_back(PAdic(p, N, acc));
        }
        return x;
    };
    int fails = 0;
    std::string first_fail;
    auto expect = [&](bool cond, const std::string& what, int t) {
        if (!cond) {
            ++fails;
            if (first_fail.empty()) first_fail = what + " at trial " + std::to_string(t);
        }
    };
    for (int t = 0; t < count; ++t) {
        auto x = rnd(L), y = rnd(L);
        auto um = witt_universal_mul(x, y);
        auto gm = witt_mul(x, y);
        auto ua = witt_universal_add(x, y);
        auto ga = witt_add(x, y);
        for (int i = 0; i < L; ++i) {
            expect(um.c[i].same_value(gm.c[i]), "universal vs ghost mul", t);
            expect(ua.c[i].same_value(ga.c[i]), "universal vs ghost add", t);
        }
        auto fv = witt_F(witt_V(x));
        auto px = witt_scale(p, x);
        for (int i = 0; i < L; ++i) expect(fv.c[i].same_value(px.c[i]), "F(V(x)) = p x", t);
        auto xs = rnd(L - 1);
        auto lhs = witt_mul(witt_V(xs), y);
        auto rhs = witt_V(witt_mul(xs, witt_F(y)));
        for (int i = 0; i < L; ++i)
            expect(lhs.c[i].same_value(rhs.c[i]), "V(x)y = V(x F(y))", t);
        auto dxy = witt_delta(witt_mul(x, y));
        auto xp = witt_pow(x, p), yp = witt_pow(y, p);
        xp.c.pop_back();
        yp.c.pop_back();
        auto dx = witt_delta(x), dy = witt_delta(y);
        auto drhs = witt_add(witt_add(witt_mul(xp, dy), witt_mul(yp, dx)),
                             witt_scale(p, witt_mul(dx, dy)));
        for (int i = 0; i + 1 < L; ++i)
            expect(dxy.c[i].same_value(drhs.c[i]), "delta Leibniz", t);
    }
    ok = (fails == 0);
    json j;
    j["command"] = "witt-selftest";
    j["params"] = params_json(
        {{"p", p}, {"L", L}, {"N", N}, {"count", count}, {"seed", seed}});
    j["trials"] = count;
    j["failures"] = fails;
    if (fails) j["first_failure"] = first_fail;
    return j;
}

json run_sen_lattice(const std::string& module_file, unsigned long p, const std::string& e_coeffs,
                     int n, int N, int rank, int denom, const std::string& theta_entries,
                     bool& ok) {
    if (!module_file.empty()) {
        std::ifstream f(module_file);
        if (!f) throw BadInput("cannot open module file " + module_file);
        json j = json::parse(f);
        std::vector<mpz_class> ecs;
        for (const auto& c : j.at("ring").at("E")) ecs.emplace_back(c.get<std::string>());
        Eisenstein E2(j.at("ring").at("p").get<unsigned long>(), std::move(ecs));
        SenRing R2(E2, j.at("ring").at("n").get<int>(), j.at("ring").at("N").get<int>());
        RationalTheta t = rational_theta_from_json(j, R2);
        auto res = construct_stable_lattice(R2, j.at("rank").get<int>(), t);
        ok = res.certified;
        json out;
        out["command"] = "sen-lattice";
        out["params"] = j;
        out["lattice"] = to_json(res);
        return out;
    }
    // inline: diagonal theta with the given numerator entries over a common
    // denominator p^{-denom}
    Eisenstein E = make_E(p, e_coeffs);
    SenRing R(E, n, N);
    RationalTheta t;
    t.denom_exp = denom;
    std::vector<mpz_class> entries = parse_coeffs(theta_entries);
    if (static_cast<int>(entries.size()) != rank)
        throw BadInput("--theta-diag needs one entry per rank");
    t.num.assign(rank, std::vector<SRingElem>(rank, SRingElem::zero(R.ring)));
    for (int i = 0; i < rank; ++i) t.num[i][i] = SRingElem::from_int(R.ring, entries[i]);
    auto res = construct_stable_lattice(R, rank, t);
    ok = res.certified;
    json out;
    out["command"] = "sen-lattice";
    out["params"] = params_json({{"p", p},
                                 {"E", to_json(E)},
                                 {"n", n},
                                 {"N", N},
                                 {"rank", rank},
                                 {"denom_exp", denom},
                                 {"theta_diag", theta_entries}});
    out["lattice"] = to_json(res);
    return out;
}

int verify_report_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "cannot open report " << path << "\n";
        return 2;
    }
    json saved = json::parse(f);
    std::string cmd = saved.at("command").get<std::string>();
    const json& P = saved.at("params");
    bool ok = false;
    json fresh;
    auto e_spec_of = [](const json& ej) {
        Eisenstein E = eisenstein_from_json(ej);
        std::string s, sep;
        for (const auto& c : E.a) {
            s += sep + c.get_str();
            sep = ",";
        }
        return s;
    };
    if (cmd == "construct-b") {
        fresh = run_construct_b(P.at("p").get<unsigned long>(), P.at("n").get<int>(),
                                P.at("L").get<int>(), P.at("N").get<int>(), ok);
    } else if (cmd == "construct-b-general") {
        fresh = run_construct_b_general(P.at("p").get<unsigned long>(),
                                        e_spec_of(P.at("E")), P.at("L").get<int>(),
                                        P.at("N").get<int>(), P.at("digit_order").get<int>(),
                                        P.at("k").get<int>(), ok);
    } else if (cmd == "construct-c") {
        fresh = run_construct_c(P.at("p").get<unsigned long>(), e_spec_of(P.at("E")),
                                P.at("L").get<int>(), P.at("N").get<int>(),
                                P.at("digit_order").get<int>(), P.at("k").get<int>(), ok);
    } else if (cmd == "sen-lattice" && P.contains("theta_diag")) {
        fresh = run_sen_lattice("", P.at("p").get<unsigned long>(), e_spec_of(P.at("E")),
                                P.at("n").get<int>(), P.at("N").get<int>(),
                                P.at("rank").get<int>(), P.at("denom_exp").get<int>(),
                                P.at("theta_diag").get<std::string>(), ok);
    } else if (cmd == "sen-lattice") {
        // module-file form: the saved params are the module description
        std::vector<mpz_class> ecs;
        for (const auto& c2 : P.at("ring").at("E")) ecs.emplace_back(c2.get<std::string>());
        Eisenstein E2(P.at("ring").at("p").get<unsigned long>(), std::move(ecs));
        SenRing R2(E2, P.at("ring").at("n").get<int>(), P.at("ring").at("N").get<int>());
        RationalTheta t = rational_theta_from_json(P, R2);
        auto res = construct_stable_lattice(R2, P.at("rank").get<int>(), t);
        ok = res.certified;
        fresh["command"] = "sen-lattice";
        fresh["params"] = P;
        fresh["lattice"] = to_json(res);
    } else if (cmd == "solve-vf") {
        fresh = run_solve_vf(P.at("p").get<unsigned long>(), P.at("L").get<int>(),
                             P.at("N").get<int>(), ok);
    } else if (cmd == "witt-selftest") {
        fresh = run_witt_selftest(P.at("p").get<unsigned long>(), P.at("L").get<int>(),
                                  P.at("N").get<int>(), P.at("count").get<int>(),
                                  P.at("seed").get<unsigned long>(), ok);
    } else if (cmd == "sen-check") {
        SenModule M = sen_module_from_json(P.at("module"));
        fresh = run_sen_check(M, P.at("trials").get<int>(), P.at("seed").get<unsigned long>(),
                              ok);
    } else if (cmd == "sen-cohomology") {
        SenModule M = sen_module_from_json(P.at("module"));
        fresh = run_sen_cohomology(M, ok);
    } else if (cmd == "delta-verify") {
        Eisenstein E = eisenstein_from_json(P.at("E"));
        std::string e_coeffs;
        std::string sep;
        for (const auto& c : E.a) {
            e_coeffs += sep + c.get_str();
            sep = ",";
        }
        fresh = run_delta_verify(P.at("p").get<unsigned long>(), e_coeffs, P.at("N").get<int>(),
                                 P.at("i_max").get<int>(), P.at("k_max").get<int>(),
                                 P.at("gen_cap").get<int>(), ok);
    } else {
        std::cerr << "verify-report: unsupported command " << cmd << "\n";
        return 2;
    }
    fresh["ok"] = ok;
    bool same = (fresh == saved);
    json out;
    out["command"] = "verify-report";
    out["path"] = path;
    out["reproduced"] = same;
    out["saved_ok"] = saved.at("ok").get<bool>();
    out["fresh_ok"] = ok;
    std::cout << out.dump(2) << "\n";
    return same ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic Witt/Sen verification kernel"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // --out / --verify-report may follow a subcommand

    std::string out_path;
    app.add_option("--out", out_path, "also write the JSON report to this path");
    std::string verify_path;
    app.add_option("--verify-report", verify_path,
                   "re-run a saved report from its embedded parameters and compare");

    unsigned long p = 3;
    int n = 1, L = 3, N = 8, i_max = 3, k_max = 5, gen_cap = 4, count = 200, rank = 1;
    int digit_order = 0, k_trunc = 0, trials = 32, denom = 0, twist_k = 0;
    long theta_scalar = 0;
    unsigned long seed = kDefaultSeed;
    std::string e_coeffs, variant = "ideal-power", module_file, theta_diag;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--p", p, "prime");
        c->add_option("--N", N, "target p-adic precision");
        c->add_option("--seed", seed, "seed for randomized checks");
    };

    CLI::App* cb = app.add_subcommand("construct-b", "unit b over Z_p[[lambda]]/lambda^n");
    add_common(cb);
    cb->add_option("--n", n, "truncation order");
    cb->add_option("--L", L, "Witt length");

    CLI::App* cbg = app.add_subcommand("construct-b-general", "unit b over S[[E/p]]");
    add_common(cbg);
    cbg->add_option("--E", e_coeffs, "Eisenstein coefficients a0,...,ae");
    cbg->add_option("--L", L, "Witt length");
    cbg->add_option("--digit-order", digit_order, "override the E/p nilpotency order");
    cbg->add_option("--k", k_trunc, "use the S/E^k truncated variant instead");

    CLI::App* cc = app.add_subcommand("construct-c", "homotopy element c over S[[E/p]]");
    add_common(cc);
    cc->add_option("--E", e_coeffs, "Eisenstein coefficients a0,...,ae");
    cc->add_option("--L", L, "Witt length");
    cc->add_option("--digit-order", digit_order, "override the E/p nilpotency order");
    cc->add_option("--k", k_trunc, "use the S/E^k truncated variant instead");

    CLI::App* vf = app.add_subcommand("solve-vf", "solve iota(lambda) = V(F(x)) over W(Z_p)");
    add_common(vf);
    vf->add_option("--L", L, "Witt length");

    CLI::App* sc = app.add_subcommand("sen-check", "Leibniz + nilpotence + weights");
    add_common(sc);
    sc->add_option("--E", e_coeffs, "Eisenstein coefficients a0,...,ae");
    sc->add_option("--n", n, "truncation order");
    sc->add_option("--rank", rank, "module rank");
    auto* tw = sc->add_option("--twist", twist_k, "rank-1 twist exponent k");
    sc->add_option("--variant", variant, "ideal-power | ideal-over-p-power");
    sc->add_option("--theta-scalar", theta_scalar, "diagonal scalar operator");
    sc->add_option("--module-file", module_file, "JSON SenModule");
    sc->add_option("--trials", trials, "Leibniz trials");

    CLI::App* sh = app.add_subcommand("sen-cohomology", "kernel/cokernel invariants of Theta");
    add_common(sh);
    sh->add_option("--E", e_coeffs, "Eisenstein coefficients a0,...,ae");
    sh->add_option("--n", n, "truncation order");
    sh->add_option("--rank", rank, "module rank");
    auto* tw2 = sh->add_option("--twist", twist_k, "rank-1 twist exponent k");
    sh->add_option("--variant", variant, "ideal-power | ideal-over-p-power");
    sh->add_option("--theta-scalar", theta_scalar, "diagonal scalar operator");
    sh->add_option("--module-file", module_file, "JSON SenModule");

    CLI::App* sl = app.add_subcommand("sen-lattice", "Theta-stable lattice construction");
    add_common(sl);
    sl->add_option("--E", e_coeffs, "Eisenstein coefficients a0,...,ae");
    sl->add_option("--n", n, "truncation order");
    sl->add_option("--rank", rank, "module rank");
    sl->add_option("--denom", denom, "denominator exponent s: Theta = p^{-s} num");
    sl->add_option("--theta-diag", theta_diag, "diagonal numerator entries v1,...,vr");
    sl->add_option("--module-file", module_file, "JSON rational module");

    CLI::App* dv = app.add_subcommand("delta-verify", "eta/Theta formulas on delta generators");
    add_common(dv);
    dv->add_option("--E", e_coeffs, "Eisenstein coefficients a0,...,ae");
    dv->add_option("--i-max", i_max, "verify up to delta^i");
    dv->add_option("--k-max", k_max, "verify Theta(lambda^k) up to k");
    dv->add_option("--gen-cap", gen_cap, "delta-order cap");

    CLI::App* ws = app.add_subcommand("witt-selftest", "ghost vs universal backend battery");
    add_common(ws);
    ws->add_option("--L", L, "Witt length (<= 4)");
    ws->add_option("--count", count, "number of random pairs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!verify_path.empty()) return verify_report_file(verify_path);
        bool ok = false;
        // keep the report construction sequenced before `finish` reads `ok`
        if (cb->parsed()) {
            json j = run_construct_b(p, n, L, N, ok);
            return finish(std::move(j), out_path, ok);
        }
        if (cbg->parsed()) {
            json j = run_construct_b_general(p, e_coeffs, L, N, digit_order, k_trunc, ok);
            return finish(std::move(j), out_path, ok);
        }
        if (cc->parsed()) {
            json j = run_construct_c(p, e_coeffs, L, N, digit_order, k_trunc, ok);
            return finish(std::move(j), out_path, ok);
        }
        if (vf->parsed()) {
            json j = run_solve_vf(p, L, N, ok);
            return finish(std::move(j), out_path, ok);
        }
        if (sc->parsed()) {
            SenModule M = module_from_flags(p, e_coeffs, n, N, rank, tw->count() > 0, twist_k,
                                            variant, theta_scalar, module_file);
            json j = run_sen_check(M, trials, seed, ok);
            return finish(std::move(j), out_path, ok);
        }
        if (sh->parsed()) {
            SenModule M = module_from_flags(p, e_coeffs, n, N, rank, tw2->count() > 0, twist_k,
                                            variant, theta_scalar, module_file);
            json j = run_sen_cohomology(M, ok);
            return finish(std::move(j), out_path, ok);
        }
        if (sl->parsed()) {
            json j = run_sen_lattice(module_file, p, e_coeffs, n, N, rank, denom, theta_diag, ok);
            return finish(std::move(j), out_path, ok);
        }
        if (dv->parsed()) {
            json j = run_delta_verify(p, e_coeffs, N, i_max, k_max, gen_cap, ok);
            return finish(std::move(j), out_path, ok);
        }
        if (ws->parsed()) {
            json j = run_witt_selftest(p, L, N, count, seed, ok);
            return finish(std::move(j), out_path, ok);
        }
        std::cout << app.help() << "\n";
        return 2;
    } catch (const BadInput& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["ok"] = false;
        err["error"] = e.what();
        std::cout << err.dump(2) << "\n";
        return 1;
    }
}
