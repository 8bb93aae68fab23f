#include "wittsen/json_io.hpp"

namespace wittsen {

json to_json(const PAdic& x) {
    json j;
    j["p"] = x.prime();
    j["N"] = x.prec();
    j["residue"] = x.str();
    return j;
}

PAdic padic_from_json(const json& j) {
    unsigned long p = j.at("p").get<unsigned long>();
    int N = j.at("N").get<int>();
    mpz_class r(j.at("residue").get<std::string>());
    return PAdic(p, N, r);
}

json to_json(const Eisenstein& E) {
    json a = json::array();
    for (const auto& c : E.a) a.push_back(c.get_str());
    json j;
    j["p"] = E.p;
    j["coeffs"] = a;
    return j;
}

Eisenstein eisenstein_from_json(const json& j) {
    unsigned long p = j.at("p").get<unsigned long>();
    std::vector<mpz_class> a;
    for (const auto& c : j.at("coeffs")) a.emplace_back(c.get<std::string>());
    return Eisenstein(p, std::move(a));
}

namespace {
json ecoeff_list(const Eisenstein& E) {
    json a = json::array();
    for (const auto& c : E.a) a.push_back(c.get_str());
    return a;
}
}  // namespace

json to_json(const SRingElem& x) {
    json coeffs = json::array();
    int D = x.ring()->Em.degree();
    for (int i = 0; i < D; ++i) coeffs.push_back(x.rep().coeff(i).get_str());
    json j;
    j["p"] = x.prime();
    j["E"] = ecoeff_list(x.ring()->E);
    j["m"] = x.ring()->m;
    j["N"] = x.prec();
    j["coeffs"] = coeffs;
    return j;
}

json to_json(const DigitElem& x) {
    json digits = json::array();
    for (int k = 0; k < x.ring()->nord; ++k) {
        json d = json::array();
        for (int i = 0; i < x.ring()->E.e; ++i) d.push_back(x.digits()[k].coeff(i).get_str());
        digits.push_back(d);
    }
    json j;
    j["p"] = x.prime();
    j["E"] = ecoeff_list(x.ring()->E);
    j["order"] = x.ring()->nord;
    j["N"] = x.prec();
    j["digits"] = digits;
    return j;
}

json to_json(const DSElem& x) {
    json j;
    j["base"] = to_json(x.a);
    j["eps"] = to_json(x.b);
    return j;
}

json to_json(const DDElem& x) {
    json j;
    j["base"] = to_json(x.a);
    j["eps"] = to_json(x.b);
    return j;
}

json to_json(const GhostCheck& g) {
    json j;
    j["level"] = g.level;
    j["pass"] = g.pass;
    j["residual"] = g.residual;
    return j;
}

json to_json(const ValuationCheck& v) {
    json j;
    j["symbol"] = v.symbol;
    j["claimed"] = v.claimed;
    j["computed"] = v.computed;
    j["pass"] = v.pass;
    if (v.at_precision) j["at_precision"] = true;
    return j;
}

json to_json(const ConstructionReport& r) {
    json j;
    j["construction"] = r.construction;
    j["ok"] = r.ok;
    if (!r.error.empty()) {
        j["error"] = r.error;
        j["error_locus"] = r.error_locus;
    }
    j["precision"] = {{"target_N", r.budget.target_N},
                      {"work_N", r.budget.work_N},
                      {"L", r.budget.L},
                      {r.budget.order_name.empty() ? "order" : r.budget.order_name,
                       r.budget.order}};
    json gc = json::array();
    for (const auto& g : r.ghost_checks) gc.push_back(to_json(g));
    j["ghost_checks"] = gc;
    json vc = json::array();
    for (const auto& v : r.valuation_checks) vc.push_back(to_json(v));
    j["valuations"] = vc;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

json to_json(const BRecursionTable& t) {
    json j = json::array();
    for (const auto& e : t.entries) {
        j.push_back({{"m", e.m},
                     {"i", e.i},
                     {"d", to_json(e.d)},
                     {"claimed_val", e.claimed_val},
                     {"computed_val", e.computed_val},
                     {"pass", e.pass}});
    }
    return j;
}

json to_json(const SenModule& m) {
    json theta = json::array();
    for (int i = 0; i < m.rank; ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < m.rank; ++j2) {
            json coeffs = json::array();
            int D = m.ring.ring->Em.degree();
            for (int t = 0; t < D; ++t)
                coeffs.push_back(m.theta[i][j2].rep().coeff(t).get_str());
            row.push_back(coeffs);
        }
        theta.push_back(row);
    }
    json j;
    j["ring"] = {{"p", m.ring.E.p},
                 {"E", ecoeff_list(m.ring.E)},
                 {"n", m.ring.n},
                 {"N", m.ring.N}};
    j["rank"] = m.rank;
    j["theta"] = theta;
    return j;
}

SenModule sen_module_from_json(const json& j) {
    unsigned long p = j.at("ring").at("p").get<unsigned long>();
    std::vector<mpz_class> a;
    for (const auto& c : j.at("ring").at("E")) a.emplace_back(c.get<std::string>());
    Eisenstein E(p, std::move(a));
    int n = j.at("ring").at("n").get<int>();
    int N = j.at("ring").at("N").get<int>();
    SenRing R(E, n, N);
    int rank = j.at("rank").get<int>();
    SenModule M(R, rank);
    const json& theta = j.at("theta");
    for (int i = 0; i < rank; ++i)
        for (int k = 0; k < rank; ++k) {
            std::vector<mpz_class> cs;
            for (const auto& c : theta.at(i).at(k)) cs.emplace_back(c.get<std::string>());
            M.theta[i][k] = sring_from_poly(R.ring, UPoly(E.p, N, cs));
        }
    return M;
}

json to_json(const LeibnizReport& r) {
    json j;
    j["pass"] = r.pass;
    j["trials"] = r.trials;
    if (!r.pass) j["witness"] = r.witness;
    return j;
}

json to_json(const NilpotenceReport& r) {
    json j;
    j["nilpotent"] = r.nilpotent;
    j["dim"] = r.dim;
    if (r.nilpotent) j["index"] = r.index;
    else j["certificate"] = r.certificate;
    return j;
}

json to_json(const CohomologyReport& r) {
    auto fmt = [&](const std::vector<int>& v) {
        json a = json::array();
        for (int d : v) a.push_back("p^" + std::to_string(d));
        return a;
    };
    json j;
    j["H0"] = fmt(r.H0);
    j["H1"] = fmt(r.H1);
    j["divisors"] = r.all_divisors;
    j["N"] = r.N;
    return j;
}

json to_json(const WeightsReport& r) {
    json j;
    j["split"] = r.split;
    j["weights"] = r.weights;
    if (!r.split) j["residual_charpoly"] = r.residual_charpoly;
    return j;
}

json to_json(const StableLatticeResult& r) {
    auto mat = [&](const std::vector<std::vector<PAdic>>& m) {
        json rows = json::array();
        for (const auto& row : m) {
            json jr = json::array();
            for (const auto& x : row) jr.push_back(x.str());
            rows.push_back(jr);
        }
        return rows;
    };
    json j;
    j["certified"] = r.certified;
    j["dim"] = r.dim;
    j["check_prec"] = r.check_prec;
    j["basis"] = mat(r.basis);
    j["basis_denom_exp"] = r.basis_denom_exp;
    j["theta_on_lattice"] = mat(r.theta_on_lattice);
    j["umul_on_lattice"] = mat(r.umul_on_lattice);
    j["block_scalings"] = r.block_scalings;
    j["min_theta_val"] = r.min_theta_val;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

RationalTheta rational_theta_from_json(const json& j, const SenRing& R) {
    RationalTheta t;
    t.denom_exp = j.at("denom_exp").get<int>();
    const json& num = j.at("num");
    for (const auto& row : num) {
        std::vector<SRingElem> r;
        for (const auto& entry : row) {
            std::vector<mpz_class> cs;
            for (const auto& c : entry) cs.emplace_back(c.get<std::string>());
            r.push_back(sring_from_poly(R.ring, UPoly(R.E.p, R.N, cs)));
        }
        t.num.push_back(std::move(r));
    }
    return t;
}

json to_json(const DeltaVerifyReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je;
        je["family"] = e.family;
        je["i"] = e.i;
        je["pass"] = e.pass;
        if (!e.pass) je["diff"] = e.diff;
        entries.push_back(je);
    }
    json j;
    j["ok"] = r.ok;
    j["entries"] = entries;
    return j;
}

}  // namespace wittsen
