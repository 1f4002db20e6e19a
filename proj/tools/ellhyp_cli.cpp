#include <cstdio>
#include <iostream>
#include <regex>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellhyp/acceptance.hpp"
#include "ellhyp/ellhyp.hpp"

using json = nlohmann::ordered_json;
using namespace ellhyp;

namespace {

constexpr const char* kSchema = "ellhyp/1";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "x", "x,y" (re,im), "x+yi", "yi"
cd parse_complex(const std::string& s0) {
    std::string s;
    for (char ch : s0)
        if (ch != ' ') s += ch;
    auto comma = s.find(',');
    try {
        if (comma != std::string::npos) return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
        static const std::regex re(R"(^([+-]?[0-9.eE]+(?:[eE][+-]?\d+)?)?(?:([+-]?[0-9.]*(?:[eE][+-]?\d+)?)i)?$)");
        std::smatch m;
        if (std::regex_match(s, m, re) && (m[1].matched || m[2].matched)) {
            double x = m[1].matched ? std::stod(m[1]) : 0.0;
            double y = 0;
            if (m[2].matched) {
                std::string t = m[2];
                y = (t.empty() || t == "+") ? 1.0 : t == "-" ? -1.0 : std::stod(t);
            }
            return {x, y};
        }
    } catch (const std::exception&) {
    }
    throw UsageError("cannot parse complex number '" + s0 + "'");
}

Rational parse_rat(const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw UsageError("cannot parse rational '" + s + "'");
    }
}

// rationals stay exact; anything else is read as a double
struct Num {
    double value = 0;
    std::optional<Rational> exact;
};

Num parse_num(const std::string& s) {
    static const std::regex rat(R"(^\s*[+-]?\d+(\s*/\s*\d+)?\s*$)");
    Num n;
    if (std::regex_match(s, rat)) {
        n.exact = parse_rat(s);
        n.value = to_double(*n.exact);
        return n;
    }
    try {
        size_t used = 0;
        n.value = std::stod(s, &used);
        if (used != s.size()) throw UsageError("");
    } catch (const std::exception&) {
        throw UsageError("cannot parse number '" + s + "'");
    }
    return n;
}

json cj(cd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }
json cj(cd z, double err) { return json{{"re", z.real()}, {"im", z.imag()}, {"err", err}}; }

template <int N>
json mj(const Mat<cd, N>& m) {
    json rows = json::array();
    for (int i = 0; i < N; ++i) {
        json r = json::array();
        for (int j = 0; j < N; ++j) r.push_back(cj(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

// entries are polynomials in z = exp(2 i pi / zeta_order)
template <int N>
json mj_exact(const Mat<Cyc, N>& m) {
    json rows = json::array();
    for (int i = 0; i < N; ++i) {
        json r = json::array();
        for (int j = 0; j < N; ++j) r.push_back(m(i, j).str());
        rows.push_back(r);
    }
    json out;
    out["zeta_order"] = m(0, 0).field().n;
    out["rows"] = rows;
    return out;
}

json header(const RunConfig& cfg, const std::string& cmd) {
    return json{{"schema", kSchema}, {"command", cmd}, {"seed", cfg.seed}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

PeriodOptions period_opts(const RunConfig& cfg) {
    PeriodOptions o;
    o.tol = cfg.tol;
    o.max_level = cfg.max_level;
    return o;
}

std::string rat_str(const Rational& r) { return to_string(r); }

struct LeafArgs {
    std::string alpha1 = "1/2", a0, ainf, r0, rinf;
    long long max_den = 1000000;

    void add(CLI::App* c) {
        c->add_option("--alpha1", alpha1, "exponent alpha1 in (0,1)");
        c->add_option("--a0", a0, "holonomy a0 (absolute)");
        c->add_option("--ainf", ainf, "holonomy a_inf (absolute)");
        c->add_option("--r0", r0, "a0 / alpha1 as an exact rational");
        c->add_option("--rinf", rinf, "a_inf / alpha1 as an exact rational");
        c->add_option("--max-den", max_den, "largest denominator tried by rational recognition");
    }
    LiftedHolonomy build() const {
        double al = parse_num(alpha1).value;
        if (!r0.empty() || !rinf.empty()) {
            if (r0.empty() || rinf.empty()) throw UsageError("--r0 and --rinf must be given together");
            return LiftedHolonomy::exact(al, parse_rat(r0), parse_rat(rinf));
        }
        if (a0.empty() || ainf.empty()) throw UsageError("give --a0/--ainf or --r0/--rinf");
        return LiftedHolonomy::from_real(al, parse_num(a0).value, parse_num(ainf).value);
    }
};

struct MnArgs {
    long N = 2, m = 0, n = 1;
    std::string alpha1 = "1/2", tau = "0,1";

    void add(CLI::App* c) {
        c->add_option("--N", N, "level N >= 2");
        c->add_option("--m", m, "leaf index m");
        c->add_option("--n", n, "leaf index n");
        c->add_option("--alpha1", alpha1, "exponent alpha1 in (0,1)");
        c->add_option("--tau", tau, "modulus, e.g. 0.3,1.2 or 0.3+1.2i");
    }
    double al() const {
        double a = parse_num(alpha1).value;
        if (!(a > 0 && a < 1)) throw UsageError("--alpha1 must lie in (0,1)");
        return a;
    }
};

int run_verify(const RunConfig& cfg, const std::string& suite) {
    const bool full = suite == "full";
    auto res = acceptance::run_all(cfg.seed, full);
    json j = header(cfg, "verify");
    j["suite"] = suite;
    json arr = json::array();
    bool all = true;
    for (auto& r : res) {
        arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
        all = all && r.pass;
    }
    j["criteria"] = arr;
    j["pass"] = all;
    emit(j);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elliptic hypergeometric periods, conifold angles and holonomy"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path, format;
    std::optional<double> tol_override;
    std::optional<std::uint64_t> seed_override;
    app.add_option("--config", config_path, "config file (key = value); defaults to $ELLHYP_CONFIG");
    app.add_option("--format", format, "output format: json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed_override, "seed for randomized suites");
    app.add_option("--tol", tol_override, "quadrature tolerance");

    int rc = 0;
    auto prepare = [&] {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw UsageError("cannot open config " + config_path);
            cfg = parse_config(f);
        } else {
            cfg = load_config();
        }
        if (!format.empty()) cfg.format = format;
        if (seed_override) cfg.seed = *seed_override;
        if (tol_override) cfg.tol = *tol_override;
        cfg.validate();
    };

    // theta
    auto* th = app.add_subcommand("theta", "theta function and its derivatives");
    std::string th_u = "0.1,0.05", th_tau = "0,1";
    th->add_option("--u", th_u, "argument u");
    th->add_option("--tau", th_tau, "modulus tau");
    th->callback([&] {
        prepare();
        ModularPoint m(parse_complex(th_tau), cfg.tau_min);
        cd u = parse_complex(th_u);
        auto t = theta(u, m, 4);
        json j = header(cfg, "theta");
        j["u"] = cj(u);
        j["tau"] = cj(m.tau);
        j["value"] = cj(t.value);
        json d = json::array();
        for (auto& x : t.du) d.push_back(cj(x));
        j["du"] = d;
        j["dtau"] = cj(t.dtau);
        j["quasi_period_residual"] =
            rel_err(theta_quasi_period(u, m), -std::exp(-I * pi * m.tau - 2.0 * I * pi * u) * t.value);
        emit(j);
    });

    // leaf
    auto* leaf = app.add_subcommand("leaf", "leaf classification");
    leaf->require_subcommand(1);
    LeafArgs la;
    auto* lc = leaf->add_subcommand("classify", "classify the leaf through a holonomy");
    la.add(lc);
    lc->callback([&] {
        prepare();
        DetectionBounds bd;
        bd.max_den = la.max_den;
        auto c = classify_leaf(la.build(), bd);
        json j = header(cfg, "leaf classify");
        j["kind"] = to_string(c.kind);
        j["N"] = c.N ? json(*c.N) : json(nullptr);
        j["delta"] = c.delta;
        if (c.kind == LeafKind::cylinder) j["relation"] = c.relation;
        emit(j);
    });
    auto* ln = leaf->add_subcommand("normal-form", "canonical representative of the orbit");
    la.add(ln);
    ln->callback([&] {
        prepare();
        DetectionBounds bd;
        bd.max_den = la.max_den;
        auto nf = orbit_normal_form(la.build(), bd);
        json j = header(cfg, "leaf normal-form");
        j["N"] = nf.N;
        j["r0"] = rat_str(*nf.canonical.r0);
        j["rinf"] = rat_str(*nf.canonical.r_inf);
        j["a0"] = nf.canonical.a0;
        j["ainf"] = nf.canonical.a_inf;
        emit(j);
    });

    // homology
    auto* hom = app.add_subcommand("homology", "twisted homology matrices");
    hom->require_subcommand(1);
    auto* hm = hom->add_subcommand("matrix", "intersection, hermitian or connection matrix");
    std::string h_kind = "II", h_a1 = "1/3", h_a0 = "1/4", h_ai = "1/5";
    bool h_float = false;
    hm->add_option("--kind", h_kind, "II, IH, II3 or a connection kind (HTwist, HTrans1, HTrans2, VTrans1, VTrans2, HT2, VT2)");
    hm->add_option("--alpha1", h_a1, "exponent of rho1 = exp(2 i pi alpha1)");
    hm->add_option("--a0", h_a0, "exponent of rho0");
    hm->add_option("--ainf", h_ai, "exponent of rho_inf");
    hm->add_flag("--float", h_float, "floating entries even for rational input");
    hm->callback([&] {
        prepare();
        Num x1 = parse_num(h_a1), x0 = parse_num(h_a0), xi = parse_num(h_ai);
        json j = header(cfg, "homology matrix");
        j["kind"] = h_kind;
        const bool exact = !h_float && x1.exact && x0.exact && xi.exact;
        j["exact"] = exact;
        auto fill = [&](auto ch, auto to_json) {
            if (h_kind == "II") j["matrix"] = to_json(intersection2(ch));
            else if (h_kind == "II3") j["matrix"] = to_json(intersection3(ch));
            else if (h_kind == "IH") {
                if constexpr (std::is_same_v<decltype(ch), Character<cd>>) j["matrix"] = to_json(hermitian_form(ch));
                else j["matrix_times_2i"] = to_json(hermitian_form_times_2i(ch));
            } else {
                auto c = connection_matrix(parse_conn_kind(h_kind), ch);
                j["matrix"] = c.dim == 3 ? to_json(c.m3) : to_json(c.m2);
                j["identity_residual"] = connection_relation_residual(parse_conn_kind(h_kind), ch);
            }
        };
        if (exact) {
            auto ch = character_exact(*x1.exact, *x0.exact, *xi.exact);
            fill(ch, [](const auto& m) { return mj_exact(m); });
        } else {
            fill(character_from(x1.value, x0.value, xi.value), [](const auto& m) { return mj(m); });
        }
        emit(j);
    });

    // periods
    auto* per = app.add_subcommand("periods", "period integrals");
    per->require_subcommand(1);
    auto* pe = per->add_subcommand("eval", "periods F and W over gamma0 and gamma_inf");
    MnArgs pa;
    pa.add(pe);
    pe->callback([&] {
        prepare();
        ModularPoint m(parse_complex(pa.tau), cfg.tau_min);
        auto a = LiftedHolonomy::leaf_mn(pa.al(), pa.m, pa.n, pa.N);
        auto o = period_opts(cfg);
        BranchedIntegrand f(a, m);
        auto F0 = period_F(f, Cycle::gamma0, Weight::one, o);
        auto Fi = period_F(f, Cycle::gamma_inf, Weight::one, o);
        auto W0 = period_F(f, Cycle::gamma0, Weight::rho_prime, o);
        auto Wi = period_F(f, Cycle::gamma_inf, Weight::rho_prime, o);
        json j = header(cfg, "periods eval");
        j["tau"] = cj(m.tau);
        j["F0"] = cj(F0.value, F0.est_error);
        j["Finf"] = cj(Fi.value, Fi.est_error);
        j["W0"] = cj(W0.value, W0.est_error);
        j["Winf"] = cj(Wi.value, Wi.est_error);
        j["est_error"] = F0.est_error + Fi.est_error + W0.est_error + Wi.est_error;
        emit(j);
    });

    // ode
    auto* ode = app.add_subcommand("ode", "Gauss-Manin system");
    ode->require_subcommand(1);
    MnArgs oa;
    bool o_mano = false;
    auto* oc = ode->add_subcommand("check", "residuals of the periods against the system");
    oa.add(oc);
    oc->add_flag("--mano", o_mano, "use the theta-quotient integrand");
    oc->callback([&] {
        prepare();
        ModularPoint m(parse_complex(oa.tau), cfg.tau_min);
        OdeReport r = o_mano ? check_mano(int(oa.m), int(oa.n), int(oa.N), oa.al(), m, cfg.ode_tol)
                             : check_ode(LiftedHolonomy::leaf_mn(oa.al(), oa.m, oa.n, oa.N), m, cfg.ode_tol);
        json j = header(cfg, "ode check");
        j["system"] = o_mano ? "mano" : "gauss_manin";
        j["first_order"] = {{"gamma0", r.first_order[0]}, {"gamma_inf", r.first_order[1]}};
        j["second_order"] = {{"gamma0", r.second_order[0]}, {"gamma_inf", r.second_order[1]}};
        j["q_forms_agreement"] = r.q_forms_agreement;
        j["q_fd_agreement"] = r.q_fd_agreement;
        j["step"] = r.h;
        j["tol"] = r.tol;
        j["pass"] = r.pass;
        emit(j);
        rc = r.pass ? 0 : 1;
    });
    auto* om = ode->add_subcommand("matrix", "connection matrix and scalar coefficients");
    oa.add(om);
    om->add_flag("--mano", o_mano, "use the theta-quotient integrand");
    om->callback([&] {
        prepare();
        ModularPoint m(parse_complex(oa.tau), cfg.tau_min);
        json j = header(cfg, "ode matrix");
        if (o_mano) {
            auto M = mano_matrix(int(oa.m), int(oa.n), int(oa.N), oa.al(), m);
            j["system"] = "mano";
            j["matrix"] = mj(M.mat());
            j["Adot"] = cj(M.Adot);
            j["scalar_q"] = cj(mano_scalar_coefficient(M));
        } else {
            auto a = LiftedHolonomy::leaf_mn(oa.al(), oa.m, oa.n, oa.N);
            auto M = gm_matrix(a, m);
            auto s = system_to_scalar(a, m);
            j["system"] = "gauss_manin";
            j["matrix"] = mj(M.mat());
            j["scalar_p"] = cj(s.p);
            j["scalar_q"] = cj(s.q);
            j["scalar_q_trace_form"] = cj(s.q_trace_form);
            j["scalar_q_finite_difference"] = cj(s.q_fd);
        }
        auto ix = indicial(oa.m, oa.N, oa.al());
        j["indicial"] = {{"s_plus", ix.s_plus}, {"s_minus", ix.s_minus}, {"nu", ix.nu}};
        emit(j);
    });

    // conifold
    auto* con = app.add_subcommand("conifold", "cusps and conifold angles");
    con->require_subcommand(1);
    auto* ct = con->add_subcommand("table", "cusp table of Y1(N), or Y(N) with --full");
    long c_N = 5;
    std::string c_a1 = "1/2";
    bool c_full = false;
    ct->add_option("--N", c_N, "level N >= 2");
    ct->add_option("--alpha1", c_a1, "exponent alpha1 in (0,1)");
    ct->add_flag("--full", c_full, "principal level Y(N)");
    ct->callback([&] {
        prepare();
        if (format.empty()) cfg.format = "csv";
        Rational al = parse_rat(c_a1);
        if (!(al > 0 && al < 1)) throw UsageError("--alpha1 must lie in (0,1)");
        auto cs = c_full ? cusps_gammaN(c_N) : cusps_gamma1(c_N);
        auto orb = c_full ? std::vector<OrbifoldPoint>{} : orbifold_points(c_N);
        if (cfg.format == "csv") {
            std::cout << "cusp_rep,class,width,angle_over_2pi_alpha1\n";
            for (auto& c : cs)
                std::cout << c.rep_str() << ',' << c.class_str() << ',' << c.width << ',' << rat_str(c.angle_coeff) << "\n";
            for (auto& o : orb) std::cout << o.rep << ",orbifold,," << rat_str(o.angle_over_2pi / al) << "\n";
            return;
        }
        json j = header(cfg, "conifold table");
        j["N"] = c_N;
        j["alpha1"] = rat_str(al);
        j["group"] = c_full ? "Gamma(N)" : "Gamma1(N)";
        json rows = json::array();
        for (auto& c : cs)
            rows.push_back({{"cusp_rep", c.rep_str()}, {"class", c.class_str()}, {"width", c.width},
                            {"angle_over_2pi_alpha1", rat_str(c.angle_coeff)},
                            {"angle_over_2pi", rat_str(c.angle_coeff * al)}});
        j["cusps"] = rows;
        json o = json::array();
        for (auto& p : orb) o.push_back({{"point", p.rep}, {"angle_over_2pi", rat_str(p.angle_over_2pi)}});
        j["orbifold_points"] = o;
        emit(j);
    });

    // volume
    auto* vol = app.add_subcommand("volume", "hyperbolic volume of Y1(N) with conifold angles");
    std::optional<long> v_N, v_p;
    bool v_veech = false;
    long v_bound = 101;
    std::string v_a1 = "1/2";
    auto* vN = vol->add_option("--N", v_N, "level N >= 4");
    auto* vp = vol->add_option("--prime", v_p, "prime level, closed form");
    auto* vv = vol->add_flag("--veech", v_veech, "compare p^-2 vol(Y1(p)) with the limit");
    vN->excludes(vp)->excludes(vv);
    vp->excludes(vv);
    vol->add_option("--bound", v_bound, "largest prime considered by --veech");
    vol->add_option("--alpha1", v_a1, "exponent alpha1 in (0,1)");
    vol->callback([&] {
        prepare();
        Rational al = parse_rat(v_a1);
        json j = header(cfg, "volume");
        j["alpha1"] = rat_str(al);
        if (v_veech) {
            auto v = veech_volume(al, v_bound);
            j["prime"] = v.prime;
            j["limit"] = v.exact;
            j["empirical"] = v.empirical;
            j["ratio"] = rat_str(v.ratio);
        } else if (v_p) {
            if (!is_prime(*v_p) || *v_p < 5) throw UsageError("--prime needs a prime >= 5");
            auto r = volume_Y1(*v_p, al);
            j["N"] = *v_p;
            j["volume_over_pi"] = rat_str(r.volume_over_pi);
            j["closed_form_over_pi"] = rat_str(prime_volume_over_pi(*v_p, al));
            j["volume"] = r.volume();
        } else if (v_N) {
            auto r = volume_Y1(*v_N, al);
            j["N"] = r.N;
            j["genus"] = r.genus;
            j["cusps"] = r.cusps;
            j["volume_over_pi"] = rat_str(r.volume_over_pi);
            j["volume"] = r.volume();
        } else {
            throw UsageError("give --N, --prime or --veech");
        }
        emit(j);
    });

    // holonomy
    auto* hol = app.add_subcommand("holonomy", "holonomy of Gamma1(N) on the periods");
    hol->require_subcommand(1);
    long h_N = 5;
    std::string ha1 = "1/2", h_mat = "1,1,0,1", h_tau;
    auto add_h = [&](CLI::App* c) {
        c->add_option("--N", h_N, "level N >= 2");
        c->add_option("--alpha1", ha1, "exponent alpha1 in (0,1)");
        c->add_option("--matrix", h_mat, "group element a,b,c,d");
    };
    auto parse_g = [&] {
        std::vector<long> v;
        std::stringstream ss(h_mat);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                v.push_back(std::stol(tok));
            } catch (const std::exception&) {
                throw UsageError("--matrix expects four integers a,b,c,d");
            }
        }
        if (v.size() != 4) throw UsageError("--matrix expects four integers a,b,c,d");
        return GroupElement::matrix(v[0], v[1], v[2], v[3]);
    };
    auto* he = hol->add_subcommand("eval", "raw and normalized holonomy matrices");
    add_h(he);
    he->callback([&] {
        prepare();
        auto g = parse_g();
        Num al = parse_num(ha1);
        auto h = holonomy_matrix(g, h_N, al.value);
        json j = header(cfg, "holonomy eval");
        j["word"] = h.word.str();
        j["raw"] = mj(h.raw);
        j["normalized"] = mj(h.normalized);
        j["imag_residual"] = h.imag_residual;
        j["ih_residual"] = h.ih_residual;
        if (al.exact) {
            auto x = holonomy_matrix_exact(g, h_N, *al.exact);
            j["exact"] = {{"raw", mj_exact(x.raw)},
                          {"normalized", mj_exact(x.normalized)},
                          {"ih_preserved", x.ih_preserved},
                          {"projectively_real", x.real_projectively}};
        }
        emit(j);
    });
    auto* hc = hol->add_subcommand("check", "compare the holonomy with the numeric monodromy of the periods");
    add_h(hc);
    hc->add_option("--tau", h_tau, "base point; defaults to (1+i)/N + 0.02+0.01i");
    hc->callback([&] {
        prepare();
        auto g = parse_g();
        double al = parse_num(ha1).value;
        cd tau = h_tau.empty() ? cd(1.0 / h_N, 1.0 / h_N) + cd(0.02, 0.01) : parse_complex(h_tau);
        auto r = monodromy_numeric_check(g, h_N, al, tau, 1e-6, cfg.tau_min, period_opts(cfg));
        json j = header(cfg, "holonomy check");
        j["tau"] = cj(r.tau);
        j["g_tau"] = cj(r.gtau);
        j["predicted"] = mj(r.predicted);
        j["residual"] = r.residual;
        j["scalar"] = cj(r.scalar);
        j["fitted"] = mj(r.fitted);
        j["fitted_trace"] = cj(r.fitted_trace);
        j["fit_vs_predicted"] = r.fit_vs_predicted;
        j["fitted_ih_residual"] = r.fitted_ih_residual;
        j["tol"] = r.tol;
        j["pass"] = r.pass;
        emit(j);
        rc = r.pass ? 0 : 1;
    });

    // verify
    auto* ver = app.add_subcommand("verify", "acceptance suites");
    std::string suite = "fast";
    ver->add_option("--suite", suite, "fast: invariant suites; full: adds slow numerical checks")
        ->check(CLI::IsMember({"fast", "full"}));
    ver->callback([&] {
        prepare();
        rc = run_verify(cfg, suite);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        json j{{"schema", kSchema}, {"error", e.what()}};
        std::cerr << j.dump() << "\n";
        return 1;
    }
    return rc;
}
