#include "lct/verdict.hpp"

#include <array>
#include <atomic>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unistd.h>

#include "lct/errors.hpp"

namespace lct {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::LctHolds: return "LCT_HOLDS";
        case Verdict::LctFails: return "LCT_FAILS";
        case Verdict::Unknown: return "UNKNOWN";
        case Verdict::Smooth: return "SMOOTH";
        case Verdict::QhCoordinateLimit: return "QH_COORDINATE_LIMIT";
    }
    return "UNKNOWN";
}

std::string to_string(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Fired: return "fired";
        case ConditionStatus::NotFired: return "not-fired";
        case ConditionStatus::NotApplicable: return "not-applicable";
    }
    return "not-applicable";
}

namespace {

std::string q(const Rational& r) { return rational_to_string(r); }

std::array<std::pair<const char*, const Condition*>, 4> named_conditions(const LctReport& r) {
    return {{{"a", &r.a}, {"b", &r.b}, {"c", &r.c}, {"d", &r.d}}};
}

std::string weights_text(const WeightSystem& ws) {
    std::string s = "(";
    for (std::size_t i = 0; i < ws.weights.size(); ++i) s += (i ? ", " : "") + std::to_string(ws.weights[i]);
    return s + ")";
}

/// Exponents a_i when f = sum c_i x_i^a_i with every variable present once and a_i >= 2.
std::optional<std::vector<int>> brieskorn_pham_exponents(const Polynomial& f) {
    std::vector<int> a(f.nvars(), 0);
    if (f.size() != f.nvars()) return std::nullopt;
    for (const auto& [m, c] : f.terms()) {
        std::size_t hit = f.nvars();
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            if (m.e[i] == 0) continue;
            if (hit != f.nvars()) return std::nullopt;
            hit = i;
        }
        if (hit == f.nvars() || a[hit] != 0 || m.e[hit] < 2) return std::nullopt;
        a[hit] = m.e[hit];
    }
    return a;
}

Polynomial with_nvars(const Polynomial& p, std::size_t nvars) {
    Polynomial r(nvars);
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = nvars; i < kMaxVars; ++i)
            if (m.e[i] != 0) throw PreconditionError("polynomial uses a dropped variable");
        r.add_term(m, c);
    }
    return r;
}

EngineOptions engine_options(const AnalyzeOptions& opt, bool want_c0) {
    EngineOptions eo;
    eo.order = opt.order;
    eo.x_degree = opt.x_degree;
    eo.max_order = opt.max_order;
    eo.want_c0 = want_c0;
    return eo;
}

SelfCheckItem compare_spectra(std::string name, const Spectrum& got, const Spectrum& want) {
    SelfCheckItem it{std::move(name), got == want, ""};
    it.detail = it.passed ? "match" : "engine " + spectrum_to_string(got) + " vs expected " + spectrum_to_string(want);
    return it;
}

LogderSummary logder_summary(const Polynomial& f, int bound, bool check_invariants) {
    LogderSummary s;
    s.degree_bound = bound > 0 ? bound : default_logder_degree_bound(f);
    const DerlogResult dr = derlog_generators(f, s.degree_bound);
    s.complete = dr.complete;
    const bool order3 = f.m_adic_order() >= 3;
    for (std::size_t g = 0; g < dr.generators.size(); ++g) {
        const Derivation& d = dr.generators[g];
        s.generators.push_back(d);
        s.residues.push_back(log_residue(d));
        try {
            const LinearPart lp = linear_part(d.coeffs);
            s.traces.push_back(lp.trace);
            s.nilpotent.push_back(lp.nilpotent);
        } catch (const NotInMDelta& e) {
            s.traces.push_back(0);
            s.nilpotent.push_back(false);
            s.problems.push_back("generator " + std::to_string(g) + ": " + e.what());
            continue;
        }
        if (!check_invariants) continue;
        if (sgn(s.traces.back()) != 0)
            s.problems.push_back("generator " + std::to_string(g) + ": linear part has trace " + q(s.traces.back()));
        if (order3 && !s.nilpotent.back())
            s.problems.push_back("generator " + std::to_string(g) + ": linear part is not nilpotent");
        if (sgn(s.residues.back()) != 0)
            s.problems.push_back("generator " + std::to_string(g) + ": residue " + q(s.residues.back()));
    }
    return s;
}

void fill_spectral(LctReport& r, const SpectralAnalysis& sa) {
    r.spectrum = sa.spectrum;
    const MonodromyInfo mi = monodromy_info(sa.spectrum);
    r.alpha1 = mi.alpha1;
    r.alpha2 = mi.alpha2;
    r.eigenvalue_one = mi.has_eigenvalue_one;
    r.order = sa.order;
    r.x_degree = sa.x_degree;
    for (const auto& n : sa.notes) r.notes.push_back(n);
}

void quasihomogeneous_branch(LctReport& r, const Polynomial& f, const MilnorData& md, const AnalyzeOptions& opt) {
    const std::string na = "f is quasihomogeneous; the obstruction conditions concern nonquasihomogeneous germs";
    for (Condition* c : {&r.a, &r.b, &r.c, &r.d}) *c = {ConditionStatus::NotApplicable, na};
    try {
        fill_spectral(r, analyze_spectrum(md, engine_options(opt, false)));
    } catch (const Error& e) {
        // The verdict does not depend on the spectrum here.
        r.notes.push_back(std::string("spectrum not computed: ") + e.what());
    }
    r.weights = detect_weights(f);
    if (!r.weights && f.nvars() == 2) {
        r.verdict = Verdict::LctHolds;
        r.justification.push_back(
            "f lies in its Jacobian ideal, so D is quasihomogeneous and positive weights exist in suitable "
            "coordinates, although none are visible in the given ones");
        r.justification.push_back(
            "for plane curves the Holland-Mond range 1 <= i <= n-1 is empty whatever the weights, so the "
            "criterion holds");
        return;
    }
    if (!r.weights) {
        r.verdict = Verdict::QhCoordinateLimit;
        r.justification.push_back(
            "f lies in its Jacobian ideal, so D is quasihomogeneous, but no positive integer weights make f "
            "weighted homogeneous in the given coordinates");
        r.justification.push_back("the Holland-Mond criterion needs explicit weights; change coordinates and rerun");
        return;
    }
    const HollandMondResult hm = holland_mond_verdict(f, md, *r.weights);
    r.holland_mond = hm;
    const std::string ws = "weights " + weights_text(*r.weights) + ", degree " + std::to_string(r.weights->degree);
    if (hm.holds) {
        r.verdict = Verdict::LctHolds;
        if (hm.checked.empty())
            r.justification.push_back("Holland-Mond criterion with " + ws +
                                      ": the range 1 <= i <= n-1 is empty, nothing to check");
        else
            r.justification.push_back("Holland-Mond criterion with " + ws +
                                      ": every graded piece (O/J_f)_{i r - sum w}, 1 <= i <= n-1, vanishes");
    } else {
        r.verdict = Verdict::LctFails;
        for (const auto& w : hm.offending)
            r.justification.push_back("Holland-Mond criterion with " + ws + ": (O/J_f) in degree " +
                                      std::to_string(w.degree) + " (i = " + std::to_string(w.i) +
                                      ") has dimension " + std::to_string(w.dim));
    }
}

void obstruction_branch(LctReport& r, const MilnorData& md, const AnalyzeOptions& opt) {
    const SpectralAnalysis sa = analyze_spectrum(md, engine_options(opt, true));
    fill_spectral(r, sa);
    const Rational& a1 = *r.alpha1;
    const Rational& a2 = *r.alpha2;

    std::size_t integer_count = 0;
    for (const auto& e : sa.spectrum)
        if (e.alpha.get_den() == 1) integer_count += e.mult;
    if (!*r.eigenvalue_one)
        r.a = {ConditionStatus::Fired, "no spectral number is an integer, so 1 is not a monodromy eigenvalue"};
    else
        r.a = {ConditionStatus::NotFired, std::to_string(integer_count) + " integer spectral number(s)"};

    if (sgn(a1) > 0)
        r.b = {ConditionStatus::Fired, "alpha1 = " + q(a1) + " > 0"};
    else
        r.b = {ConditionStatus::NotFired, "alpha1 = " + q(a1) + " <= 0"};

    if (sgn(a1) < 0 && !sa.c0) throw ConsistencyFailure("eigenvalue-zero piece missing");
    auto membership = [&](MembershipVariant v, const std::string& what) {
        const C0Membership m = c0_membership(*sa.c0, v);
        r.h0_n_direct = m.direct;
        std::string detail = sa.c0->dim == 0 ? "C^0 = 0, so " + what + " holds trivially"
                                             : what + (m.member ? " holds" : " fails");
        detail += m.direct ? "; H_0 + N(C^0) is direct" : "; H_0 + N(C^0) is not direct";
        return Condition{m.member ? ConditionStatus::Fired : ConditionStatus::NotFired, detail};
    };

    if (sgn(a1) < 0 && sgn(a2) == 0)
        r.d = membership(MembershipVariant::D, "[dx] in H_0 + N(C^0)");
    else
        r.d = {ConditionStatus::NotApplicable, "needs alpha1 < 0 = alpha2; alpha2 = " + q(a2)};

    if (sgn(a1) < 0)
        r.c = membership(MembershipVariant::C, "[u dx] in H_0 + N(C^0) for some unit u");
    else
        r.c = {ConditionStatus::NotApplicable, "needs alpha1 < 0"};
    if (sa.c0)
        r.notes.push_back("dim C^0 = " + std::to_string(sa.c0->dim) +
                          (sa.c0->dim ? ", dim N(C^0) = " + std::to_string(sa.c0->n_image.cols()) : ""));

    std::vector<std::string> fired;
    const std::pair<const char*, const Condition*> order[] = {{"a", &r.a}, {"b", &r.b}, {"d", &r.d}, {"c", &r.c}};
    for (const auto& [name, c] : order)
        if (c->status == ConditionStatus::Fired) fired.push_back(name);

    if (!fired.empty()) {
        r.verdict = Verdict::LctFails;
        for (const auto& name : fired) {
            const Condition& c = name == "a" ? r.a : name == "b" ? r.b : name == "c" ? r.c : r.d;
            r.justification.push_back("condition (" + name + ") fired: " + c.detail);
        }
        r.justification.push_back(
            "under each fired condition the logarithmic comparison theorem can hold only if D is "
            "quasihomogeneous; f is not in its Jacobian ideal (verified), so D is not quasihomogeneous and "
            "the comparison theorem does not hold for D");
    } else {
        r.verdict = Verdict::Unknown;
        if (sgn(a1) == 0)
            r.justification.push_back("alpha1 = 0: in this case the obstruction approach does not give a statement");
        else
            r.justification.push_back(
                "no obstruction condition fired; the conditions are sufficient for failure only, so nothing "
                "is claimed");
    }
}

}  // namespace

LctReport analyze(const Polynomial& f, const std::vector<std::string>& vars, const AnalyzeOptions& opt,
                  const std::string& input_text) {
    if (vars.size() != f.nvars()) throw PreconditionError("variable list does not match the polynomial");
    if (f.nvars() < 2)
        throw PreconditionError("at least two variables are needed: in one variable the divisor is a point");
    if (sgn(f.constant_term()) != 0) throw PreconditionError("f(0) != 0: the origin is not on the divisor");

    LctReport r;
    r.vars = vars;
    r.canonical = f.to_string(vars);
    r.input = input_text.empty() ? r.canonical : input_text;
    r.notes.push_back("spectrum in (-1, n) with n + 1 variables, symmetric about (n-1)/2; the monodromy "
                      "eigenvalue of alpha is exp(-2 pi i alpha)");
    r.notes.push_back("alpha1 <= alpha2 are the two smallest spectral numbers counted with multiplicity");
    r.notes.push_back("N(C^0) is computed from t d_t - k on the eigenvalue-zero piece; the scalar -2 pi i is "
                      "dropped since only the image matters");

    if (f.m_adic_order() < 2) {
        r.verdict = Verdict::Smooth;
        r.justification.push_back("f has a nonzero linear part, so D is smooth at the origin");
        return r;
    }
    const MilnorData md = milnor_data(f);
    r.mu = md.mu;
    r.quasihomogeneous = is_quasihomogeneous(md);
    if (r.quasihomogeneous)
        quasihomogeneous_branch(r, f, md, opt);
    else
        obstruction_branch(r, md, opt);

    if (opt.logder) {
        r.logder = logder_summary(f, opt.degree_bound, !r.quasihomogeneous);
        r.notes.push_back("logarithmic field linear parts are taken in the input coordinates");
    }
    if (opt.selfcheck) r.selfcheck = spectrum_selfcheck(f, opt);
    return r;
}

std::vector<SelfCheckItem> spectrum_selfcheck(const Polynomial& f, const AnalyzeOptions& opt) {
    std::vector<SelfCheckItem> out;
    const MilnorData md = milnor_data(f);
    const EngineOptions eo = engine_options(opt, false);
    const Spectrum sp = analyze_spectrum(md, eo).spectrum;
    const long n = static_cast<long>(f.nvars()) - 1;

    out.push_back({"count", spectrum_size(sp) == md.mu,
                   "sum of multiplicities " + std::to_string(spectrum_size(sp)) + ", mu " + std::to_string(md.mu)});

    bool in_range = true;
    for (const auto& e : sp) in_range = in_range && e.alpha > -1 && e.alpha < n;
    out.push_back({"range", in_range, "all spectral numbers in (-1, " + std::to_string(n) + ")"});

    std::vector<Rational> mirrored;
    for (const auto& e : sp)
        for (std::size_t i = 0; i < e.mult; ++i) mirrored.push_back(Rational(n - 1) - e.alpha);
    out.push_back({"symmetry", spectrum_from_values(mirrored) == sp, "alpha -> " + std::to_string(n - 1) + " - alpha"});

    if (const auto a = brieskorn_pham_exponents(f)) out.push_back(compare_spectra("brieskorn-pham", sp, bp_spectrum_oracle(*a)));
    if (const auto ws = detect_weights(f)) out.push_back(compare_spectra("weighted-homogeneous", sp, qh_spectrum_oracle(md, *ws)));

    // Split off a pure power of the last variable when possible, otherwise add a square in a new one.
    const std::size_t last = f.nvars() - 1;
    Polynomial rest(f.nvars());
    int power = 0;
    bool split = f.nvars() >= 2;
    for (const auto& [m, c] : f.terms()) {
        if (m.e[last] == 0) {
            rest.add_term(m, c);
            continue;
        }
        if (power != 0 || m.degree() != m.e[last]) split = false;
        power = m.e[last];
    }
    split = split && power >= 2;
    try {
        if (split) {
            const Polynomial g = with_nvars(rest, f.nvars() - 1);
            const Spectrum sg = analyze_spectrum(milnor_data(g), eo).spectrum;
            out.push_back(compare_spectra("sebastiani-thom", sp, sebastiani_thom(sg, bp_spectrum_oracle({power}))));
        } else if (f.nvars() < kMaxVars) {
            Polynomial g = with_nvars(f, f.nvars() + 1);
            g += Polynomial::monomial(f.nvars() + 1, Monomial::variable(f.nvars()) * Monomial::variable(f.nvars()));
            const Spectrum sg = analyze_spectrum(milnor_data(g), eo).spectrum;
            out.push_back(compare_spectra("sebastiani-thom", sg, sebastiani_thom(sp, bp_spectrum_oracle({2}))));
        }
    } catch (const Error& e) {
        out.push_back({"sebastiani-thom", false, e.what()});
    }
    return out;
}

nlohmann::json to_json(const LctReport& r) {
    using nlohmann::json;
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["input"] = r.input;
    j["vars"] = r.vars;
    j["f"] = r.canonical;
    j["mu"] = r.mu ? json(*r.mu) : json(nullptr);
    j["quasihomogeneous"] = r.quasihomogeneous;
    if (r.weights) {
        j["weights"] = r.weights->weights;
        j["r"] = r.weights->degree;
    }
    if (r.holland_mond) {
        json hm;
        auto rows = [](const std::vector<HollandMondWitness>& ws) {
            json a = json::array();
            for (const auto& w : ws) a.push_back({{"i", w.i}, {"degree", w.degree}, {"dim", w.dim}});
            return a;
        };
        hm["holds"] = r.holland_mond->holds;
        hm["checked"] = rows(r.holland_mond->checked);
        hm["offending"] = rows(r.holland_mond->offending);
        hm["convention"] = r.holland_mond->convention;
        j["holland_mond"] = hm;
    }
    if (r.spectrum) {
        json sp = json::array();
        for (const auto& e : *r.spectrum) sp.push_back({{"alpha", q(e.alpha)}, {"mult", e.mult}});
        j["spectrum"] = sp;
    } else {
        j["spectrum"] = nullptr;
    }
    j["alpha1"] = r.alpha1 ? json(q(*r.alpha1)) : json(nullptr);
    j["alpha2"] = r.alpha2 ? json(q(*r.alpha2)) : json(nullptr);
    j["monodromy_eigenvalue_one"] = r.eigenvalue_one ? json(*r.eigenvalue_one) : json(nullptr);
    json conds;
    for (const auto& [name, c] : named_conditions(r))
        conds[name] = {{"status", to_string(c->status)}, {"detail", c->detail}};
    if (r.h0_n_direct) conds["h0_n_direct"] = *r.h0_n_direct;
    j["conditions"] = conds;
    if (r.logder) {
        const LogderSummary& s = *r.logder;
        json gens = json::array(), traces = json::array(), nil = json::array(), res = json::array();
        for (std::size_t g = 0; g < s.generators.size(); ++g) {
            json coeffs = json::array();
            for (const auto& c : s.generators[g].coeffs) coeffs.push_back(c.to_string(r.vars));
            gens.push_back({{"coeffs", coeffs}, {"cofactor", s.generators[g].cofactor.to_string(r.vars)}});
            traces.push_back(q(s.traces[g]));
            nil.push_back(static_cast<bool>(s.nilpotent[g]));
            res.push_back(q(s.residues[g]));
        }
        j["logder"] = {{"generators", gens},     {"traces", traces},
                       {"nilpotent_flags", nil}, {"residues", res},
                       {"complete", s.complete}, {"degree_bound", s.degree_bound},
                       {"problems", s.problems}};
    }
    if (!r.selfcheck.empty()) {
        json sc = json::array();
        for (const auto& it : r.selfcheck) sc.push_back({{"name", it.name}, {"passed", it.passed}, {"detail", it.detail}});
        j["selfcheck"] = sc;
    }
    j["verdict"] = to_string(r.verdict);
    j["justification"] = r.justification;
    j["notes"] = r.notes;
    j["params"] = {{"K", r.order ? json(r.order) : json(nullptr)}, {"Dx", r.x_degree ? json(r.x_degree) : json(nullptr)}};
    return j;
}

std::string render_text(const LctReport& r) {
    std::ostringstream os;
    os << "input:            " << r.input << "\n";
    os << "f:                " << r.canonical << "\n";
    if (r.mu) os << "mu:               " << *r.mu << "\n";
    if (r.verdict != Verdict::Smooth) os << "quasihomogeneous: " << (r.quasihomogeneous ? "yes" : "no") << "\n";
    if (r.weights) os << "weights:          " << weights_text(*r.weights) << ", r = " << r.weights->degree << "\n";
    if (r.spectrum) os << "spectrum:         " << spectrum_to_string(*r.spectrum) << "\n";
    if (r.alpha1) os << "alpha1, alpha2:   " << q(*r.alpha1) << ", " << q(*r.alpha2) << "\n";
    if (r.eigenvalue_one) os << "eigenvalue 1:     " << (*r.eigenvalue_one ? "yes" : "no") << "\n";
    if (r.verdict != Verdict::Smooth)
        for (const auto& [name, c] : named_conditions(r))
            os << "condition (" << name << "):    " << to_string(c->status) << " (" << c->detail << ")\n";
    if (r.logder) {
        const LogderSummary& s = *r.logder;
        os << "logarithmic fields: " << s.generators.size() << " generator(s)"
           << (s.complete ? "" : ", degree bound reached") << "\n";
        for (std::size_t g = 0; g < s.generators.size(); ++g) {
            os << "  [" << g << "] ";
            for (std::size_t i = 0; i < s.generators[g].coeffs.size(); ++i)
                os << (i ? ", " : "") << s.generators[g].coeffs[i].to_string(r.vars);
            os << "; trace " << q(s.traces[g]) << (s.nilpotent[g] ? ", nilpotent" : "") << "\n";
        }
        for (const auto& p : s.problems) os << "  problem: " << p << "\n";
    }
    for (const auto& it : r.selfcheck)
        os << "selfcheck " << it.name << ": " << (it.passed ? "pass" : "FAIL") << " (" << it.detail << ")\n";
    os << "verdict:          " << to_string(r.verdict) << "\n";
    for (const auto& j : r.justification) os << "  - " << j << "\n";
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    if (r.order) os << "params:           K = " << r.order << ", Dx = " << r.x_degree << "\n";
    return os.str();
}

ReportCache::ReportCache(std::string dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::string ReportCache::key_material(const Polynomial& f, const std::vector<std::string>& vars,
                                      const AnalyzeOptions& opt) {
    std::ostringstream os;
    os << kToolVersion << '|' << kReportSchemaVersion << '|';
    for (const auto& v : vars) os << v << ',';
    os << '|' << f.to_string(vars) << '|' << opt.order << '|' << opt.x_degree << '|' << opt.max_order << '|'
       << opt.degree_bound << '|' << opt.logder << '|' << opt.selfcheck;
    return os.str();
}

std::string ReportCache::path_for(const std::string& material) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : material) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return (std::filesystem::path(dir_) / (std::string(buf) + ".json")).string();
}

std::optional<std::string> ReportCache::get(const std::string& material) const {
    std::ifstream in(path_for(material), std::ios::binary);
    if (!in) return std::nullopt;
    std::string key;
    if (!std::getline(in, key) || key != material) return std::nullopt;
    std::string report{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    // put() terminates the report with a newline; anything else is a damaged file.
    if (report.empty() || report.back() != '\n') return std::nullopt;
    report.pop_back();
    return report;
}

void ReportCache::put(const std::string& material, const std::string& report) const {
    static std::atomic<unsigned> counter{0};
    const std::string target = path_for(material);
    const std::string tmp = target + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write cache file " + tmp);
        out << material << '\n' << report << '\n';
        if (!out.flush()) throw Error("cannot write cache file " + tmp);
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace lct
