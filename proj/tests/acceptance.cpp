// One line per acceptance criterion; exit status 1 if any fails.
#include "birat3/cli.hpp"
#include "birat3/depth.hpp"
#include "birat3/flopatlas.hpp"
#include "birat3/links.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace birat3;

namespace {

const std::vector<std::string> V4 = {"x", "y", "z", "u"};
const std::vector<std::string> V3 = {"x", "y", "z"};

SingularityModel gor(const std::string& f) { return make_model(QuotientAction::trivial_action(4), V4, {f}, "cA/r"); }
SingularityModel quot(std::int64_t r, std::vector<std::int64_t> a) { return make_model(QuotientAction(r, a), V3, {}, "quotient"); }
SingularityModel ca(std::int64_t r, std::int64_t beta, const std::string& f) {
    QuotientAction g = r == 1 ? QuotientAction::trivial_action(4) : QuotientAction(r, {beta, r - beta, 1, 0});
    return make_model(g, V4, {f}, "cA/r");
}

struct Check {
    std::vector<std::string> problems;
    int cases = 0;
    void require(bool ok, const std::string& what) {
        if (!ok && problems.size() < 5) problems.push_back(what);
        if (!ok && problems.size() == 5) problems.push_back("...");
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Check c1_chain() {
    Check c;
    for (int n = 2; n <= 5; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        auto m = gor("x*y + z^2 + u^" + std::to_string(2 * n + 1));
        DepthEngine eng;
        std::int64_t g = eng.gdep(m).value();
        ResolutionTree t = feasible_resolution(m, eng);
        double secs = seconds_since(t0);
        const std::string tag = "n=" + std::to_string(n);
        c.require(g == n, tag + ": gdep " + std::to_string(g));
        c.require(t.edges.size() == static_cast<std::size_t>(n), tag + ": chain length " + std::to_string(t.edges.size()));
        for (std::size_t i = 0; i < t.edges.size(); ++i) {
            const auto& v = t.edges[i].valuations;
            Rat k = static_cast<std::int64_t>(i + 1);
            bool ok = v.size() == 4 && v[0] == k && v[1] == k && v[2] == k && v[3] == Rat(1);
            c.require(ok, tag + ": valuations of E_" + std::to_string(i + 1));
        }
        c.require(secs < 1.0, tag + ": took " + std::to_string(secs) + " s");
        ++c.cases;
    }
    return c;
}

Check c2_half() {
    Check c;
    auto m = quot(2, {1, 1, 1});
    DepthReport r = depth_report(m);
    c.require(r.gdep.exact() && r.gdep.lower == 1, "gdep " + r.gdep.str());
    c.require(r.dep.exact() && r.dep.lower == 1, "dep " + r.dep.str());
    c.require(r.dep_gor.exact() && r.dep_gor.lower == 0, "dep_Gor " + r.dep_gor.str());
    WMorphismList l = enumerate_w_morphisms(m);
    c.require(l.complete && l.contractions.size() == 1, "w-morphisms: " + std::to_string(l.contractions.size()));
    c.cases = 1;
    return c;
}

Check c3_small() {
    Check c;
    for (int n : {2, 3}) {
        DepthEngine eng;
        DepthBound b = eng.gdep(gor("x*y + z^2 + u^" + std::to_string(n)));
        c.require(b.exact() && b.lower == 1, "n=" + std::to_string(n) + ": gdep " + b.str());
        ++c.cases;
    }
    return c;
}

Check c4_tables() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& e : table_registry()) {
        ReplaySummary s = replay_row(e);
        c.require(s.instances > 0, e.id + ": no instances");
        c.require(s.failures.empty() && s.passed == s.instances,
                  e.id + ": " + (s.failures.empty() ? std::string("mismatch") : s.failures.front()));
        c.cases += s.instances;
    }
    double secs = seconds_since(t0);
    c.require(secs < 30.0, "sweep took " + std::to_string(secs) + " s");
    return c;
}

Check c5_enumeration() {
    Check c;
    const std::int64_t r = 3, beta = 1;
    auto m = ca(r, beta, "x*y + z^6 + u^2");
    const Poly g = m.equations[0] - parse_poly("x*y", V4);
    std::set<WeightVector> oracle;
    // all small weights 1/r(b, c, a, r) with z^{rk} in the leading form (k = 2 from z^6),
    // compatible, discrepancy 1/r and w(g) >= (b + c)/r
    const std::int64_t k = 2;
    for (std::int64_t a = 1; a <= 4; ++a)
        for (std::int64_t b = 1; b <= 24; ++b)
            for (std::int64_t cc = 1; cc <= 24; ++cc) {
                if (b + cc != r * k * a || mod64(b - a * beta, r) != 0 || std::gcd(a, r) != 1) continue;
                WeightVector w(r, {b, cc, a, r});
                if (!compatibility(m.ambient, w)) continue;
                if (weight_of(g, w) < make_rat(b + cc, r)) continue;
                if (discrepancy_formula(w, m.equations) != make_rat(1, r)) continue;
                oracle.insert(w);
            }
    std::set<WeightVector> got;
    WMorphismList l = enumerate_w_morphisms(m);
    for (const auto& x : l.contractions) got.insert(x.weight);
    std::set<WeightVector> want = {WeightVector(3, {1, 5, 1, 3}), WeightVector(3, {4, 2, 1, 3})};
    c.require(l.complete, "enumeration incomplete");
    c.require(got == want, "enumerated " + std::to_string(got.size()) + " weights");
    c.require(oracle == want, "oracle found " + std::to_string(oracle.size()) + " weights");
    c.cases = 1;
    return c;
}

struct LinkCase {
    SingularityModel m;
    std::int64_t r, beta, k, q, b;
};

std::vector<LinkCase> link_sweep() {
    std::vector<LinkCase> out;
    for (std::int64_t r = 1; r <= 7; ++r)
        for (std::int64_t beta = 0; beta < std::max<std::int64_t>(r, 1); ++beta) {
            if (std::gcd(beta, r) != 1) continue;
            for (std::int64_t k = 1; k <= 4; ++k)
                for (std::int64_t q = k; q <= k + 1; ++q)
                    for (std::int64_t b = r + 1; b < r * k; ++b) {
                        if ((b - beta) % r != 0) continue;
                        std::string f = "x*y + z^" + std::to_string(r * k) + " + u^" + std::to_string(q);
                        out.push_back({ca(r, beta, f), r, beta, k, q, b});
                    }
        }
    return out;
}

Check c6_involution() {
    Check c;
    for (const auto& s : link_sweep()) {
        const std::int64_t cc = s.r * s.k - s.b;
        const std::string tag = s.m.str() + " b=" + std::to_string(s.b);
        LinkResult l = ca_link(s.m, weighted_blowup(s.m, WeightVector(s.r, {s.b, cc, 1, s.r})));
        c.require(l.linked.weight == WeightVector(s.r, {s.b - s.r, cc + s.r, 1, s.r}), tag + ": linked weight");
        DiscrepancyPair p = dcp_discrepancies(l.data);
        c.require(p.aEX == make_rat(1, s.r) && p.aFX == make_rat(1, s.r), tag + ": discrepancies");
        c.require(l.linked.discrepancy == make_rat(1, s.r), tag + ": linked discrepancy");
        // the same link read with x and y exchanged starts from Y_1 and lands on Y
        std::int64_t b2 = s.r == 1 ? 0 : s.r - s.beta;
        auto swapped = ca(s.r, b2, "x*y + z^" + std::to_string(s.r * s.k) + " + u^" + std::to_string(s.q));
        LinkResult back = ca_link(swapped, weighted_blowup(swapped, WeightVector(s.r, {cc + s.r, s.b - s.r, 1, s.r})));
        c.require(back.linked.weight == WeightVector(s.r, {cc, s.b, 1, s.r}), tag + ": link of the link");
        ++c.cases;
    }
    return c;
}

Check c7_kng() {
    Check c;
    for (const auto& s : link_sweep()) {
        const std::int64_t cc = s.r * s.k - s.b;
        LinkResult l = ca_link(s.m, weighted_blowup(s.m, WeightVector(s.r, {s.b, cc, 1, s.r})));
        XiResult xi = xi_condition(l.data);
        Rat kng = kng_intersection(l.data);
        const std::string tag = s.m.str() + " b=" + std::to_string(s.b) + " K.Gamma=" + to_string(kng);
        if (xi.holds) c.require(kng <= 0, tag + ": Xi but positive");
        if (xi.strict) c.require(kng < 0, tag + ": strict Xi but not negative");
        if (l.flop) c.require(kng == 0, tag + ": flop case not zero");
        c.require(xi.holds, tag + ": Xi fails on a generated link");
        ++c.cases;
    }
    return c;
}

Check c8_atlas() {
    Check c;
    DepthEngine eng;
    for (std::int64_t r = 1; r <= 6; ++r)
        for (std::int64_t beta = 0; beta < std::max<std::int64_t>(r, 1); ++beta) {
            if (std::gcd(beta, r) != 1) continue;
            for (std::int64_t m = 1; m <= 11; ++m)
                for (int shape = 0; shape < 2; ++shape) {
                    if (shape == 1 && m < 2) continue;
                    std::int64_t ez = shape == 0 ? r * (m + 1) : r * m, eu = shape == 0 ? m : m + 1;
                    FlopModel fm = make_flop_model(r, beta, parse_poly("z^" + std::to_string(ez) + " + u^" + std::to_string(eu), V4));
                    for (std::int64_t b = r + 1; b < r * (m + 1) && b <= 12; ++b) {
                        if ((b - beta) % r != 0) continue;
                        WeightVector w(r, {b, r * (m + 1) - b, 1, r});
                        const std::string tag = "r=" + std::to_string(r) + " m=" + std::to_string(m) + " b=" + std::to_string(b);
                        VPrimeReport rep = v_prime(fm, w);
                        std::size_t charts = rep.atlas.v_side.size() + rep.atlas.z_side.size();
                        c.require(charts == (fm.m < fm.k ? 10u : 9u), tag + ": chart count");
                        for (const auto* side : {&rep.atlas.v_side, &rep.atlas.z_side})
                            for (const auto& ch : *side) c.require(check_chart(fm, ch).empty(), tag + ": " + ch.name);
                        for (std::size_t j : {1, 2})
                            c.require(normalize_chart(rep.atlas.z_side[j]) == normalize_chart(rep.atlas.v_side[j]),
                                      tag + ": chart " + std::to_string(j + 1) + " differs");
                        FlipReport f = flip_bookkeeping(fm, w, eng);
                        c.require(f.delta == 1 && f.delta_gdep == 1, tag + ": delta");
                        ++c.cases;
                    }
                }
        }
    return c;
}

Check c9_inequalities() {
    Check c;
    std::mt19937 rng(2024);
    std::vector<SingularityModel> corpus = {ca(3, 1, "x*y + z^6 + u^2"), ca(2, 1, "x*y + z^4 + u^3"),
                                            ca(3, 1, "x*y + z^6 + u^5"),  gor("x*y + z^4 + u^4"),
                                            gor("x*y + z^3 + u^5"),       gor("x*y + z^2 + u^9"),
                                            quot(5, {1, 4, 2}),          quot(7, {1, 6, 3}),
                                            quot(2, {1, 1, 1})};
    for (const auto& m : corpus) {
        DepthEngine eng;
        for (int trial = 0; trial < 6; ++trial) {
            auto pick = [&](const SingularityModel&, const Expansion& ex) {
                return std::uniform_int_distribution<std::size_t>(0, ex.contractions.size() - 1)(rng);
            };
            ResolutionTree t = trial == 0 ? feasible_resolution(m, eng) : build_chain(m, eng, pick);
            InequalityReport rep = check_depth_inequalities(t, eng);
            c.require(rep.ok && rep.rho >= rep.delta_gdep,
                      m.str() + ": " + (rep.violations.empty() ? std::string("rho < delta") : rep.violations.front()));
            c.require((rep.rho == rep.delta_gdep) == rep.all_strict, m.str() + ": equality case");
            ++c.cases;
        }
    }
    return c;
}

// det(d x / d y) of the chart map, then the order along y_i of the Jacobian minus that of f
Rat jacobian_discrepancy(const Poly& f, const WeightVector& w, std::size_t i) {
    MonomialMap phi = chart_map(w, i);
    const std::size_t n = w.n();
    std::vector<std::vector<Poly>> J(n, std::vector<Poly>(n));
    for (std::size_t k = 0; k < n; ++k) {
        Poly xk = phi.apply(Poly::variable(V4, k)).to_poly(V4);
        for (std::size_t l = 0; l < n; ++l) J[k][l] = xk.derivative(l);
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Poly det(V4);
    do {
        int inv = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (perm[a] > perm[b]) ++inv;
        Poly t = Poly::constant(V4, inv % 2 ? -1 : 1);
        for (std::size_t k = 0; k < n; ++k) t = t * J[k][perm[k]];
        det += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Poly pf = phi.apply(f).to_poly(V4);
    return Rat(det.order_in(i - 1)) - Rat(pf.order_in(i - 1));
}

Check c10_jacobian() {
    Check c;
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> wd(1, 5), ed(0, 5);
    while (c.cases < 30) {
        WeightVector w(1, {wd(rng), wd(rng), wd(rng), wd(rng)});
        Poly f(V4);
        for (int t = 0; t < 4; ++t) {
            Exps e = {ed(rng), ed(rng), ed(rng), ed(rng)};
            if (std::accumulate(e.begin(), e.end(), 0) < 2) continue;
            f.add_term(e, Rat(t + 1));
        }
        if (f.is_zero()) continue;
        auto m = make_model(QuotientAction::trivial_action(4), V4, {}, "cDV-other");
        m.equations = {f};
        Contraction blow = weighted_blowup(m, w);
        for (std::size_t i = 1; i <= 4; ++i) {
            Rat j = jacobian_discrepancy(f, w, i);
            c.require(j == blow.discrepancy, f.str() + " " + w.str() + ": " + to_string(j) + " vs " + to_string(blow.discrepancy));
        }
        ++c.cases;
    }
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Check c11_determinism() {
    Check c;
    const std::filesystem::path dir = BIRAT3_GOLDEN_DIR;
    std::vector<std::filesystem::path> jobs;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") jobs.push_back(e.path());
    std::sort(jobs.begin(), jobs.end());
    const unsigned many = std::max(4u, std::thread::hardware_concurrency());
    for (const auto& j : jobs) {
        const std::string text = slurp(j), name = j.stem().string();
        std::filesystem::path want_out = j, want_code = j;
        want_out.replace_extension(".out");
        want_code.replace_extension(".code");
        const std::string expected = slurp(want_out);
        const int code = std::stoi(slurp(want_code));
        for (unsigned threads : {1u, many})
            for (int rep = 0; rep < 3; ++rep) {
                RunSettings s;
                s.threads = threads;
                RunOutput o = run_text(text, s);
                c.require(o.text == expected, name + " at " + std::to_string(threads) + " threads: output differs");
                c.require(o.exit_code == code, name + ": exit code " + std::to_string(o.exit_code));
            }
        ++c.cases;
    }
    c.require(jobs.size() >= 10, "only " + std::to_string(jobs.size()) + " golden jobs");
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"gdep and valuations of the xy+z^2+u^(2n+1) chain, n = 2..5", c1_chain},
        {"index-2 quotient point: gdep = dep = 1, dep_Gor = 0, one w-morphism", c2_half},
        {"gdep(xy+z^2+u^n) = 1 for n = 2, 3", c3_small},
        {"table replay reproduces every discrepancy column", c4_tables},
        {"A1 enumeration over 1/3(1,2,1,0), z^6+u^2 matches brute force", c5_enumeration},
        {"cA/r link involution and a(E,X) = a(F,X) = 1/r", c6_involution},
        {"sign of K.Gamma under Xi and its strict form", c7_kng},
        {"flop atlas regenerates and the flip delta is 1", c8_atlas},
        {"depth inequalities along divisorial chains", c9_inequalities},
        {"formula discrepancy equals the Jacobian computation", c10_jacobian},
        {"golden CLI output is byte-identical at 1 and N threads", c11_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.problems.push_back(std::string("exception: ") + e.what());
        }
        double secs = seconds_since(t0);
        bool ok = c.problems.empty();
        if (!ok) ++failed;
        std::cout << (ok ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << " (" << c.cases
                  << " cases, " << std::fixed << std::setprecision(2) << secs << " s)\n";
        for (const auto& p : c.problems) std::cout << "    " << p << "\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
    return failed ? 1 : 0;
}
