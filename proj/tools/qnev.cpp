#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qnev/error.hpp"
#include "qnev/io.hpp"

using namespace qnev;

namespace {

constexpr const char* kFooter = R"(Config (JSON): command, function, a, r | radii | grid {min,max,count},
  seed, samples, scheme {mc,antithetic}, kernel, out, format, and per command:
  fmt-check: form {1,2,3}, spread_max; arbiter: candidates;
  algebra-suite: g, b, t [A,B,C,D]. Flags override config keys.
Quaternions are [w,x,y,z]; a = "inf" is infinity. Functions are coefficient
arrays (lowest degree first) or {"num": [...], "den": [...]}.

CSV columns:
  verify-jensen  r,lhs,boundary_f,boundary_f_se,boundary_fSf,boundary_fSf_se,
                 harmonic,divisor_sum,kernel,rhs,residual,sigma
                 (one row per kernel convention; residual = rhs - lhs)
  profile        r,N,m,m_se,H,T,T_se,A,fmt3,fmt3_se
  fmt-check      r,N_a,N_inf,H,residual,std_error,envelope
  mpb-check      r,defect,std_error
  arbiter        c,residual,sigma
  algebra-suite  name,value,tolerance,passed,gated
  selftest       name,value,tolerance,passed,gated

Exit status: 0 all gates pass, 1 a gate failed, 2 bad config or input.)";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path, out, format, kernel, scheme;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
};

struct Run {
    std::string command;
    json cfg = json::object();
    IntegratorConfig integ;
    KernelConvention kernel = KernelConvention::Corrected;
    std::string out, format = "csv";
    bool ok = true;

    void gate(bool pass, const std::string& what) {
        if (!pass) {
            ok = false;
            std::cerr << "gate failed: " << what << "\n";
        }
    }
};

SemiregularRational function_or(const Run& run, const char* key, SemiregularRational fallback) {
    return run.cfg.contains(key) ? rational_from_json(run.cfg[key]) : fallback;
}

Target target_or(const Run& run, const char* key, Target fallback) {
    return run.cfg.contains(key) ? target_from_json(run.cfg[key]) : fallback;
}

double radius_or(const Run& run, double fallback) {
    double r = run.cfg.value("r", fallback);
    if (!(r > 0) || !std::isfinite(r)) throw ConfigError("r must be positive");
    return r;
}

std::vector<double> radii_or(const Run& run, std::vector<double> fallback) {
    std::vector<double> radii = fallback;
    if (run.cfg.contains("radii")) {
        radii = run.cfg["radii"].get<std::vector<double>>();
    } else if (run.cfg.contains("grid")) {
        const json& g = run.cfg["grid"];
        radii = admissible_grid(g.at("min").get<double>(), g.at("max").get<double>(), g.at("count").get<int>(), {});
    }
    if (radii.empty()) throw ConfigError("radii must be nonempty");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0) || !std::isfinite(radii[k])) throw ConfigError("radii must be positive");
        if (k && radii[k] <= radii[k - 1]) throw ConfigError("radii must be strictly increasing");
    }
    return radii;
}

// Writes to --out when given; the human-readable table always goes to stdout.
template <class Csv>
void emit(const Run& run, const json& j, Csv&& csv) {
    if (run.out.empty()) return;
    std::ofstream os(run.out);
    if (!os) throw ConfigError("cannot open " + run.out);
    if (run.format == "json")
        os << j.dump(2) << "\n";
    else
        csv(os);
}

void csv_checks(std::ostream& os, const std::vector<Check>& checks) {
    os << "name,value,tolerance,passed,gated\n";
    for (const auto& c : checks) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%d,%d\n", c.name.c_str(), c.value, c.tolerance, c.passed,
                      c.gated);
        os << buf;
    }
}

void print_checks(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        std::printf("%-4s %-52s %+.6e  tol %.1e\n", !c.gated ? "info" : c.passed ? "ok" : "FAIL", c.name.c_str(),
                    c.value, c.tolerance);
}

int verify_jensen_cmd(Run& run) {
    SemiregularRational f = function_or(run, "function", SemiregularRational(LeftPoly::linear({0.5, 0.7, 0, 0})));
    double R = radius_or(run, 2.0);
    JensenReport c = verify_jensen(f, R, run.integ, KernelConvention::Corrected);
    JensenReport p = with_convention(c, KernelConvention::Perotti);
    const JensenReport& sel = run.kernel == KernelConvention::Corrected ? c : p;

    std::printf("R = %g, samples = %zu, seed = %llu\n", R, run.integ.samples,
                static_cast<unsigned long long>(run.integ.seed));
    std::printf("log|f(0)| (after removing q^%d)      %.12f\n", c.origin_order, c.lhs);
    std::printf("mean log|f| on |q| = R              %.12f  (se %.2e)\n", c.boundary_f.value,
                c.boundary_f.std_error);
    std::printf("mean log|f o S_f| on |q| = R        %.12f  (se %.2e)\n", c.boundary_fSf.value,
                c.boundary_fSf.std_error);
    std::printf("half sum of boundary means          %.12f  (se %.2e)\n",
                0.5 * (c.boundary_f.value + c.boundary_fSf.value), c.sigma);
    std::printf("harmonic term                       %.12f\n", c.harmonic);
    std::printf("kernel sum, weight 1                %.12f\n", c.divisor_sum);
    std::printf("kernel sum, weight 2 off the axis   %.12f\n", p.divisor_sum);
    std::printf("RHS corrected                       %.12f\n", c.rhs);
    std::printf("RHS perotti                         %.12f\n", p.rhs);
    std::printf("corrected - LHS                     %+.12e  (%.2f sigma)\n", c.residual, c.residual / c.sigma);
    std::printf("perotti - LHS                       %+.12e  (%.2f sigma)\n", p.residual, p.residual / p.sigma);

    run.gate(std::abs(sel.residual) <= 3 * sel.sigma,
             std::string("|") + to_string(run.kernel) + " residual| <= 3 sigma");
    emit(run, json{{"corrected", to_json(c)}, {"perotti", to_json(p)}},
         [&](std::ostream& os) { write_csv(os, std::vector<JensenReport>{c, p}); });
    return 0;
}

int profile_cmd(Run& run) {
    SemiregularRational f = function_or(run, "function", SemiregularRational(LeftPoly{1.0, 0.0, 1.0}));
    Target a = target_or(run, "a", Quaternion(1.0));
    std::vector<double> radii = radii_or(run, admissible_grid(2.0, 50.0, 10, {}));
    auto rows = profile(f, a, radii, run.integ);
    std::printf("%10s %14s %14s %14s %14s %14s\n", "r", "N", "m", "H", "T", "fmt3");
    for (const auto& row : rows)
        std::printf("%10.4g %14.8f %14.8f %14.8f %14.8f %14.8f\n", row.r, row.N, row.m.value, row.H, row.T,
                    row.fmt3);
    for (std::size_t k = 1; k < rows.size(); ++k)
        run.gate(rows[k].N >= rows[k - 1].N - 1e-12, "N nondecreasing at r = " + std::to_string(rows[k].r));
    emit(run, to_json(rows), [&](std::ostream& os) { write_csv(os, rows); });
    return 0;
}

int fmt_cmd(Run& run) {
    SemiregularRational f = function_or(run, "function", SemiregularRational(LeftPoly{1.0, 0.0, 1.0}));
    Target a = target_or(run, "a", Quaternion(2.0));
    int form = run.cfg.value("form", 3);
    if (form < 1 || form > 3) throw ConfigError("form must be 1, 2 or 3");
    std::vector<double> avoid;
    auto cd = counting_divisor(f, a);
    auto ci = counting_divisor(f, std::nullopt);
    for (double x : divisor_radii(cd.divisor, cd.side)) avoid.push_back(x);
    for (double x : divisor_radii(ci.divisor, ci.side)) avoid.push_back(x);
    std::vector<double> radii = radii_or(run, admissible_grid(10.0, 1000.0, 12, avoid));
    auto rows = verify_fmt(f, a, radii, run.integ, form);
    std::vector<double> res;
    std::printf("%10s %14s %14s %14s %16s %10s\n", "r", "N_a", "N_inf", "H", "residual", "se");
    for (const auto& row : rows) {
        res.push_back(row.residual);
        std::printf("%10.4g %14.8f %14.8f %14.8f %+16.8e %10.2e\n", row.r, row.N_a, row.N_inf, row.H, row.residual,
                    row.std_error);
    }
    O1Summary s = summarize(radii, res);
    std::printf("form %d: spread %.6e, slope in log r %+.6e, max %.6e\n", form, s.spread, s.slope, s.max);
    if (form == 3 && radii.size() >= 3) run.gate(std::abs(s.slope) <= 0.01, "|slope| <= 0.01");
    if (run.cfg.contains("spread_max")) {
        double cap = run.cfg["spread_max"].get<double>();
        run.gate(s.spread <= cap, "spread <= " + std::to_string(cap));
    }
    emit(run, to_json(rows), [&](std::ostream& os) { write_csv(os, rows); });
    return 0;
}

int mpb_cmd(Run& run) {
    SemiregularRational f = function_or(run, "function", SemiregularRational(LeftPoly{1.0, 0.0, 1.0}));
    Target a = target_or(run, "a", Quaternion(0.0));
    if (!a) throw ConfigError("mpb-check needs a finite a");
    std::vector<double> radii = radii_or(run, {10.0, 100.0, 1000.0});
    json j = json::array();
    std::ostringstream csv;
    csv << "r,defect,std_error\n";
    std::printf("%10s %18s %10s\n", "r", "defect", "se");
    for (double r : radii) {
        SphericalMean d = mpb_defect(f, *a, r, run.integ);
        std::printf("%10.4g %+18.10e %10.2e\n", r, d.value, d.std_error);
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r, d.value, d.std_error);
        csv << buf;
        j.push_back({{"r", r}, {"defect", to_json(d)}});
        if (f.is_slice_preserving()) run.gate(d.value == 0.0, "slice-preserving defect is exactly 0");
    }
    emit(run, j, [&](std::ostream& os) { os << csv.str(); });
    return 0;
}

int arbiter_cmd(Run& run) {
    SemiregularRational f = function_or(run, "function", SemiregularRational(LeftPoly{1.0, 0.0, 1.0}));
    double R = radius_or(run, 2.0);
    std::vector<int> cands = run.cfg.value("candidates", std::vector<int>{1, 2});
    ArbiterReport rep = counting_arbiter(f, R, run.integ, cands);
    std::printf("sphere (%g, %g): f^s rule %d, factorization rule %d\n", rep.sphere.re, rep.sphere.im,
                rep.total_order, rep.factorization_order);
    std::ostringstream csv;
    csv << "c,residual,sigma\n";
    for (auto [c, res] : rep.residuals) {
        std::printf("c = %d  residual %+.6e  (%.2f sigma)\n", c, res, res / rep.sigma);
        char buf[96];
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", c, res, rep.sigma);
        csv << buf;
    }
    std::printf("best c = %d\n", rep.best);
    for (auto [c, res] : rep.residuals)
        if (c == rep.best) run.gate(std::abs(res) <= 3 * rep.sigma, "best candidate closes within 3 sigma");
    emit(run, to_json(rep), [&](std::ostream& os) { os << csv.str(); });
    return 0;
}

int algebra_cmd(Run& run) {
    AlgebraInputs in{function_or(run, "function", SemiregularRational(LeftPoly{1.0, 0.0, 1.0})),
                     function_or(run, "g", SemiregularRational(LeftPoly{0.5, -1.0, 0.0, 1.0})),
                     Quaternion(2.0),
                     Quaternion(-3.0),
                     GL2H{kOne, 1.0, 0.5, 2.0},
                     radii_or(run, {3.0, 7.0})};
    if (run.cfg.contains("a")) {
        Target a = target_from_json(run.cfg["a"]);
        if (!a) throw ConfigError("algebra-suite needs a finite a");
        in.a = *a;
    }
    if (run.cfg.contains("b")) in.b = quaternion_from_json(run.cfg["b"]);
    if (run.cfg.contains("t")) {
        const json& t = run.cfg["t"];
        if (!t.is_array() || t.size() != 4) throw ConfigError("t must be [A,B,C,D]");
        in.t = {quaternion_from_json(t[0]), quaternion_from_json(t[1]), quaternion_from_json(t[2]),
                quaternion_from_json(t[3])};
    }
    auto checks = characteristic_algebra_suite(in, run.integ);
    print_checks(checks);
    for (const auto& c : checks)
        if (c.gated) run.gate(c.passed, c.name);
    emit(run, to_json(checks), [&](std::ostream& os) { csv_checks(os, checks); });
    return 0;
}

// Closed-form identities only; no sphere means.
std::vector<Check> selftest_checks() {
    std::vector<Check> out;
    auto add = [&](std::string name, double v, double tol = 1e-9) {
        out.push_back({std::move(name), v, tol, std::isfinite(v) && std::abs(v) <= tol, true});
    };
    std::mt19937_64 rng(20240607);
    std::normal_distribution<double> nd;
    auto quat = [&] { return Quaternion{nd(rng), nd(rng), nd(rng), nd(rng)}; };
    auto poly = [&](int deg) {
        std::vector<Quaternion> c;
        for (int k = 0; k <= deg; ++k) c.push_back(quat());
        return LeftPoly(std::move(c));
    };

    const Quaternion a0{0.5, 0.7, 0, 0};
    add("reference log|a|", std::log(norm(a0)) + 0.150552546392, 1e-9);
    add("reference harmonic term",
        harmonic_remainder(SemiregularRational(LeftPoly::monomial(1)), a0, 2.0) - 0.438276113952, 1e-9);
    add("reference kernel J(a, 2)", jensen_kernel({0.5, 0.7}, 2.0) - 1.266975840904, 1e-9);

    double inv = 0, mult = 0, star = 0, coro = 0, harm = 0, conj_ord = 0, sym_ord = 0;
    for (int t = 0; t < 200; ++t) {
        Quaternion p = quat(), q = quat();
        inv = std::max(inv, norm(p * inverse(p) - kOne));
        mult = std::max(mult, std::abs(norm(p * q) - norm(p) * norm(q)) / (1 + norm(p) * norm(q)));
    }
    for (int t = 0; t < 50; ++t) {
        LeftPoly f = poly(1 + t % 4), g = poly(1 + t % 3);
        Quaternion q = quat();
        star = std::max(star, star_eval_identity_check(f, g, q) / (1 + norm(f(q)) * norm(g(q)) * 10));
        SemiregularRational fr(f, poly(t % 2));
        coro = std::max(coro, corollary_decomposition_check(fr, quat()));
        SemiregularRational fc(f + LeftPoly::constant(3.0));
        double h1 = jensen_harmonic_terms(fc, 1.3), h2 = harmonic_from_symmetrization(fc, 1.3);
        harm = std::max(harm, std::abs(h1 - h2) / (1 + std::abs(h1)));
        auto total = [](const SphereDivisor& d) {
            int s = 2 * d.origin_order;
            for (const auto& e : d.entries) s += (e.sphere.im > 0 ? 2 : 1) * e.order;
            return s;
        };
        int df = total(total_order_divisor(fr));
        conj_ord = std::max(conj_ord, std::abs(double(total(total_order_divisor(conjugate(fr))) - df)));
        sym_ord = std::max(sym_ord, std::abs(double(total(total_order_divisor(star_mul(fr, conjugate(fr)))) - 2 * df)));
    }
    add("q q^-1 = 1", inv);
    add("|pq| = |p||q|", mult);
    add("(f*g)(q) = f(q) g(f(q)^-1 q f(q))", star);
    add("log|f^s| = log|f| + log|f o S_f|", coro);
    add("harmonic term: coefficients vs symmetrization", harm);
    add("total order of f^c equals that of f", conj_ord, 0.0);
    add("total order of f*f^c is twice that of f", sym_ord, 0.0);

    double cn = 0, ca = 0, cc = 0;
    for (int t = 0; t < 100; ++t) {
        SphereDivisor d;
        std::uniform_real_distribution<double> u(0.1, 3.0), ang(0.05, 3.09);
        int n = 1 + t % 6;
        for (int k = 0; k < n; ++k) {
            double rho = u(rng), th = ang(rng);
            SliceComplex s = k % 3 == 0 ? SliceComplex{rho, 0.0} : SliceComplex{rho * std::cos(th), rho * std::sin(th)};
            d.entries.push_back({s, 1 + k % 2});
        }
        d.origin_order = t % 3;
        for (int m = 0; m < 20; ++m) {
            double r = 0.2 + 0.17 * m;
            bool bad = false;
            for (double x : divisor_radii(d, Side::Zeros)) bad |= std::abs(x - r) < 1e-9 * r;
            if (bad) continue;
            double N = N_integrated(d, Side::Zeros, r);
            cn = std::max(cn, std::abs(N_via_unintegrated(d, Side::Zeros, r) - N) / (1 + std::abs(N)));
            auto ar = angular_identity_check(d, Side::Zeros, r);
            ca = std::max({ca, std::abs(ar.double_integral), std::abs(ar.weighted)});
            auto cr = analytic_characterization_check(d, Side::Zeros, r);
            cc = std::max({cc, std::abs(cr.first_form), std::abs(cr.second_form)});
        }
    }
    add("N: direct sum vs unintegrated count", cn);
    add("angular term: both representations", ca);
    add("analytic characterization: both forms", cc);
    return out;
}

int selftest_cmd(Run& run) {
    auto checks = selftest_checks();
    print_checks(checks);
    for (const auto& c : checks) run.gate(c.passed, c.name);
    emit(run, to_json(checks), [&](std::ostream& os) { csv_checks(os, checks); });
    return 0;
}

KernelConvention parse_kernel(const std::string& s) {
    if (s == "corrected") return KernelConvention::Corrected;
    if (s == "perotti") return KernelConvention::Perotti;
    throw ConfigError("kernel must be corrected or perotti");
}

Scheme parse_scheme(const std::string& s) {
    if (s == "mc") return Scheme::MonteCarlo;
    if (s == "antithetic") return Scheme::AntitheticPair;
    throw ConfigError("scheme must be mc or antithetic");
}

Run resolve(const std::string& command, const Options& o) {
    Run run;
    if (!o.config_path.empty()) {
        std::ifstream is(o.config_path);
        if (!is) throw ConfigError("cannot read " + o.config_path);
        run.cfg = json::parse(is);
        if (!run.cfg.is_object()) throw ConfigError("config must be a JSON object");
    }
    run.command = command.empty() ? run.cfg.value("command", std::string()) : command;
    if (run.command.empty()) throw ConfigError("no command given");
    if (run.cfg.contains("seed")) run.integ.seed = run.cfg["seed"].get<std::uint64_t>();
    if (run.cfg.contains("samples")) run.integ.samples = run.cfg["samples"].get<std::size_t>();
    if (run.cfg.contains("scheme")) run.integ.scheme = parse_scheme(run.cfg["scheme"].get<std::string>());
    if (run.cfg.contains("kernel")) run.kernel = parse_kernel(run.cfg["kernel"].get<std::string>());
    run.out = run.cfg.value("out", std::string());
    run.format = run.cfg.value("format", std::string("csv"));
    if (o.seed) run.integ.seed = o.seed;
    if (o.samples) run.integ.samples = o.samples;
    if (!o.scheme.empty()) run.integ.scheme = parse_scheme(o.scheme);
    if (!o.kernel.empty()) run.kernel = parse_kernel(o.kernel);
    if (!o.out.empty()) run.out = o.out;
    if (!o.format.empty()) run.format = o.format;
    if (run.format != "csv" && run.format != "json") throw ConfigError("format must be csv or json");
    run.integ.validate();
    return run;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quaternionic Nevanlinna verification runner"};
    app.footer(kFooter);
    app.require_subcommand(0, 1);
    Options o;
    app.add_option("--config", o.config_path, "JSON experiment config");
    app.add_option("--seed", o.seed, "RNG seed (u64)");
    app.add_option("--samples", o.samples, "samples per sphere mean");
    app.add_option("--scheme", o.scheme, "mc or antithetic")->check(CLI::IsMember({"mc", "antithetic"}));
    app.add_option("--out", o.out, "artifact path");
    app.add_option("--format", o.format, "artifact format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--kernel", o.kernel, "kernel convention")->check(CLI::IsMember({"corrected", "perotti"}));
    app.fallthrough();

    const std::vector<std::pair<const char*, const char*>> commands{
        {"verify-jensen", "Jensen formula table at one radius"},
        {"profile", "N, m, H, T and the form-3 residual over radii"},
        {"fmt-check", "first main theorem residuals (config key form)"},
        {"mpb-check", "mean proximity balance defect over radii"},
        {"arbiter", "Jensen residual for each candidate sphere weight"},
        {"algebra-suite", "characteristic identities and inequalities"},
        {"selftest", "closed-form identity suite, no sampling"},
    };
    for (auto [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    std::string command;
    for (auto* sub : app.get_subcommands()) command = sub->get_name();

    try {
        Run run = resolve(command, o);
        if (run.command == "verify-jensen")
            verify_jensen_cmd(run);
        else if (run.command == "profile")
            profile_cmd(run);
        else if (run.command == "fmt-check")
            fmt_cmd(run);
        else if (run.command == "mpb-check")
            mpb_cmd(run);
        else if (run.command == "arbiter")
            arbiter_cmd(run);
        else if (run.command == "algebra-suite")
            algebra_cmd(run);
        else if (run.command == "selftest")
            selftest_cmd(run);
        else
            throw ConfigError("unknown command " + run.command);
        return run.ok ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
