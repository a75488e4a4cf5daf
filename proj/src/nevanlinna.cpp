#include "qnev/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qnev/error.hpp"

namespace qnev {

const char* to_string(KernelConvention k) {
    return k == KernelConvention::Corrected ? "corrected" : "perotti";
}

double jensen_harmonic_terms(const Quaternion& c0, const Quaternion& c1, const Quaternion& c2, double r) {
    if (c0 == Quaternion{}) throw Error(ErrorKind::CenterIsZeroOrPole, "f(0) = 0");
    Quaternion inv = inverse(c0);
    Quaternion u = inv * c1;
    double r2 = r * r;
    return -0.25 * r2 * (u * u).w + 0.25 * r2 * (inv * (2.0 * c2)).w;
}

double jensen_harmonic_terms(const SemiregularRational& g, double r) {
    if (origin_order(g) != 0) throw Error(ErrorKind::CenterIsZeroOrPole, "zero or pole at the origin");
    auto c = taylor_at_origin(g, 3);
    return jensen_harmonic_terms(c[0], c[1], c[2], r);
}

double harmonic_from_symmetrization(const SemiregularRational& g, double r) {
    auto part = [&](const RealPoly& p) {
        double p0 = p.coeff(0), p1 = p.coeff(1), p2 = p.coeff(2);
        if (p0 == 0.0) throw Error(ErrorKind::CenterIsZeroOrPole, "symmetrization vanishes at the origin");
        return 2.0 * p2 / p0 - (p1 / p0) * (p1 / p0);
    };
    return r * r / 8.0 * (part(g.num_sym()) - part(g.den_sym()));
}

double harmonic_remainder(const SemiregularRational& f, const Target& a, double r) {
    if (!a) return 0.0;
    return jensen_harmonic_terms(translate(f, *a), r);
}

double harmonic_remainder_deflated(const SemiregularRational& f, const Target& a, double r) {
    if (!a) return 0.0;
    return jensen_harmonic_terms(deflate_origin(translate(f, *a)), r);
}

CountingDivisor counting_divisor(const SemiregularRational& f, const Target& a) {
    if (a) return {total_order_divisor(translate(f, *a)), Side::Zeros};
    return {total_order_divisor(f), Side::Poles};
}

SphericalMean proximity(const SemiregularRational& f, const WeilFunction& weil, double r, const IntegratorConfig& cfg) {
    return mean_weil(f, weil, r, cfg);
}

std::vector<SphericalMean> shared_means(const std::vector<Field>& fields, double r, const IntegratorConfig& cfg) {
    Integrand g = [&](const Quaternion& w, double* out) {
        for (std::size_t k = 0; k < fields.size(); ++k) {
            out[k] = fields[k](w);
            if (!std::isfinite(out[k])) return false;
        }
        return true;
    };
    return integrate(g, fields.size(), r, cfg);
}

Field characteristic_field(const SemiregularRational& f, const Target& a) {
    if (!a) {
        RealRatio s = symmetrize(f);
        return [s](const Quaternion& w) { return log_plus(s.abs_at(w)); };
    }
    RealRatio s = symmetrize(translate(f, *a));
    return [s](const Quaternion& w) { return log_plus(1.0 / s.abs_at(w)); };
}

double characteristic_closed_part(const SemiregularRational& f, const Target& a, double r) {
    CountingDivisor cd = counting_divisor(f, a);
    return N_integrated(cd.divisor, cd.side, r) - harmonic_remainder_deflated(f, a, r);
}

Characteristic characteristic(const SemiregularRational& f, const Target& a, double r, const IntegratorConfig& cfg) {
    CountingDivisor cd = counting_divisor(f, a);
    Characteristic c;
    c.N = N_integrated(cd.divisor, cd.side, r);
    c.H = harmonic_remainder_deflated(f, a, r);
    c.m = shared_means({characteristic_field(f, a)}, r, cfg)[0];
    c.T = c.N + 0.5 * c.m.value - c.H;
    return c;
}

// ---- Jensen ----

double kernel_weight(const SliceComplex& s, KernelConvention k) {
    return (k == KernelConvention::Perotti && s.im > 0.0) ? 2.0 : 1.0;
}

namespace {

double divisor_sum(const SphereDivisor& d, double r, KernelConvention k) {
    double s = 0.0;
    for (const auto& e : d.entries)
        if (modulus(e.sphere) < r) s += e.order * kernel_weight(e.sphere, k) * jensen_kernel(e.sphere, r);
    return s;
}

}  // namespace

JensenReport with_convention(const JensenReport& rep, KernelConvention k) {
    JensenReport out = rep;
    out.kernel_convention = k;
    out.divisor_sum = divisor_sum(rep.divisor, rep.radius, k);
    out.rhs = 0.5 * rep.boundary_f.value + 0.5 * rep.boundary_fSf.value - rep.origin_order * std::log(rep.radius) +
              rep.harmonic - out.divisor_sum;
    out.residual = out.rhs - out.lhs;
    return out;
}

JensenReport verify_jensen(const SemiregularRational& f, double r, const IntegratorConfig& cfg, KernelConvention k) {
    JensenReport rep;
    rep.radius = r;
    rep.divisor = total_order_divisor(f);
    check_admissible(rep.divisor, r);
    rep.origin_order = rep.divisor.origin_order;
    SemiregularRational g = rep.origin_order != 0 ? deflate_origin(f) : f;
    auto c = taylor_at_origin(g, 3);
    rep.lhs = std::log(norm(c[0]));
    rep.harmonic = jensen_harmonic_terms(c[0], c[1], c[2], r);

    double tol = rejection_threshold(cfg, r, f.scale_degree());
    Integrand integrand = [&](const Quaternion& w, double* out) {
        double a = norm(f(w));
        if (!(a >= tol)) return false;
        double b = norm(f(spherical_conjugate(f, w)));
        if (!(b >= tol)) return false;
        out[0] = std::log(a);
        out[1] = std::log(b);
        out[2] = 0.5 * (out[0] + out[1]);
        return true;
    };
    auto m = integrate(integrand, 3, r, cfg);
    rep.boundary_f = m[0];
    rep.boundary_fSf = m[1];
    rep.sigma = m[2].std_error;
    return with_convention(rep, k);
}

ArbiterReport counting_arbiter(const SemiregularRational& f, double r, const IntegratorConfig& cfg,
                               std::vector<int> candidates) {
    ArbiterReport out;
    out.base = verify_jensen(f, r, cfg);
    const DivisorEntry* hit = nullptr;
    for (const auto& e : out.base.divisor.entries) {
        if (modulus(e.sphere) >= r) continue;
        if (hit) throw Error(ErrorKind::InvalidArgument, "arbiter needs exactly one sphere inside B_r");
        hit = &e;
    }
    if (!hit) throw Error(ErrorKind::InvalidArgument, "arbiter needs a sphere inside B_r");
    out.sphere = hit->sphere;
    out.total_order = hit->order;
    out.factorization_order = factorization_total_order(f, hit->sphere);
    out.sigma = out.base.sigma;
    const JensenReport& b = out.base;
    double J = jensen_kernel(hit->sphere, r);
    double best = INFINITY;
    for (int c : candidates) {
        double rhs = 0.5 * b.boundary_f.value + 0.5 * b.boundary_fSf.value - b.origin_order * std::log(r) +
                     b.harmonic - c * J;
        double res = rhs - b.lhs;
        out.residuals.push_back({c, res});
        if (std::abs(res) < best) {
            best = std::abs(res);
            out.best = c;
        }
    }
    return out;
}

SphericalMean mpb_defect(const SemiregularRational& f, const Quaternion& a, double r, const IntegratorConfig& cfg) {
    SemiregularRational fa = translate(f, a);
    double tol = rejection_threshold(cfg, r, f.scale_degree());
    Integrand integrand = [&](const Quaternion& w, double* out) {
        double x = f.abs_at(w);
        double y = f.is_slice_preserving() ? f.abs_at(conj(w)) : norm(f(spherical_conjugate(fa, w)));
        if (!(x >= tol) || !(y >= tol)) return false;
        out[0] = std::log(x) - std::log(y);
        return true;
    };
    return integrate(integrand, 1, r, cfg)[0];
}

// ---- First Main Theorem ----

std::vector<FmtRow> verify_fmt(const SemiregularRational& f, const Target& a, const std::vector<double>& radii,
                               const IntegratorConfig& cfg, int form) {
    if (form < 1 || form > 3) throw Error(ErrorKind::InvalidArgument, "form must be 1, 2 or 3");
    CountingDivisor cd_a = counting_divisor(f, a);
    CountingDivisor cd_inf = counting_divisor(f, std::nullopt);
    WeilFunction lam = WeilFunction::analytic(a);
    SemiregularRational fa = a ? translate(f, *a) : f;
    RealRatio fs = symmetrize(f);
    RealRatio fas = symmetrize(fa);
    SemiregularRational fc = conjugate(f);

    std::vector<Field> fields;
    if (form == 3) {
        fields.push_back([&](const Quaternion& w) { return lam(f(w)) - 0.5 * log_plus(fs.abs_at(w)); });
    } else if (form == 1) {
        fields.push_back([&](const Quaternion& w) {
            double m = a ? log_plus(1.0 / fas.abs_at(w)) : log_plus(fs.abs_at(w));
            return 0.5 * m - 0.5 * log_plus(fs.abs_at(w));
        });
        fields.push_back([&](const Quaternion& w) { return log_plus(norm(f(w) * fc(w))); });
    } else {
        fields.push_back([&](const Quaternion& w) {
            Quaternion v = f(spherical_conjugate(fa, w));
            Quaternion u = f(spherical_conjugate(f, w));
            return 0.5 * lam(f(w)) + 0.5 * lam(v) - 0.5 * log_plus(fs.abs_at(w)) + 0.5 * log_plus(norm(u)) -
                   0.5 * log_plus(norm(v));
        });
    }

    std::vector<FmtRow> rows;
    for (double r : radii) {
        FmtRow row;
        row.r = r;
        row.N_a = N_integrated(cd_a.divisor, cd_a.side, r);
        row.N_inf = N_integrated(cd_inf.divisor, cd_inf.side, r);
        row.H = harmonic_remainder_deflated(f, a, r);
        auto m = shared_means(fields, r, cfg);
        row.residual = row.N_a - row.H - row.N_inf + m[0].value;
        row.std_error = m[0].std_error;
        if (form == 1) row.envelope = m[1].value;
        rows.push_back(row);
    }
    return rows;
}

O1Summary summarize(const std::vector<double>& radii, const std::vector<double>& values) {
    O1Summary s;
    if (values.empty()) return s;
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.spread = *hi - *lo;
    s.max = *hi;
    const std::size_t n = values.size();
    if (n < 2) return s;
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += std::log(radii[k]);
        my += values[k];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double dx = std::log(radii[k]) - mx;
        sxy += dx * (values[k] - my);
        sxx += dx * dx;
    }
    s.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    return s;
}

std::vector<double> admissible_grid(double r_min, double r_max, int count, const std::vector<double>& avoid) {
    if (!(r_min > 0.0) || !(r_max >= r_min) || count < 1)
        throw Error(ErrorKind::InvalidArgument, "bad radius grid");
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
        double r = count == 1 ? r_min : r_min * std::pow(r_max / r_min, static_cast<double>(k) / (count - 1));
        for (bool moved = true; moved;) {
            moved = false;
            for (double rho : avoid)
                if (std::abs(r - rho) <= 1e-6 * r) {
                    r *= 1.0 + 1e-5;
                    moved = true;
                }
        }
        out.push_back(r);
    }
    return out;
}

std::vector<ProfileRow> profile(const SemiregularRational& f, const Target& a, const std::vector<double>& radii,
                                const IntegratorConfig& cfg) {
    CountingDivisor cd = counting_divisor(f, a);
    CountingDivisor cd_inf = counting_divisor(f, std::nullopt);
    WeilFunction lam = WeilFunction::analytic(a);
    RealRatio fs = symmetrize(f);
    std::vector<Field> fields{
        characteristic_field(f, a),
        [&](const Quaternion& w) { return lam(f(w)) - 0.5 * log_plus(fs.abs_at(w)); },
    };
    std::vector<ProfileRow> rows;
    for (double r : radii) {
        ProfileRow row;
        row.r = r;
        row.N = N_integrated(cd.divisor, cd.side, r);
        row.H = harmonic_remainder_deflated(f, a, r);
        row.A = angular_term(cd.divisor, cd.side, r);
        auto m = shared_means(fields, r, cfg);
        row.m = m[0];
        row.T = row.N + 0.5 * row.m.value - row.H;
        row.T_se = 0.5 * row.m.std_error;
        row.fmt3 = row.N - row.H - N_integrated(cd_inf.divisor, cd_inf.side, r) + m[1].value;
        row.fmt3_se = m[1].std_error;
        rows.push_back(row);
    }
    return rows;
}

// ---- characteristic algebra ----

std::vector<Check> characteristic_algebra_suite(const AlgebraInputs& in, const IntegratorConfig& cfg) {
    const SemiregularRational& f = in.f;
    const SemiregularRational& g = in.g;
    const Quaternion a = in.a;
    SemiregularRational f2 = star_pow(f, 2), f3 = star_pow(f, 3);
    SemiregularRational fg = star_mul(f, g), fpg = add(f, g);
    SemiregularRational mixed = add(star_mul(f, conjugate(g)), star_mul(g, conjugate(f)));
    SemiregularRational fc = conjugate(f);
    SemiregularRational fsr(f.num_sym().to_left(), f.den_sym().to_left());
    SemiregularRational finv = star_reciprocal(f);
    SemiregularRational phi = linear_fractional(in.t, f);
    const Target inf = std::nullopt;

    // (function, target) pairs whose characteristic enters a check
    struct Term {
        const SemiregularRational* fn;
        Target at;
    };
    std::vector<Term> terms{{&f, inf},  {&f2, inf}, {&f3, inf},       {&g, inf}, {&fg, inf},    {&fpg, inf},
                            {&fc, inf}, {&fsr, inf}, {&fc, a},        {&f, conj(a)}, {&f, a},   {&finv, a},
                            {&phi, a},  {&f, in.b}};
    enum { F, F2, F3, G, FG, FPG, FC, FS, FC_A, F_ABAR, F_A, FINV_A, PHI_A, F_B, NTERMS };

    std::vector<Field> fields;
    for (const auto& t : terms) fields.push_back(characteristic_field(*t.fn, t.at));
    const std::size_t MIXED = fields.size();
    fields.push_back([&](const Quaternion& w) { return log_plus(norm(mixed(w))); });
    const std::size_t LOGF = fields.size();
    fields.push_back([&](const Quaternion& w) { return log_plus(norm(f(w))); });
    const std::size_t LOGFS = fields.size();
    fields.push_back([&](const Quaternion& w) { return log_plus(norm(f(spherical_conjugate(f, w)))); });

    // linear combinations evaluated per sample so their standard errors are exact
    struct Combo {
        std::string name;
        std::vector<std::pair<std::size_t, double>> coef;
        std::vector<std::pair<std::size_t, double>> closed;  // term index, weight on T's closed part
        double constant = 0.0;
        enum Gate { Exact, Slack, Info, Sandwich } gate;
    };
    const double L3 = std::log(3.0), L2 = std::log(2.0);
    std::vector<Combo> combos{
        {"T(f^2*,inf) - 2 T(f,inf)", {{F2, 0.5}, {F, -1.0}}, {{F2, 1}, {F, -2}}, 0.0, Combo::Exact},
        {"T(f^3*,inf) - 3 T(f,inf)", {{F3, 0.5}, {F, -1.5}}, {{F3, 1}, {F, -3}}, 0.0, Combo::Exact},
        {"T(f,inf) + T(g,inf) - T(f*g,inf)", {{F, 0.5}, {G, 0.5}, {FG, -0.5}}, {{F, 1}, {G, 1}, {FG, -1}}, 0.0,
         Combo::Slack},
        {"T(f,inf) + T(g,inf) + log 3 + m(mixed,inf)/2 - T(f+g,inf)",
         {{F, 0.5}, {G, 0.5}, {MIXED, 0.5}, {FPG, -0.5}},
         {{F, 1}, {G, 1}, {FPG, -1}},
         L3,
         Combo::Slack},
        {"T(f^c,inf) - T(f,inf)", {{FC, 0.5}, {F, -0.5}}, {{FC, 1}, {F, -1}}, 0.0, Combo::Exact},
        {"T(f,inf) - T(f^s,inf)/2", {{F, 0.5}, {FS, -0.25}}, {{F, 1}, {FS, -0.5}}, 0.0, Combo::Exact},
        {"T(f^c,a) - T(f,conj a)", {{FC_A, 0.5}, {F_ABAR, -0.5}}, {{FC_A, 1}, {F_ABAR, -1}}, 0.0, Combo::Exact},
        {"T(f^c,a) - T(f,a)", {{FC_A, 0.5}, {F_A, -0.5}}, {{FC_A, 1}, {F_A, -1}}, 0.0,
         a.is_real() ? Combo::Exact : Combo::Info},
        {"T(f^c,a) - T(f^s,inf)/2", {{FC_A, 0.5}, {FS, -0.25}}, {{FC_A, 1}, {FS, -0.5}}, 0.0, Combo::Info},
        {"sandwich lower: m(f) + m(f o S_f) - m(f^s)", {{LOGF, 1.0}, {LOGFS, 1.0}, {F, -1.0}}, {}, 0.0,
         Combo::Sandwich},
        {"sandwich upper: m(f^s) + log 2 - m(f) - m(f o S_f)", {{F, 1.0}, {LOGF, -1.0}, {LOGFS, -1.0}}, {}, L2,
         Combo::Sandwich},
    };

    std::vector<Check> out;
    std::vector<double> d5, d6, d1;
    for (double r : in.radii) {
        std::vector<double> closed(NTERMS);
        for (std::size_t k = 0; k < NTERMS; ++k) closed[k] = characteristic_closed_part(*terms[k].fn, terms[k].at, r);
        std::vector<Field> all = fields;
        for (const auto& c : combos) {
            auto coef = c.coef;
            all.push_back([&, coef](const Quaternion& w) {
                double s = 0.0;
                for (auto [k, x] : coef) s += x * fields[k](w);
                return s;
            });
        }
        auto m = shared_means(all, r, cfg);
        for (std::size_t j = 0; j < combos.size(); ++j) {
            const Combo& c = combos[j];
            const SphericalMean& cm = m[fields.size() + j];
            double v = cm.value + c.constant;
            for (auto [k, x] : c.closed) v += x * closed[k];
            Check ch;
            ch.name = c.name + " @ r=" + std::to_string(r);
            ch.value = v;
            switch (c.gate) {
                case Combo::Exact:
                    ch.tolerance = 1e-9;
                    ch.passed = std::abs(v) <= ch.tolerance;
                    break;
                case Combo::Slack:
                    ch.tolerance = 3.0 * cm.std_error;
                    ch.passed = v >= -ch.tolerance;
                    break;
                case Combo::Sandwich:
                    ch.tolerance = 1e-12;
                    ch.passed = v >= -ch.tolerance;
                    break;
                case Combo::Info:
                    ch.tolerance = 3.0 * cm.std_error;
                    ch.passed = std::abs(v) <= ch.tolerance;
                    ch.gated = false;
                    break;
            }
            out.push_back(ch);
        }
        auto T = [&](std::size_t k) { return closed[k] + 0.5 * m[k].value; };
        d5.push_back(T(FINV_A) - T(F_A));
        d6.push_back(T(PHI_A) - T(F_A));
        d1.push_back(T(F_A) - T(F_B));
    }
    auto report = [&](const std::string& name, const std::vector<double>& v) {
        O1Summary s = summarize(in.radii, v);
        out.push_back({name + " spread", s.spread, 0.0, true, false});
        out.push_back({name + " slope", s.slope, 0.0, true, false});
    };
    report("T(f^-*,a) - T(f,a)", d5);
    report("T(Phi(f),a) - T(f,a)", d6);
    report("T(f,a) - T(f,b)", d1);
    return out;
}

NBoundReport n_bound_check(const SemiregularRational& f, const Quaternion& a, const std::vector<double>& radii,
                           const IntegratorConfig& cfg) {
    NBoundReport rep;
    rep.radii = radii;
    CountingDivisor cd = counting_divisor(f, a);
    for (double r : radii) {
        Characteristic t = characteristic(f, std::nullopt, r, cfg);
        double N = N_integrated(cd.divisor, cd.side, r);
        rep.excess.push_back(N - t.T - harmonic_remainder_deflated(f, a, r));
    }
    rep.summary = summarize(radii, rep.excess);
    return rep;
}

}  // namespace qnev
