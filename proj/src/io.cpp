#include "qnev/io.hpp"

#include <cstdio>
#include <ostream>

#include "qnev/error.hpp"

namespace qnev {

namespace {

Error bad(const std::string& what) { return Error(ErrorKind::InvalidConfig, what); }

// 17 significant digits so that CSV round-trips doubles.
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

Quaternion quaternion_from_json(const json& j) {
    if (j.is_number()) return Quaternion(j.get<double>());
    if (!j.is_array() || j.size() != 4) throw bad("quaternion must be [w,x,y,z]");
    for (const auto& v : j)
        if (!v.is_number()) throw bad("quaternion components must be numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

Target target_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::nullopt;
        throw bad("target must be \"inf\" or [w,x,y,z]");
    }
    return quaternion_from_json(j);
}

json target_to_json(const Target& a) { return a ? to_json(*a) : json("inf"); }

LeftPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw bad("polynomial must be an array of [w,x,y,z]");
    std::vector<Quaternion> c;
    for (const auto& v : j) c.push_back(quaternion_from_json(v));
    return LeftPoly(std::move(c));
}

json to_json(const LeftPoly& f) {
    json out = json::array();
    for (const auto& c : f.coeffs()) out.push_back(to_json(c));
    return out;
}

SemiregularRational rational_from_json(const json& j) {
    if (j.is_array()) return SemiregularRational(poly_from_json(j));
    if (!j.is_object() || !j.contains("num")) throw bad("rational must be {\"num\": [...], \"den\": [...]}");
    LeftPoly num = poly_from_json(j.at("num"));
    LeftPoly den = j.contains("den") ? poly_from_json(j.at("den")) : LeftPoly::constant(kOne);
    if (den.is_zero()) throw bad("denominator is zero");
    return SemiregularRational(std::move(num), std::move(den));
}

json to_json(const SemiregularRational& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

json to_json(const SphereDivisor& d) {
    json e = json::array();
    for (const auto& x : d.entries) e.push_back({{"re", x.sphere.re}, {"im", x.sphere.im}, {"order", x.order}});
    return {{"entries", e}, {"origin_order", d.origin_order}};
}

SphereDivisor divisor_from_json(const json& j) {
    SphereDivisor d;
    const json& e = j.is_array() ? j : j.at("entries");
    for (const auto& x : e)
        d.entries.push_back({{x.at("re").get<double>(), x.at("im").get<double>()}, x.at("order").get<int>()});
    if (j.is_object() && j.contains("origin_order")) d.origin_order = j.at("origin_order").get<int>();
    return d;
}

json to_json(const SphericalMean& m) {
    return {{"value", m.value},
            {"std_error", m.std_error},
            {"effective_samples", m.effective_samples},
            {"rejected", m.rejected}};
}

json to_json(const JensenReport& r) {
    return {{"radius", r.radius},
            {"origin_order", r.origin_order},
            {"divisor", to_json(r.divisor)},
            {"lhs", r.lhs},
            {"boundary_f", to_json(r.boundary_f)},
            {"boundary_fSf", to_json(r.boundary_fSf)},
            {"sigma", r.sigma},
            {"harmonic", r.harmonic},
            {"divisor_sum", r.divisor_sum},
            {"kernel_convention", to_string(r.kernel_convention)},
            {"rhs", r.rhs},
            {"residual", r.residual}};
}

json to_json(const ArbiterReport& a) {
    json res = json::array();
    for (auto [c, v] : a.residuals) res.push_back({{"c", c}, {"residual", v}});
    return {{"sphere", {{"re", a.sphere.re}, {"im", a.sphere.im}}},
            {"total_order", a.total_order},
            {"factorization_order", a.factorization_order},
            {"residuals", res},
            {"best", a.best},
            {"sigma", a.sigma},
            {"base", to_json(a.base)}};
}

json to_json(const std::vector<FmtRow>& rows) {
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"r", r.r},
                       {"N_a", r.N_a},
                       {"N_inf", r.N_inf},
                       {"H", r.H},
                       {"residual", r.residual},
                       {"std_error", r.std_error},
                       {"envelope", r.envelope}});
    return out;
}

json to_json(const std::vector<ProfileRow>& rows) {
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"r", r.r},
                       {"N", r.N},
                       {"m", r.m.value},
                       {"m_se", r.m.std_error},
                       {"H", r.H},
                       {"T", r.T},
                       {"T_se", r.T_se},
                       {"A", r.A},
                       {"fmt3", r.fmt3},
                       {"fmt3_se", r.fmt3_se}});
    return out;
}

json to_json(const std::vector<Check>& checks) {
    json out = json::array();
    for (const auto& c : checks)
        out.push_back({{"name", c.name},
                       {"value", c.value},
                       {"tolerance", c.tolerance},
                       {"passed", c.passed},
                       {"gated", c.gated}});
    return out;
}

void write_csv(std::ostream& os, const std::vector<ProfileRow>& rows) {
    os << kProfileColumns << '\n';
    for (const auto& r : rows)
        os << num(r.r) << ',' << num(r.N) << ',' << num(r.m.value) << ',' << num(r.m.std_error) << ',' << num(r.H)
           << ',' << num(r.T) << ',' << num(r.T_se) << ',' << num(r.A) << ',' << num(r.fmt3) << ','
           << num(r.fmt3_se) << '\n';
}

void write_csv(std::ostream& os, const std::vector<FmtRow>& rows) {
    os << kFmtColumns << '\n';
    for (const auto& r : rows)
        os << num(r.r) << ',' << num(r.N_a) << ',' << num(r.N_inf) << ',' << num(r.H) << ',' << num(r.residual)
           << ',' << num(r.std_error) << ',' << num(r.envelope) << '\n';
}

void write_csv(std::ostream& os, const std::vector<JensenReport>& reps) {
    os << kJensenColumns << '\n';
    for (const auto& r : reps)
        os << num(r.radius) << ',' << num(r.lhs) << ',' << num(r.boundary_f.value) << ','
           << num(r.boundary_f.std_error) << ',' << num(r.boundary_fSf.value) << ','
           << num(r.boundary_fSf.std_error) << ',' << num(r.harmonic) << ',' << num(r.divisor_sum) << ','
           << to_string(r.kernel_convention) << ',' << num(r.rhs) << ',' << num(r.residual) << ','
           << num(r.sigma) << '\n';
}

}  // namespace qnev
