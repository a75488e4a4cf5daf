#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qnev/nevanlinna.hpp"

namespace qnev {

using nlohmann::json;

// [w,x,y,z] or a bare real number.
Quaternion quaternion_from_json(const json& j);
json to_json(const Quaternion& q);
// "inf" or a quaternion literal.
Target target_from_json(const json& j);
json target_to_json(const Target& a);

// [[w,x,y,z], ...], lowest degree first.
LeftPoly poly_from_json(const json& j);
json to_json(const LeftPoly& f);
// {"num": [...], "den": [...]}; a bare coefficient array is a polynomial.
SemiregularRational rational_from_json(const json& j);
json to_json(const SemiregularRational& f);

json to_json(const SphereDivisor& d);
SphereDivisor divisor_from_json(const json& j);

json to_json(const SphericalMean& m);
json to_json(const JensenReport& rep);
json to_json(const ArbiterReport& rep);
json to_json(const std::vector<FmtRow>& rows);
json to_json(const std::vector<ProfileRow>& rows);
json to_json(const std::vector<Check>& checks);

// Fixed columns, one row per radius.
inline constexpr const char* kProfileColumns = "r,N,m,m_se,H,T,T_se,A,fmt3,fmt3_se";
inline constexpr const char* kFmtColumns = "r,N_a,N_inf,H,residual,std_error,envelope";
inline constexpr const char* kJensenColumns =
    "r,lhs,boundary_f,boundary_f_se,boundary_fSf,boundary_fSf_se,harmonic,divisor_sum,kernel,rhs,residual,sigma";
void write_csv(std::ostream& os, const std::vector<ProfileRow>& rows);
void write_csv(std::ostream& os, const std::vector<FmtRow>& rows);
void write_csv(std::ostream& os, const std::vector<JensenReport>& reps);

}  // namespace qnev
