#pragma once

#include <fockops/classify.hpp>
#include <fockops/finite_section.hpp>
#include <fockops/oracle.hpp>
#include <fockops/region.hpp>

#include <json.hpp>

namespace fockops::json {

using Json = nlohmann::ordered_json;

/// Reals: finite numbers as-is, infinities as "inf"/"-inf", NaN as null.
inline Json real(double x)
{
    if (std::isnan(x))
        return nullptr;
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x;
}

inline Json complex(Complex z) { return Json::array({real(z.real()), real(z.imag())}); }

inline Json complex_list(std::span<const Complex> c)
{
    Json out = Json::array();
    for (Complex z : c)
        out.push_back(complex(z));
    return out;
}

inline double parse_real(const Json& j, const std::string& field)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity")
            return kInf;
        if (s == "-inf")
            return -kInf;
    }
    throw std::invalid_argument("field '" + field + "': expected a real number or \"inf\"");
}

/// [re, im] pairs, or plain reals.
inline Complex parse_complex(const Json& j, const std::string& field)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("field '" + field + "': expected [re, im] or a real number");
}

inline poly::Coeffs parse_complex_list(const Json& j, const std::string& field)
{
    if (!j.is_array())
        throw std::invalid_argument("field '" + field + "': expected an array");
    poly::Coeffs out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_complex(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

inline Json to_json(const ExpPolyFunction& f)
{
    return {{"type", "exp_poly"}, {"poly", complex_list(f.poly())}, {"expo", complex_list(f.expo())}};
}

inline ExpPolyFunction exp_poly_from_json(const Json& j, const std::string& field)
{
    if (!j.is_object())
        throw std::invalid_argument("field '" + field + "': expected an object");
    if (j.contains("type") && j["type"] != "exp_poly")
        throw std::invalid_argument("field '" + field + ".type': only \"exp_poly\" is supported");
    poly::Coeffs p{1.0};
    if (j.contains("poly"))
        p = parse_complex_list(j["poly"], field + ".poly");
    std::array<Complex, 3> e{};
    if (j.contains("expo")) {
        auto v = parse_complex_list(j["expo"], field + ".expo");
        if (v.size() > 3)
            throw std::invalid_argument("field '" + field + ".expo': at most 3 coefficients (a0, a1, a2)");
        std::copy(v.begin(), v.end(), e.begin());
    }
    if (p.empty())
        throw std::invalid_argument("field '" + field + ".poly': must not be empty");
    return {std::move(p), e};
}

inline Json to_json(const TaylorFunction& f)
{
    return {{"type", "taylor"}, {"truncation_degree", f.truncation_degree()}, {"coeffs", complex_list(f.coeffs())}};
}

inline Json to_json(const AffineSymbol& s)
{
    return {{"a", complex(s.a)}, {"b", complex(s.b)}, {"constant", s.is_constant}};
}

inline Json to_json(const OperatorSpec& s)
{
    return {{"u", to_json(s.u)}, {"psi", to_json(s.psi)}, {"n", s.n}};
}

inline OperatorSpec spec_from_json(const Json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("spec: expected an object");
    ExpPolyFunction u = j.contains("u") ? exp_poly_from_json(j["u"], "u") : ExpPolyFunction::constant(1.0);
    Complex a{1.0, 0.0}, b{};
    if (j.contains("psi")) {
        const auto& psi = j["psi"];
        if (!psi.is_object())
            throw std::invalid_argument("field 'psi': expected an object");
        if (psi.contains("a"))
            a = parse_complex(psi["a"], "psi.a");
        if (psi.contains("b"))
            b = parse_complex(psi["b"], "psi.b");
    }
    int n = 0;
    if (j.contains("n")) {
        if (!j["n"].is_number_integer() || j["n"].get<long>() < 0)
            throw std::invalid_argument("field 'n': expected a nonnegative integer");
        n = j["n"].get<int>();
    }
    return {std::move(u), AffineSymbol(a, b), n};
}

inline Json to_json(const FockTypeParams& p)
{
    return {{"family", to_string(p.family)}, {"m", real(p.m)}, {"p", real(p.p)}};
}

inline Json string_list(const std::vector<std::string>& v) { return Json(v); }

inline Json to_json(const NormResult& r)
{
    return {{"value", real(r.value)},
            {"log_value", real(r.log_value)},
            {"tail_bound", real(r.tail_bound)},
            {"family", to_string(r.family)},
            {"m", real(r.m)},
            {"p", real(r.p)},
            {"divergent", r.divergent},
            {"flags", string_list(r.flags)}};
}

inline Json to_json(const OracleResult& r)
{
    return {{"value", real(r.value)},
            {"log_value", real(r.log_value)},
            {"error_estimate", real(r.error_estimate)},
            {"scheme", r.scheme},
            {"evaluations", r.evaluations},
            {"divergent", r.divergent},
            {"radius", real(r.radius)}};
}

inline Json to_json(const Evidence& e)
{
    return {{"rule", e.rule}, {"statement", e.statement}, {"value", real(e.value)}};
}

inline Json evidence_list(const std::vector<Evidence>& ev)
{
    Json out = Json::array();
    for (const auto& e : ev)
        out.push_back(to_json(e));
    return out;
}

inline Json to_json(const ClassificationReport& r)
{
    return {{"kind", r.kind},
            {"p", real(r.p)},
            {"q", real(r.q)},
            {"m", real(r.m)},
            {"bounded", to_string(r.bounded)},
            {"compact", to_string(r.compact)},
            {"order_bounded", to_string(r.order_bounded)},
            {"closed_range", to_string(r.closed_range)},
            {"surjective", to_string(r.surjective)},
            {"L_sup", real(r.L_sup)},
            {"L_inf_essential", real(r.L_inf_essential)},
            {"evidence", evidence_list(r.evidence)},
            {"flags", string_list(r.flags)}};
}

inline Json optional_real(const std::optional<double>& x) { return x ? real(*x) : Json(nullptr); }

inline Json to_json(const OrderBoundedResult& r)
{
    return {{"verdict", to_string(r.verdict)},
            {"q", real(r.q)},
            {"closed_form", optional_real(r.closed_form)},
            {"numeric", optional_real(r.numeric)},
            {"numeric_tail_rel", real(r.numeric_tail_rel)},
            {"evidence", evidence_list(r.evidence)},
            {"flags", string_list(r.flags)}};
}

inline Json to_json(const SurjectivityResult& r)
{
    Json rays = Json::array();
    for (auto [t, v] : r.ray_samples)
        rays.push_back(Json::array({real(t), real(v)}));
    return {{"verdict", to_string(r.verdict)},
            {"certificate", r.certificate},
            {"L_constant", real(r.L_constant)},
            {"L_spread", real(r.L_spread)},
            {"kernel_mismatch", real(r.kernel_mismatch)},
            {"kernel_point", complex(r.kernel_point)},
            {"kernel_coefficient", complex(r.kernel_coefficient)},
            {"ray_direction", complex(r.ray_direction)},
            {"ray_samples", rays},
            {"L_inf_essential", real(r.L_inf_essential)},
            {"flags", string_list(r.flags)}};
}

inline Json to_json(const RatioTest& r)
{
    Json ratios = Json::array();
    for (auto [k, v] : r.ratios)
        ratios.push_back(Json::array({k, real(v)}));
    return {{"m", real(r.m)},
            {"p", real(r.p)},
            {"q", real(r.q)},
            {"exponent", real(r.exponent)},
            {"intercept", real(r.intercept)},
            {"fit_from", r.fit_from},
            {"fit_to", r.fit_to},
            {"floor", real(r.floor)},
            {"ratios", ratios}};
}

inline Json to_json(const Eigen::MatrixXcd& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(complex(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const SamplingProbeResult& r)
{
    return {{"label", r.label},
            {"delta_hat", real(r.delta_hat)},
            {"argmin", r.argmin},
            {"ratios", [&] {
                 Json a = Json::array();
                 for (double x : r.ratios)
                     a.push_back(real(x));
                 return a;
             }()}};
}

/// Deterministic text: fixed field order, two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace fockops::json
