#include "vi/serialize.hpp"

#include <stdexcept>

namespace vi::ser {

json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) { return Rational::parse(j.get<std::string>()); }

json ratfunc_to_json(const RatFunc& f) {
    json num = json::array(), den = json::array();
    for (long i = 0; i <= f.num().degree(); ++i) num.push_back(f.num().coeff((size_t)i).str());
    for (long i = 0; i <= f.den().degree(); ++i) den.push_back(f.den().coeff((size_t)i).str());
    return json{{"num", num}, {"den", den}};
}

RatFunc ratfunc_from_json(const json& j) {
    std::vector<Rational> num, den;
    for (auto& c : j.at("num")) num.push_back(Rational::parse(c.get<std::string>()));
    for (auto& c : j.at("den")) den.push_back(Rational::parse(c.get<std::string>()));
    return RatFunc(Poly(num), Poly(den));
}

json ucoeff_to_json(const RatFunc& f) {
    if (f.is_laurent()) {
        json m = json::object();
        for (auto& [k, c] : f.laurent_terms()) m[std::to_string(k)] = c.str();
        return m;
    }
    return ratfunc_to_json(f);
}

RatFunc ucoeff_from_json(const json& j) {
    if (j.is_object() && !j.contains("num")) {
        std::map<long, Rational> terms;
        for (auto& [k, v] : j.items()) terms[std::stol(k)] = Rational::parse(v.get<std::string>());
        return RatFunc::from_laurent(terms);
    }
    return ratfunc_from_json(j);
}

std::string exp_string(long long num, long den) {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

template <class D>
json series_to_json_impl(const Series<D>& s, const std::function<json(const D&)>& enc) {
    json terms = json::array();
    for (auto& [k, c] : s.terms())
        terms.push_back(json{{"exp", exp_string(k, s.den())}, {"coeff", enc(c)}});
    json j{{"variable", s.var()}, {"exp_den", s.den()}, {"terms", terms}};
    j["order"] = s.exact() ? "inf" : exp_string(s.ord_key(), s.den());
    return j;
}

long long parse_exp_num(const std::string& s, long den) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return std::stoll(s) * den;
    long long num = std::stoll(s.substr(0, slash));
    long d = std::stol(s.substr(slash + 1));
    if (den % d != 0) throw std::domain_error("series exponent off the declared lattice");
    return num * (den / d);
}

template <class D>
Series<D> series_from_json_impl(const json& j, const std::function<D(const json&)>& dec) {
    long den = j.at("exp_den").get<long>();
    Series<D> s = Series<D>::zero(j.at("variable").get<std::string>(), den, 1);
    std::string ord = j.at("order").get<std::string>();
    s.set_ord(ord == "inf" ? ORD_INF : parse_exp_num(ord, den));
    for (auto& t : j.at("terms"))
        s.set_term(parse_exp_num(t.at("exp").get<std::string>(), den), dec(t.at("coeff")));
    return s;
}

}  // namespace

json series_to_json(const QSeries& s) {
    return series_to_json_impl<Rational>(s, [](const Rational& c) { return rational_to_json(c); });
}
QSeries series_from_json(const json& j) {
    return series_from_json_impl<Rational>(j, [](const json& c) { return rational_from_json(c); });
}
json tseries_to_json(const Series<RatFunc>& s) {
    return series_to_json_impl<RatFunc>(s, [](const RatFunc& c) { return ratfunc_to_json(c); });
}
Series<RatFunc> tseries_from_json(const json& j) {
    return series_from_json_impl<RatFunc>(j, [](const json& c) { return ratfunc_from_json(c); });
}
json yseries_to_json(const Series<RatFunc>& s) {
    return series_to_json_impl<RatFunc>(s, [](const RatFunc& c) { return ucoeff_to_json(c); });
}
Series<RatFunc> yseries_from_json(const json& j) {
    return series_from_json_impl<RatFunc>(j, [](const json& c) { return ucoeff_from_json(c); });
}

}  // namespace vi::ser
