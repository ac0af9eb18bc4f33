#pragma once

#include <json.hpp>

#include <string>

#include "vi/qforms.hpp"
#include "vi/series.hpp"

namespace vi::ser {

using nlohmann::json;

// rationals as exact "num/den" strings everywhere
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

// rational function as dense ascending coefficient lists {num: [...], den: [...]}
json ratfunc_to_json(const RatFunc& f);
RatFunc ratfunc_from_json(const json& j);

// Laurent-normalizable u-coefficients as {"uexp": "num/den"} maps; falls back
// to the {num,den} record when the value is not a Laurent polynomial
json ucoeff_to_json(const RatFunc& f);
RatFunc ucoeff_from_json(const json& j);

// series records {variable, exp_den, order, terms:[{exp, coeff}]}
json series_to_json(const QSeries& s);
QSeries series_from_json(const json& j);
json tseries_to_json(const Series<RatFunc>& s);
Series<RatFunc> tseries_from_json(const json& j);
json yseries_to_json(const Series<RatFunc>& s);  // u-Laurent coefficient encoding
Series<RatFunc> yseries_from_json(const json& j);

std::string exp_string(long long num, long den);

}  // namespace vi::ser
