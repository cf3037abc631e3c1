#include "hilbq/json_io.hpp"

#include <fstream>
#include <sstream>

namespace hilbq {

Json rational_to_json(const Rational& r) {
    return Json{{"n", r.numerator().get_str()}, {"d", r.denominator().get_str()}};
}

Rational rational_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("d"))
        throw std::invalid_argument("rational json: expected {\"n\",\"d\"}");
    return Rational(mpz_class(j["n"].get<std::string>()),
                    mpz_class(j["d"].get<std::string>()));
}

Json tscalar_to_json(const TScalar& t) {
    Json arr = Json::array();
    for (const auto& [k, c] : t.terms()) arr.push_back(Json::array({k, rational_to_json(c)}));
    return arr;
}

TScalar tscalar_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("tscalar json: expected array");
    TScalar t;
    for (const auto& e : j) t.add_term(e.at(0).get<int>(), rational_from_json(e.at(1)));
    return t;
}

Json series_to_json(const PQSeries& s) {
    Json terms = Json::array();
    for (const auto& [d, layer] : s.coeffs()) {
        Json l = Json::array();
        for (const auto& [dp, c] : layer) l.push_back(Json::array({dp, tscalar_to_json(c)}));
        terms.push_back(Json::array({d, l}));
    }
    return Json{{"q_order", s.q_order()}, {"terms", terms}};
}

PQSeries series_from_json(const Json& j) {
    PQSeries s(j.at("q_order").get<int>());
    for (const auto& t : j.at("terms")) {
        int d = t.at(0).get<int>();
        for (const auto& e : t.at(1))
            s.add_term(d, e.at(0).get<int>(), tscalar_from_json(e.at(1)));
    }
    return s;
}

Json surface_to_json(const SurfaceModel& s) {
    Json basis = Json::array();
    for (const auto& b : s.basis)
        basis.push_back(Json{{"name", b.name}, {"deg", b.deg}, {"odd", b.odd}});
    Json cup = Json::array();
    for (size_t i = 0; i < s.dim(); ++i)
        for (size_t j = 0; j < s.dim(); ++j) {
            const auto& c = s.cup_table[i][j];
            if (c.empty()) continue;
            Json terms = Json::array();
            for (const auto& [k, v] : c) terms.push_back(Json::array({k, tscalar_to_json(v)}));
            cup.push_back(Json::array({i, j, terms}));
        }
    Json integral = Json::array();
    for (size_t i = 0; i < s.dim(); ++i)
        if (!s.integral[i].is_zero())
            integral.push_back(Json::array({i, tscalar_to_json(s.integral[i])}));
    Json classes = Json::object();
    for (const auto& [name, c] : s.classes) {
        Json terms = Json::array();
        for (const auto& [k, v] : c) terms.push_back(Json::array({k, tscalar_to_json(v)}));
        classes[name] = terms;
    }
    return Json{{"basis", basis},       {"cup", cup}, {"integral", integral},
                {"classes", classes},   {"g", s.genus}, {"dS", s.dS},
                {"equivariant", s.equivariant}};
}

SurfaceModel surface_from_json(const Json& j) {
    SurfaceModel s;
    for (const auto& b : j.at("basis"))
        s.basis.push_back({b.at("name").get<std::string>(), b.at("deg").get<int>(),
                           b.at("odd").get<bool>()});
    const size_t n = s.basis.size();
    s.cup_table.assign(n, std::vector<SurfaceClass>(n));
    for (const auto& e : j.at("cup")) {
        size_t i = e.at(0).get<size_t>();
        size_t k = e.at(1).get<size_t>();
        if (i >= n || k >= n) throw std::invalid_argument("surface json: cup index range");
        SurfaceClass c;
        for (const auto& t : e.at(2)) {
            int idx = t.at(0).get<int>();
            if (idx < 0 || idx >= static_cast<int>(n))
                throw std::invalid_argument("surface json: cup target range");
            c[idx] = tscalar_from_json(t.at(1));
        }
        s.cup_table[i][k] = std::move(c);
    }
    s.integral.assign(n, TScalar());
    for (const auto& e : j.at("integral")) {
        size_t i = e.at(0).get<size_t>();
        if (i >= n) throw std::invalid_argument("surface json: integral index range");
        s.integral[i] = tscalar_from_json(e.at(1));
    }
    for (const auto& [name, arr] : j.at("classes").items()) {
        SurfaceClass c;
        for (const auto& t : arr) c[t.at(0).get<int>()] = tscalar_from_json(t.at(1));
        s.classes[name] = std::move(c);
    }
    s.genus = j.at("g").get<int>();
    s.dS = j.at("dS").get<int>();
    s.equivariant = j.value("equivariant", false);
    s.verify();
    return s;
}

SurfaceModel load_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_surface: cannot open '" + path + "'");
    Json j;
    in >> j;
    return surface_from_json(j);
}

Json operator_to_json(const OperatorSeries& o, const SurfaceModel& s) {
    Json basis = Json::array();
    for (const auto& m : o.basis()) basis.push_back(m.render(s));
    Json rows = Json::array();
    for (const auto& [key, ser] : o.entries())
        rows.push_back(Json{{"row", key.first}, {"col", key.second},
                            {"series", series_to_json(ser)}});
    return Json{{"level", o.level()}, {"q_order", o.q_order()}, {"basis", basis},
                {"rows", rows}};
}

Json bracket_table_to_json(const std::map<std::pair<int, int>, TScalar>& table) {
    Json rows = Json::array();
    for (const auto& [key, v] : table)
        rows.push_back(Json{{"d", key.first}, {"k", key.second},
                            {"value", tscalar_to_json(v)}});
    return Json{{"rows", rows}};
}

std::string bracket_table_to_tsv(const std::map<std::pair<int, int>, TScalar>& table) {
    std::ostringstream os;
    os << "d\tk\tvalue\n";
    for (const auto& [key, v] : table)
        os << key.first << "\t" << key.second << "\t" << v.str() << "\n";
    return os.str();
}

Json fit_to_json(const QJacFitResult& fit, const QJacMonomialBasis& basis) {
    Json j;
    switch (fit.status) {
        case QJacFitStatus::Unique: j["status"] = "exact_fit"; break;
        case QJacFitStatus::Underdetermined: j["status"] = "exact_fit_underdetermined"; break;
        case QJacFitStatus::NoSolution: j["status"] = "no_solution"; break;
    }
    j["equations"] = fit.equations;
    j["weight_bound"] = basis.weight_bound;
    j["dilation_bound"] = basis.dilation_bound;
    Json terms = Json::array();
    for (const auto& [i, c] : fit.coeffs)
        terms.push_back(Json{{"monomial", basis.monomials[i].name()},
                             {"coeff", rational_to_json(c)}});
    j["terms"] = terms;
    return j;
}

}  // namespace hilbq
