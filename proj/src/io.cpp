#include "apolar/io.hpp"

#include <cctype>

#include "json.hpp"

namespace apolar {

using ordered_json = nlohmann::ordered_json;

FormDocument document_of(const DPForm& f, const std::string& name) {
    FormDocument doc;
    if (!f.is_zero()) doc.field = f.terms().begin()->second.field();
    doc.r = f.nvars();
    doc.d = f.degree();
    doc.name = name;
    for (const auto& [e, c] : f.terms()) doc.terms.emplace_back(e, c.str());
    return doc;
}

DPForm form_of(const FormDocument& doc) {
    if (doc.r < 1) throw ParseError("document needs r >= 1");
    if (doc.d < 0) throw ParseError("document needs d >= 0");
    DPForm f(doc.r, doc.d);
    for (const auto& [e, cs] : doc.terms) {
        if (static_cast<int>(e.size()) != doc.r || expo_degree(e) != doc.d)
            throw ParseError("term exponent does not match r/d");
        f.add_term(e, Fq::parse(doc.field, cs));
    }
    return f;
}

std::string to_json(const FormDocument& doc) {
    ordered_json j;
    if (doc.field.is_rationals())
        j["field"] = "Q";
    else
        j["field"] = ordered_json{{"p", doc.field.characteristic()}};
    j["r"] = doc.r;
    j["d"] = doc.d;
    ordered_json terms = ordered_json::array();
    // canonical order: lex descending, the order DPForm iterates in
    DPForm canon = form_of(doc);
    for (const auto& [e, c] : canon.terms()) {
        ordered_json t;
        t["exp"] = e;
        t["coef"] = c.str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    if (!doc.name.empty()) j["name"] = doc.name;
    return j.dump();
}

FormDocument document_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    FormDocument doc;
    try {
        if (j.at("field").is_string()) {
            if (j.at("field").get<std::string>() != "Q") throw ParseError("unknown field tag");
            doc.field = Field::rationals();
        } else {
            doc.field = Field::prime(j.at("field").at("p").get<std::uint64_t>());
        }
        doc.r = j.at("r").get<int>();
        doc.d = j.at("d").get<int>();
        for (const auto& t : j.at("terms")) {
            Expo e = t.at("exp").get<std::vector<int>>();
            doc.terms.emplace_back(std::move(e), t.at("coef").get<std::string>());
        }
        if (j.contains("name")) doc.name = j.at("name").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad form document: ") + e.what());
    }
    return doc;
}

std::string param_form_to_json(const ParamForm& pf, const std::string& name) {
    ordered_json j;
    if (pf.field.is_rationals())
        j["field"] = "Q";
    else
        j["field"] = ordered_json{{"p", pf.field.characteristic()}};
    j["r"] = pf.nvars;
    j["d"] = pf.degree;
    j["params"] = pf.nparams;
    ordered_json terms = ordered_json::array();
    for (const auto& [e, c] : pf.form.terms()) {
        ordered_json t;
        t["exp"] = e;
        t["coef"] = c.str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    if (!name.empty()) j["name"] = name;
    return j.dump();
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
        if (start == pos) throw ParseError("expected a number at position " + std::to_string(start));
        return s.substr(start, pos - start);
    }
    int integer() {
        std::string n = number();
        if (n.find('/') != std::string::npos) throw ParseError("expected an integer, got '" + n + "'");
        return std::stoi(n);
    }
};

} // namespace

DPForm parse_form_text(const Field& K, int r, const std::string& text) {
    Lexer lex{text};
    if (lex.done()) throw ParseError("empty form");
    // gather terms; degree is fixed by the first term
    std::vector<std::pair<Expo, Fq>> terms;
    bool first = true;
    int degree = -1;
    while (!lex.done()) {
        bool neg = false;
        if (lex.eat('-')) {
            neg = true;
        } else if (lex.eat('+')) {
            if (first) throw ParseError("leading '+'");
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms");
        }
        first = false;

        Fq coef = Fq::one(K);
        bool have_coef = false;
        char c = lex.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coef = Fq::parse(K, lex.number());
            have_coef = true;
            lex.eat('*');
        }
        Expo e(static_cast<std::size_t>(r), 0);
        bool have_var = false;
        while (lex.peek() == 'x') {
            lex.eat('x');
            int idx = lex.integer();
            if (idx < 1 || idx > r) throw ParseError("variable index out of range: x" + std::to_string(idx));
            int power = 1;
            if (lex.eat('^')) {
                if (!lex.eat('(')) throw ParseError("expected '(' after '^'");
                power = lex.integer();
                if (!lex.eat(')')) throw ParseError("expected ')' closing the exponent");
            }
            e[static_cast<std::size_t>(idx - 1)] += power;
            have_var = true;
        }
        if (!have_coef && !have_var) throw ParseError("empty term");
        if (neg) coef = -coef;
        int dt = expo_degree(e);
        if (degree < 0) degree = dt;
        if (dt != degree) throw ParseError("inhomogeneous input: mixed degrees " + std::to_string(degree) +
                                           " and " + std::to_string(dt));
        terms.emplace_back(std::move(e), coef);
    }
    DPForm f(r, degree);
    for (auto& [e, c] : terms) f.add_term(e, c);
    return f;
}

std::string form_to_text(const DPForm& f) { return f.str("x"); }

} // namespace apolar
