#ifndef APOLAR_IO_HPP
#define APOLAR_IO_HPP

#include <string>
#include <vector>

#include "apolar/splitting.hpp"

namespace apolar {

// Interchange record for a form: coefficients travel as strings so both
// rationals and residues round-trip exactly.
struct FormDocument {
    Field field = Field::rationals();
    int r = 0;
    int d = 0;
    std::vector<std::pair<Expo, std::string>> terms; // lex descending
    std::string name;
};

FormDocument document_of(const DPForm& f, const std::string& name = "");
DPForm form_of(const FormDocument& doc);

// Canonical JSON: fixed key order, terms in lex-descending order, so
// serialize(parse(serialize(x))) == serialize(x) byte for byte.
std::string to_json(const FormDocument& doc);
FormDocument document_from_json(const std::string& text);

// Parameterized family document: adds the parameter count, coefficients as
// integer-polynomial strings in t1..tn.
std::string param_form_to_json(const ParamForm& pf, const std::string& name = "");

// Text syntax: terms "c * x1^(a1) x2^(a2) ..." joined by + and -, with
// integer, a/b, or residue coefficients.
DPForm parse_form_text(const Field& K, int r, const std::string& text);
std::string form_to_text(const DPForm& f);

} // namespace apolar

#endif
