#include "arithlift/io.hpp"

#include <fstream>
#include <sstream>

#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"

namespace arithlift {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return out;
}

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

bool is_element(const json& j) { return j.is_number_integer() || j.is_string() || (j.is_array() && j.size() == 2 && !j[0].is_array()); }

}  // namespace

Rat rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer() || j.is_string()) return Scalar(rational_from_json(j));
    if (j.is_number_float()) return Scalar::real(j.get<double>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Scalar(cplx(j[0].get<double>(), j[1].get<double>()));
    throw ParseError("expected a scalar, got " + j.dump());
}

json scalar_to_json(const Scalar& x) {
    if (x.is_exact()) return to_string(x.rational());
    auto v = x.value();
    return json::array({v.real(), v.imag()});
}

QuadElem quad_from_json(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw ParseError("field element must be [a, b], got " + j.dump());
        return QuadElem(rational_from_json(j[0]), rational_from_json(j[1]));
    }
    return QuadElem(rational_from_json(j));
}

json arithmetic_to_json(const ArithmeticNumber& x, double lchi_value) {
    return json{{"symbolic", x.to_string()}, {"value", x.evaluate(lchi_value)}};
}

HermitianLattice lattice_from_json(const json& j) {
    try {
        long d = require(j, "discriminant").get<long>();
        auto K = std::make_shared<QuadField>(d);
        int rank = require(j, "rank").get<int>();
        if (rank < 1) throw ParseError("rank must be positive");
        if (j.contains("ideal_diagonal")) {
            const json& diag = j.at("ideal_diagonal");
            if (!diag.is_array() || static_cast<int>(diag.size()) != rank)
                throw ParseError("ideal_diagonal must have one entry per rank");
            std::vector<IdealSummand> parts;
            for (const json& e : diag) {
                const json& id = require(e, "ideal");
                std::vector<QuadElem> gens;
                if (is_element(id)) {
                    gens.push_back(quad_from_json(id));
                } else {
                    if (!id.is_array() || id.empty()) throw ParseError("ideal needs at least one generator");
                    for (const json& g : id) gens.push_back(quad_from_json(g));
                }
                Rat scale = e.contains("scale") ? rational_from_json(e.at("scale")) : Rat(1);
                parts.push_back({K->ideal_from_generators(gens), scale});
            }
            return HermitianLattice::ideal_diagonal(K, parts);
        }
        const json& gram = require(j, "gram");
        if (!gram.is_array() || static_cast<int>(gram.size()) != rank) throw ParseError("gram must be rank x rank");
        KMat G;
        for (const json& row : gram) {
            if (!row.is_array() || static_cast<int>(row.size()) != rank) throw ParseError("gram must be rank x rank");
            std::vector<QuadElem> r;
            for (const json& e : row) r.push_back(quad_from_json(e));
            G.push_back(r);
        }
        std::optional<bool> sd;
        if (j.contains("self_dual")) sd = j.at("self_dual").get<bool>();
        return HermitianLattice::from_gram(K, G, sd);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed lattice JSON: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

HermitianLattice load_lattice(const std::string& path) { return lattice_from_json(read_json_file(path)); }

json lattice_to_json(const HermitianLattice& L) {
    auto elem = [](const QuadElem& x) { return json::array({to_string(x.a), to_string(x.b)}); };
    json j{{"discriminant", L.field().d()}, {"rank", L.rank()}};
    if (L.ideal_presentation()) {
        json diag = json::array();
        for (auto& s : *L.ideal_presentation()) {
            json gens = json::array();
            for (auto& g : L.field().ideal_basis(s.ideal)) gens.push_back(elem(g));
            diag.push_back(json{{"ideal", gens}, {"scale", to_string(s.scale)}});
        }
        j["ideal_diagonal"] = diag;
    } else {
        json gram = json::array();
        for (auto& row : L.hermitian_form()) {
            json r = json::array();
            for (auto& x : row) r.push_back(elem(x));
            gram.push_back(r);
        }
        j["gram"] = gram;
    }
    j["self_dual"] = L.is_self_dual();
    return j;
}

HermSpaceSpec parse_space_spec(std::shared_ptr<const QuadField> field, const std::string& text) {
    if (text.empty() || text == "default") return default_incoherent(std::move(field));
    std::map<long, int> inv;
    for (const std::string& item : split(text, ',')) {
        auto kv = split(item, ':');
        if (kv.size() != 2) throw ParseError("space spec entries must look like p:e, got '" + item + "'");
        try {
            long p = std::stol(kv[0]);
            int e = std::stoi(kv[1]);
            if (e != 1 && e != -1) throw ParseError("local invariants must be +1 or -1");
            inv[p] = e;
        } catch (const std::logic_error&) {
            throw ParseError("bad space spec entry '" + item + "'");
        }
    }
    return incoherent_rank_one(std::move(field), inv);
}

ClassCharacter parse_class_character(const QuadField& K, const std::string& text) {
    ClassCharacter c;
    for (const std::string& t : split(text, ',')) c.values.push_back(Phase(parse_rational(t)));
    c.validate(K);
    return c;
}

json sfunction_to_json(const SFunction& f, const json& module_ref) {
    json vals = json::array();
    for (auto& v : f.values) vals.push_back(scalar_to_json(v));
    return json{{"module_of", module_ref}, {"values", vals}};
}

SFunction sfunction_from_json(const json& j, FQMPtr module) {
    const json& vals = require(j, "values");
    if (!vals.is_array() || vals.size() != module->size())
        throw DomainMismatch("S-function needs " + std::to_string(module->size()) + " values");
    SFunction f = SFunction::zero(module);
    for (size_t i = 0; i < vals.size(); ++i) f.values[i] = scalar_from_json(vals[i]);
    return f;
}

HarmonicFormData harmonic_form_from_json(const json& j, FQMPtr module, long D) {
    try {
        HarmonicFormData f;
        f.module = module;
        f.n = require(j, "n").get<int>();
        if (j.contains("weight")) {
            std::string w = j.at("weight").is_string() ? j.at("weight").get<std::string>() : j.at("weight").dump();
            if (w != "2-n" && parse_rational(w) != Rat(2 - f.n))
                throw ParseError("weight must be 2-n");
        }
        f.delta_invariant = j.value("delta_invariant", false);
        for (const json& c : require(j, "coeffs")) {
            std::vector<long> mu;
            for (const json& x : require(c, "mu")) mu.push_back(x.get<long>());
            if (mu.size() != module->orders().size())
                throw DomainMismatch("mu has " + std::to_string(mu.size()) + " coordinates, module needs " +
                                     std::to_string(module->orders().size()));
            Rat m = rational_from_json(require(c, "m"));
            if (D % to_long(Int(m.get_den())) != 0)
                throw DomainMismatch("exponent " + to_string(m) + " has denominator not dividing D");
            size_t idx = module->index(mu);
            if (c.contains("c_plus")) {
                auto it = f.c_plus.try_emplace(m, SFunction::zero(module)).first;
                it->second.values[idx] += scalar_from_json(c.at("c_plus"));
            }
            if (c.contains("c_minus")) {
                Scalar v = scalar_from_json(c.at("c_minus"));
                if (!v.is_zero()) {
                    if (m >= 0) throw DomainMismatch("c_minus is only allowed at negative exponents");
                    auto it = f.c_minus.try_emplace(m, SFunction::zero(module)).first;
                    it->second.values[idx] += v;
                }
            }
        }
        f.validate();
        return f;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed harmonic form JSON: ") + e.what());
    }
}

HarmonicFormData load_harmonic_form(const std::string& path, FQMPtr module, long D) {
    return harmonic_form_from_json(read_json_file(path), std::move(module), D);
}

json harmonic_form_to_json(const HarmonicFormData& f) {
    json coeffs = json::array();
    auto emit = [&](const std::map<Rat, SFunction>& table, const char* key) {
        for (auto& [m, phi] : table)
            for (size_t i = 0; i < phi.values.size(); ++i) {
                if (phi.values[i].is_zero()) continue;
                coeffs.push_back(json{{"mu", f.module->coords(i)}, {"m", to_string(m)}, {key, scalar_to_json(phi.values[i])}});
            }
    };
    emit(f.c_plus, "c_plus");
    emit(f.c_minus, "c_minus");
    return json{{"weight", "2-n"}, {"n", f.n}, {"coeffs", coeffs}, {"delta_invariant", f.delta_invariant}};
}

}  // namespace arithlift
