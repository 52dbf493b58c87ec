// JSON reading and writing for coalgebras, rings, generator systems, B
// matrices and page sets. Every schema violation raises InputError naming the
// offending field.

#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "loopfloer/comparison.hpp"
#include "loopfloer/dgalg.hpp"
#include "loopfloer/errors.hpp"
#include "loopfloer/extended_complex.hpp"
#include "loopfloer/spectral.hpp"

namespace loopfloer::io {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
    return *it;
}

inline int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
    return j.get<int>();
}

inline std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw InputError(where + ": expected a string");
    return j.get<std::string>();
}

inline const json& get_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array");
    return j;
}

inline std::vector<std::string> string_list(const json& j, const std::string& where) {
    std::vector<std::string> out;
    std::size_t i = 0;
    for (const auto& e : get_array(j, where)) out.push_back(get_string(e, where + "[" + std::to_string(i++) + "]"));
    return out;
}

inline std::pair<std::string, std::string> split_key(const std::string& key, const std::string& where) {
    auto bar = key.find('|');
    if (bar == std::string::npos || key.find('|', bar + 1) != std::string::npos)
        throw InputError(where + ": key '" + key + "' must have the form \"x|y\"");
    return {key.substr(0, bar), key.substr(bar + 1)};
}

// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace detail

inline json parse(const std::string& text, const std::string& source = "input") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                         e.what() + ")");
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

inline void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Coalgebras

inline DGCoalgebra coalgebra_from_json(const json& j, const std::string& where = "coalgebra") {
    std::vector<CoalgebraCell> basis;
    std::size_t i = 0;
    for (const auto& cell : detail::get_array(detail::field(j, "basis", where), where + ".basis")) {
        const auto w = where + ".basis[" + std::to_string(i++) + "]";
        basis.push_back({detail::get_string(detail::field(cell, "name", w), w + ".name"),
                         detail::get_int(detail::field(cell, "degree", w), w + ".degree")});
    }
    DGCoalgebra::CoproductSpec coproduct;
    if (auto it = j.find("coproduct"); it != j.end()) {
        if (!it->is_object()) throw InputError(where + ".coproduct: expected an object");
        for (const auto& [name, terms] : it->items()) {
            const auto w = where + ".coproduct." + name;
            auto& out = coproduct[name];
            for (const auto& t : detail::get_array(terms, w)) {
                auto pair = detail::string_list(t, w);
                if (pair.size() != 2) throw InputError(w + ": each term must be a pair [left, right]");
                out.emplace_back(pair[0], pair[1]);
            }
        }
    }
    DGCoalgebra::DifferentialSpec differential;
    if (auto it = j.find("differential"); it != j.end()) {
        if (!it->is_object()) throw InputError(where + ".differential: expected an object");
        for (const auto& [name, terms] : it->items())
            differential[name] = detail::string_list(terms, where + ".differential." + name);
    }
    return DGCoalgebra::create(std::move(basis), coproduct, differential);
}

inline json to_json(const DGCoalgebra& c) {
    json basis = json::array();
    for (const auto& cell : c.basis()) basis.push_back({{"name", cell.name}, {"degree", cell.degree}});
    json coproduct = json::object();
    json differential = json::object();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& name = c.cell(i).name;
        if (!c.reduced_coproduct(i).empty()) {
            json terms = json::array();
            for (auto [l, r] : c.reduced_coproduct(i)) terms.push_back({c.cell(l).name, c.cell(r).name});
            coproduct[name] = terms;
        }
        if (!c.differential(i).empty()) {
            json terms = json::array();
            for (auto t : c.differential(i)) terms.push_back(c.cell(t).name);
            differential[name] = terms;
        }
    }
    return {{"basis", basis}, {"coproduct", coproduct}, {"differential", differential}};
}

// ---------------------------------------------------------------------------
// Rings

inline Ring ring_from_json(const json& j, const std::string& where = "ring") {
    const auto type = detail::get_string(detail::field(j, "type", where), where + ".type");
    auto cap_of = [&](bool required) -> std::optional<int> {
        auto it = j.find("cap");
        if (it == j.end()) {
            if (required) throw InputError(where + ": missing field 'cap'");
            return std::nullopt;
        }
        return detail::get_int(*it, where + ".cap");
    };
    if (type == "cobar") {
        return cobar(coalgebra_from_json(detail::field(j, "coalgebra", where), where + ".coalgebra"), *cap_of(true));
    }
    if (type == "tensor") {
        const auto& factors = detail::get_array(detail::field(j, "factors", where), where + ".factors");
        auto cap = cap_of(factors.empty());
        Ring ring;
        std::size_t i = 0;
        for (const auto& f : factors) {
            auto r = ring_from_json(f, where + ".factors[" + std::to_string(i++) + "]");
            ring = ring ? tensor_algebras(*ring, *r) : r;
        }
        if (!ring) return DGAlgebra::trivial(*cap);
        return cap ? ring->with_cap(*cap) : ring;
    }
    if (type == "free") {
        std::vector<std::string> names;
        std::vector<int> degrees;
        std::size_t i = 0;
        for (const auto& g : detail::get_array(detail::field(j, "generators", where), where + ".generators")) {
            const auto w = where + ".generators[" + std::to_string(i++) + "]";
            names.push_back(detail::get_string(detail::field(g, "name", w), w + ".name"));
            degrees.push_back(detail::get_int(detail::field(g, "degree", w), w + ".degree"));
        }
        std::map<std::string, std::vector<std::vector<std::string>>> differential;
        if (auto it = j.find("differential"); it != j.end()) {
            if (!it->is_object()) throw InputError(where + ".differential: expected an object");
            for (const auto& [name, words] : it->items()) {
                const auto w = where + ".differential." + name;
                for (const auto& word : detail::get_array(words, w)) differential[name].push_back(detail::string_list(word, w));
            }
        }
        return DGAlgebra::free(std::move(names), std::move(degrees), differential, *cap_of(true));
    }
    if (type == "table") {
        std::vector<std::pair<std::string, int>> basis;
        std::size_t i = 0;
        for (const auto& e : detail::get_array(detail::field(j, "basis", where), where + ".basis")) {
            const auto w = where + ".basis[" + std::to_string(i++) + "]";
            basis.emplace_back(detail::get_string(detail::field(e, "name", w), w + ".name"),
                               detail::get_int(detail::field(e, "degree", w), w + ".degree"));
        }
        std::map<std::pair<std::string, std::string>, std::vector<std::string>> products;
        if (auto it = j.find("products"); it != j.end()) {
            if (!it->is_object()) throw InputError(where + ".products: expected an object");
            for (const auto& [key, sum] : it->items())
                products[detail::split_key(key, where + ".products")] = detail::string_list(sum, where + ".products." + key);
        }
        std::map<std::string, std::vector<std::string>> differential;
        if (auto it = j.find("differential"); it != j.end()) {
            if (!it->is_object()) throw InputError(where + ".differential: expected an object");
            for (const auto& [name, sum] : it->items())
                differential[name] = detail::string_list(sum, where + ".differential." + name);
        }
        return DGAlgebra::table(basis, products, differential, *cap_of(true));
    }
    throw InputError(where + ".type: unknown ring type '" + type + "' (expected cobar, tensor, free or table)");
}

namespace detail {

// A free factor that is exactly cobar of a coalgebra: letters "s"+cell, words of length <= 2.
inline std::optional<DGCoalgebra> cobar_preimage(const FreeFactor& f) {
    std::vector<CoalgebraCell> basis{{"1", 0}};
    DGCoalgebra::CoproductSpec coproduct;
    DGCoalgebra::DifferentialSpec differential;
    auto cell = [&](Letter l) { return f.names[l].substr(1); };
    for (std::size_t i = 0; i < f.names.size(); ++i) {
        if (f.names[i].size() < 2 || f.names[i][0] != 's' || f.names[i].substr(1) == "1") return std::nullopt;
        basis.push_back({cell(static_cast<Letter>(i)), f.degrees[i] + 1});
    }
    for (std::size_t i = 0; i < f.names.size(); ++i)
        for (const auto& w : f.differential[i]) {
            if (w.size() == 1)
                differential[cell(static_cast<Letter>(i))].push_back(cell(w[0]));
            else if (w.size() == 2)
                coproduct[cell(static_cast<Letter>(i))].emplace_back(cell(w[0]), cell(w[1]));
            else
                return std::nullopt;
        }
    try {
        auto c = DGCoalgebra::create(basis, coproduct, differential);
        auto check = cobar(c, 0);
        if (!(check->factors().size() == 1 && std::get<FreeFactor>(check->factors()[0]) == f)) return std::nullopt;
        return c;
    } catch (const Error&) {
        return std::nullopt;
    }
}

inline json factor_to_json(const Factor& factor, int cap) {
    if (const auto* f = std::get_if<FreeFactor>(&factor)) {
        if (auto c = cobar_preimage(*f)) return {{"type", "cobar"}, {"coalgebra", to_json(*c)}, {"cap", cap}};
        json gens = json::array();
        json diff = json::object();
        for (std::size_t i = 0; i < f->names.size(); ++i) {
            gens.push_back({{"name", f->names[i]}, {"degree", f->degrees[i]}});
            if (f->differential[i].empty()) continue;
            json words = json::array();
            for (const auto& w : f->differential[i]) {
                json word = json::array();
                for (auto l : w) word.push_back(f->names[l]);
                words.push_back(word);
            }
            diff[f->names[i]] = words;
        }
        return {{"type", "free"}, {"generators", gens}, {"differential", diff}, {"cap", cap}};
    }
    const auto& t = std::get<TableFactor>(factor);
    json basis = json::array();
    json products = json::object();
    json diff = json::object();
    for (std::size_t i = 1; i < t.names.size(); ++i) basis.push_back({{"name", t.names[i]}, {"degree", t.degrees[i]}});
    for (std::size_t i = 1; i < t.names.size(); ++i)
        for (std::size_t k = 1; k < t.names.size(); ++k) {
            if (t.product[i][k].empty()) continue;
            json sum = json::array();
            for (auto l : t.product[i][k]) sum.push_back(t.names[l]);
            products[t.names[i] + "|" + t.names[k]] = sum;
        }
    for (std::size_t i = 1; i < t.names.size(); ++i) {
        if (t.differential[i].empty()) continue;
        json sum = json::array();
        for (auto l : t.differential[i]) sum.push_back(t.names[l]);
        diff[t.names[i]] = sum;
    }
    return {{"type", "table"}, {"basis", basis}, {"products", products}, {"differential", diff}, {"cap", cap}};
}

}  // namespace detail

inline json to_json(const DGAlgebra& ring) {
    const auto& factors = ring.factors();
    if (factors.size() == 1) return detail::factor_to_json(factors[0], ring.degree_cap());
    json list = json::array();
    for (const auto& f : factors) list.push_back(detail::factor_to_json(f, ring.degree_cap()));
    return {{"type", "tensor"}, {"factors", list}, {"cap", ring.degree_cap()}};
}

// ---------------------------------------------------------------------------
// Ring elements: a list of words, each a list of letter names.

inline AlgElement element_from_json(const Ring& ring, const json& j, int expected_degree, const std::string& where) {
    std::optional<AlgElement> out;
    std::size_t i = 0;
    for (const auto& word : detail::get_array(j, where)) {
        const auto w = where + "[" + std::to_string(i++) + "]";
        auto e = AlgElement::word(ring, detail::string_list(word, w));
        if (out && out->degree() != e.degree())
            throw InputError(w + ": word of degree " + std::to_string(e.degree()) + " in a sum of degree " +
                             std::to_string(out->degree()));
        if (out)
            *out += e;
        else
            out = e;
    }
    if (!out || out->is_zero()) return AlgElement(ring, expected_degree);
    return *out;
}

inline json to_json(const AlgElement& x) {
    json words = json::array();
    const auto& ring = *x.ring();
    for (const auto& t : x.terms()) {
        json word = json::array();
        for (std::size_t f = 0; f < t.size(); ++f)
            for (auto l : t[f]) word.push_back(ring.letter_name(f, l));
        words.push_back(word);
    }
    return words;
}

// ---------------------------------------------------------------------------
// Generator systems

inline GeneratorSystem system_from_json(const json& j, const std::string& where = "system") {
    auto ring = ring_from_json(detail::field(j, "ring", where), where + ".ring");
    std::vector<Generator> gens;
    std::size_t i = 0;
    for (const auto& g : detail::get_array(detail::field(j, "generators", where), where + ".generators")) {
        const auto w = where + ".generators[" + std::to_string(i++) + "]";
        Generator gen{detail::get_string(detail::field(g, "name", w), w + ".name"),
                      detail::get_int(detail::field(g, "mu", w), w + ".mu"), std::nullopt};
        if (auto it = g.find("action"); it != g.end() && !it->is_null()) {
            if (!it->is_number()) throw InputError(w + ".action: expected a number");
            gen.action = it->get<double>();
        }
        gens.push_back(std::move(gen));
    }
    GeneratorSystem sys(ring, std::move(gens));
    if (auto it = j.find("A"); it != j.end()) {
        if (!it->is_object()) throw InputError(where + ".A: expected an object");
        for (const auto& [key, words] : it->items()) {
            auto [x, y] = detail::split_key(key, where + ".A");
            const auto xi = sys.index_of(x), yi = sys.index_of(y);
            sys.set_entry(xi, yi, element_from_json(ring, words, sys.expected_degree(xi, yi), where + ".A." + key));
        }
    }
    return sys;
}

inline json to_json(const GeneratorSystem& sys) {
    json gens = json::array();
    for (const auto& g : sys.generators()) {
        json e = {{"name", g.name}, {"mu", g.mu}};
        if (g.action) e["action"] = *g.action;
        gens.push_back(e);
    }
    json a = json::object();
    for (const auto& [key, value] : sys.entries())
        a[sys.generator(key.first).name + "|" + sys.generator(key.second).name] = to_json(value);
    return {{"ring", to_json(*sys.ring())}, {"generators", gens}, {"A", a}};
}

// ---------------------------------------------------------------------------
// Comparison data: {"B": {"x|y'": words}, "shift": int?, "ring_morphism": {"images": {letter: words}}?}

inline ComparisonData comparison_from_json(const GeneratorSystem& source, const GeneratorSystem& target, const json& j,
                                           const std::string& where = "comparison") {
    std::optional<DGAMorphism> f;
    if (auto it = j.find("ring_morphism"); it != j.end()) {
        const auto w = where + ".ring_morphism";
        const auto& images = detail::field(*it, "images", w);
        if (!images.is_object()) throw InputError(w + ".images: expected an object");
        std::map<std::string, AlgElement> map;
        for (const auto& [letter, words] : images.items()) {
            auto ref = source.ring()->find_letter(letter);
            if (!ref) throw InputError(w + ".images: unknown source letter '" + letter + "'");
            map.emplace(letter, element_from_json(target.ring(), words, source.ring()->letter_degree(ref->factor, ref->letter),
                                                  w + ".images." + letter));
        }
        f = DGAMorphism::create(source.ring(), target.ring(), map);
    }
    int shift = 0;
    if (auto it = j.find("shift"); it != j.end()) shift = detail::get_int(*it, where + ".shift");
    ComparisonData cd(source, target, f, shift);
    const auto& b = detail::field(j, "B", where);
    if (!b.is_object()) throw InputError(where + ".B: expected an object");
    for (const auto& [key, words] : b.items()) {
        auto [x, y] = detail::split_key(key, where + ".B");
        const auto xi = source.index_of(x), yi = target.index_of(y);
        cd.set_entry(xi, yi, element_from_json(target.ring(), words, cd.expected_degree(xi, yi), where + ".B." + key));
    }
    return cd;
}

inline json to_json(const ComparisonData& cd) {
    json b = json::object();
    for (const auto& [key, value] : cd.entries())
        b[cd.source().generator(key.first).name + "|" + cd.target().generator(key.second).name] = to_json(value);
    json out = {{"B", b}, {"shift", cd.shift()}};
    if (cd.ring_map()) {
        json images = json::object();
        const auto& src = cd.ring_map()->source();
        for (const auto& ref : src->letters()) {
            const auto& name = src->letter_name(ref.factor, ref.letter);
            const auto& img = cd.ring_map()->image(name);
            if (!img.is_zero()) images[name] = to_json(img);
        }
        out["ring_morphism"] = {{"images", images}};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Page sets

inline json to_json(const PageSet& ps) {
    json pages = json::array();
    for (int r = 1; r <= ps.r_max(); ++r) {
        json cells = json::array();
        for (const auto& c : ps.cells(r))
            cells.push_back({{"p", c.p}, {"q", c.q}, {"dim", c.dim}, {"d_rank", c.d_rank}, {"certified", c.certified}});
        pages.push_back({{"r", r}, {"cells", cells}});
    }
    return {{"cap", ps.cap()}, {"r_max", ps.r_max()}, {"min_p", ps.min_p()}, {"max_p", ps.max_p()}, {"pages", pages}};
}

inline PageSet pageset_from_json(const json& j, const std::string& where = "pages") {
    const int cap = detail::get_int(detail::field(j, "cap", where), where + ".cap");
    const auto& pages = detail::get_array(detail::field(j, "pages", where), where + ".pages");
    int r_max = static_cast<int>(pages.size());
    if (auto it = j.find("r_max"); it != j.end()) r_max = detail::get_int(*it, where + ".r_max");
    std::vector<std::pair<int, PageCell>> cells;
    std::optional<int> min_p, max_p;
    std::size_t i = 0;
    for (const auto& page : pages) {
        const auto w = where + ".pages[" + std::to_string(i++) + "]";
        const int r = detail::get_int(detail::field(page, "r", w), w + ".r");
        if (r < 1 || r > r_max) throw InputError(w + ".r: page index outside [1, r_max]");
        std::size_t k = 0;
        for (const auto& c : detail::get_array(detail::field(page, "cells", w), w + ".cells")) {
            const auto cw = w + ".cells[" + std::to_string(k++) + "]";
            PageCell cell;
            cell.p = detail::get_int(detail::field(c, "p", cw), cw + ".p");
            cell.q = detail::get_int(detail::field(c, "q", cw), cw + ".q");
            const int dim = detail::get_int(detail::field(c, "dim", cw), cw + ".dim");
            const int rank = detail::get_int(detail::field(c, "d_rank", cw), cw + ".d_rank");
            if (dim < 0 || rank < 0 || rank > dim) throw InputError(cw + ": need 0 <= d_rank <= dim");
            cell.dim = static_cast<std::size_t>(dim);
            cell.d_rank = static_cast<std::size_t>(rank);
            const auto& cert = detail::field(c, "certified", cw);
            if (!cert.is_boolean()) throw InputError(cw + ".certified: expected a boolean");
            cell.certified = cert.get<bool>();
            if (cell.certified != (cell.p + cell.q + 1 <= cap))
                throw InputError(cw + ".certified: inconsistent with cap " + std::to_string(cap));
            min_p = min_p ? std::min(*min_p, cell.p) : cell.p;
            max_p = max_p ? std::max(*max_p, cell.p) : cell.p;
            cells.emplace_back(r, cell);
        }
    }
    int lo = min_p.value_or(0), hi = max_p.value_or(0);
    if (auto it = j.find("min_p"); it != j.end()) lo = detail::get_int(*it, where + ".min_p");
    if (auto it = j.find("max_p"); it != j.end()) hi = detail::get_int(*it, where + ".max_p");
    PageSet ps(r_max, cap, lo, hi);
    for (const auto& [r, c] : cells) ps.put(r, c);
    return ps;
}

}  // namespace loopfloer::io
