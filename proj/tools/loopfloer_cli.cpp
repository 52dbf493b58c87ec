// loopfloer: command-line front end.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input error.
// Input paths may also name a built-in as "builtin:<name>".

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loopfloer/loopfloer.hpp"

namespace {

using namespace loopfloer;
using io::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct Options {
    int cap = 12;
    std::optional<int> rmax;
    int rmin = 2;
    bool json_out = false;
};

// "builtin:<name>" searches systems first unless `prefer` is "coalgebra";
// "builtin:system:<name>" and "builtin:coalgebra:<name>" are explicit.
json load(const std::string& path, std::string prefer = "system") {
    const std::string prefix = "builtin:";
    if (path.rfind(prefix, 0) != 0) return io::read_file(path);
    auto name = path.substr(prefix.size());
    for (const std::string kind : {"system", "coalgebra"})
        if (name.rfind(kind + ":", 0) == 0) {
            prefer = kind;
            name = name.substr(kind.size() + 1);
        }
    auto find_system = [&]() -> std::optional<json> {
        for (const auto& s : examples::builtin_systems())
            if (s.name == name) return io::to_json(s.system);
        return std::nullopt;
    };
    auto find_coalgebra = [&]() -> std::optional<json> {
        for (const auto& c : examples::builtin_coalgebras())
            if (c.name == name) return io::to_json(c.coalgebra);
        return std::nullopt;
    };
    auto first = prefer == "coalgebra" ? find_coalgebra() : find_system();
    if (first) return *first;
    auto second = prefer == "coalgebra" ? find_system() : find_coalgebra();
    if (second) return *second;
    throw InputError("unknown built-in '" + name + "'");
}

GeneratorSystem load_system(const std::string& path) {
    auto j = load(path);
    if (!j.contains("generators")) throw InputError(path + ": not a generator system (no 'generators' field)");
    return io::system_from_json(j, path);
}

DGCoalgebra load_coalgebra(const std::string& path) {
    auto j = load(path, "coalgebra");
    if (!j.contains("basis")) throw InputError(path + ": not a coalgebra (no 'basis' field)");
    return io::coalgebra_from_json(j, path);
}

void emit(const Options& opt, const json& j, const std::string& text) {
    if (opt.json_out)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_check(const std::string& path, const Options& opt) {
    auto sys = load_system(path);
    json report = {{"input", path}, {"generators", sys.size()}, {"entries", sys.entries().size()}};
    std::string text;
    auto fail = [&](const std::string& stage, const std::string& detail) {
        report["passed"] = false;
        report["failed_check"] = stage;
        report["detail"] = detail;
        emit(opt, report, "FAIL " + stage + ": " + detail + "\n");
        return kFail;
    };

    auto structure = check_structure(sys);
    report["structure"] = structure.ok;
    if (!structure.ok) return fail("structure", structure.issues.front());
    text += "structure        ok (" + std::to_string(sys.entries().size()) + " entries, degrees μ(x)-μ(y)-1)\n";

    auto mc = validate_mc(sys);
    report["maurer_cartan"] = mc.ok;
    if (!mc.ok) {
        json failures = json::array();
        std::string lines;
        for (const auto& f : mc.failures) {
            failures.push_back({{"pair", f.source + "|" + f.target},
                                {"boundary", f.boundary_side.to_string()},
                                {"product", f.product_side.to_string()},
                                {"residual", f.residual().to_string()}});
            lines += "  " + f.source + "|" + f.target + ": ∂a = " + f.boundary_side.to_string() +
                     ", Σ a·a = " + f.product_side.to_string() + ", residual " + f.residual().to_string() + "\n";
        }
        report["mc_failures"] = failures;
        report["passed"] = false;
        report["failed_check"] = "maurer_cartan";
        emit(opt, report, text + "FAIL maurer_cartan: ∂A ≠ A²\n" + lines);
        return kFail;
    }
    text += "maurer_cartan    ok (∂A = A²)\n";

    auto fc = assemble(sys, opt.cap);
    const auto bad = fc.first_nonzero_square();
    report["d_squared_zero"] = !bad.has_value();
    if (bad) return fail("d_squared", "∂∘∂ ≠ 0 in total degree " + std::to_string(*bad));
    text += "d^2 = 0          ok (total degrees " + std::to_string(fc.min_degree()) + ".." + std::to_string(fc.cap()) + ")\n";

    const bool filt = fc.filtration_compatible();
    report["filtration_compatible"] = filt;
    if (!filt) return fail("filtration", "boundary raises the μ filtration");
    text += "filtration       ok (d preserves F_p)\n";

    auto order = check_action_order(sys);
    report["action_order"] = order.ok;
    if (!order.ok) return fail("action_order", order.issues.front());
    text += "action order     ok\n";

    report["passed"] = true;
    emit(opt, report, text + "PASS\n");
    return kPass;
}

json pages_report(const PageSet& ps) {
    json j = io::to_json(ps);
    json arrows = json::array();
    for (int r = 1; r <= ps.r_max(); ++r)
        for (const auto& c : ps.cells(r))
            if (c.certified && c.d_rank > 0)
                arrows.push_back({{"r", r}, {"from", {c.p, c.q}}, {"to", {c.p - r, c.q + r - 1}}, {"rank", c.d_rank}});
    j["differentials"] = arrows;
    return j;
}

int cmd_pages(const std::string& path, const Options& opt) {
    auto sys = load_system(path);
    auto fc = assemble(sys, opt.cap);
    auto ps = compute_pages(fc, opt.rmax.value_or(default_r_max(fc)));
    emit(opt, pages_report(ps), format_pages(ps));
    return kPass;
}

int cmd_serre(const std::string& path, const Options& opt) {
    auto c = load_coalgebra(path);
    auto model = build_path_model(c, opt.cap);
    auto ps = compute_pages(model.complex, opt.rmax.value_or(default_r_max(model.complex)));
    emit(opt, pages_report(ps), format_pages(ps));
    return kPass;
}

// Pages of a system, a coalgebra (Serre model) or a stored page set.
PageSet pages_of(const std::string& path, const Options& opt, std::optional<int> rmax) {
    auto j = load(path);
    if (j.contains("pages")) return io::pageset_from_json(j, path);
    if (j.contains("generators")) {
        auto fc = assemble(io::system_from_json(j, path), opt.cap);
        return compute_pages(fc, rmax.value_or(default_r_max(fc)));
    }
    if (j.contains("basis")) {
        auto model = build_path_model(io::coalgebra_from_json(j, path), opt.cap);
        return compute_pages(model.complex, rmax.value_or(default_r_max(model.complex)));
    }
    throw InputError(path + ": expected a generator system, a coalgebra or a page set");
}

int cmd_compare(const std::string& a, const std::string& b, const Options& opt) {
    auto pa = pages_of(a, opt, opt.rmax);
    auto pb = pages_of(b, opt, opt.rmax);
    auto k = compare_up_to_translation(pa, pb, opt.rmin);
    json report = {{"a", a}, {"b", b}, {"r_min", opt.rmin}, {"match", k.has_value()}};
    if (k) report["shift"] = *k;
    emit(opt, report, k ? "shift " + std::to_string(*k) + "\n" : std::string("no match\n"));
    return k ? kPass : kFail;
}

int cmd_morphism(const std::string& src_path, const std::string& dst_path, const std::string& b_path,
                 const std::optional<std::string>& retract_path, const Options& opt) {
    auto src = load_system(src_path);
    auto dst = load_system(dst_path);
    auto cd = io::comparison_from_json(src, dst, io::read_file(b_path), b_path);
    json report = {{"shift", cd.shift()}};
    std::string text;
    bool ok = true;

    auto vb = validate_b(cd);
    report["identity_holds"] = vb.ok;
    if (vb.ok) {
        text += "∂B = f(A)·B + B·A′   ok\n";
    } else {
        ok = false;
        json failures = json::array();
        text += "∂B = f(A)·B + B·A′   FAIL\n";
        for (const auto& f : vb.failures) {
            failures.push_back({{"pair", f.source + "|" + f.target}, {"residual", f.residual().to_string()}});
            text += "  " + f.source + "|" + f.target + ": residual " + f.residual().to_string() + "\n";
        }
        report["b_failures"] = failures;
    }

    auto cm = chain_map_check(cd, opt.cap);
    report["chain_map"] = cm.ok;
    report["filtration_preserved"] = cm.filtration_preserved;
    if (cm.failing_degree) report["failing_degree"] = *cm.failing_degree;
    text += std::string("V∘d = d′∘V           ") +
            (cm.ok ? "ok" : "FAIL in total degree " + std::to_string(*cm.failing_degree)) + "\n";
    text += std::string("filtration           ") + (cm.filtration_preserved ? "ok" : "FAIL") + "\n";
    ok = ok && cm.ok && cm.filtration_preserved;

    if (cm.ok) {
        const int r_max = opt.rmax.value_or(std::max(src.max_mu() - src.min_mu(), dst.max_mu() - dst.min_mu()) + 1);
        auto pm = comparison_page_morphism(cd, opt.cap, 1, r_max);
        report["page_maps_commute"] = pm.commutes();
        report["page_cells"] = pm.cells.size();
        text += std::string("E^r(V) commutes      ") + (pm.commutes() ? "ok" : "FAIL") + " (" +
                std::to_string(pm.cells.size()) + " certified cells)\n";
        ok = ok && pm.commutes();
        if (retract_path) {
            auto g = io::comparison_from_json(dst, src, io::read_file(*retract_path), *retract_path);
            const bool retract = is_retract_pair(cd, g);
            report["retract"] = retract;
            text += std::string("g∘f unitriangular    ") + (retract ? "yes" : "no") + "\n";
            if (retract) {
                report["page_maps_injective"] = pm.injective();
                text += std::string("E^r(V) injective     ") + (pm.injective() ? "yes" : "no") + "\n";
                ok = ok && pm.injective();
            }
            ok = ok && retract;
        }
    }
    report["passed"] = ok;
    emit(opt, report, text + (ok ? "PASS\n" : "FAIL\n"));
    return ok ? kPass : kFail;
}

int cmd_consequences(const std::string& path, const Options& opt) {
    auto sys = load_system(path);
    const int r_max = opt.rmax.value_or(sys.max_mu() - sys.min_mu() + 1);
    auto rep = consequences(sys, opt.cap, r_max);
    json claims = json::array();
    std::string text;
    for (const auto& c : rep.claims) {
        json w = json::array();
        std::string names;
        for (const auto& [x, y] : c.witnesses) {
            w.push_back({x, y});
            names += (names.empty() ? "" : ", ") + x + "→" + y;
        }
        claims.push_back({{"r", c.r}, {"total_rank", c.total_rank}, {"witnesses", w}});
        text += "d^" + std::to_string(c.r) + " ≠ 0 (total rank " + std::to_string(c.total_rank) +
                "): moduli spaces of relative index " + std::to_string(c.r) + " are nonempty; witnesses " +
                (names.empty() ? "none" : names) + "\n";
    }
    if (rep.claims.empty()) text += "no nonzero differentials in the certified window\n";
    text += "rank bound           Σ_p dim E²_{p,0} − 1 = " + std::to_string(rep.rank_bound) + "\n";
    text += "coefficient classes  " + std::string(rep.coverage.covered ? "generate" : "do not generate") +
            " H(ring) in degrees 0.." + std::to_string(rep.coverage.window) + "\n";
    json report = {{"claims", claims},
                   {"claims_witnessed", rep.claims_witnessed},
                   {"rank_bound", rep.rank_bound},
                   {"coverage",
                    {{"covered", rep.coverage.covered},
                     {"window", rep.coverage.window},
                     {"homology", rep.coverage.homology},
                     {"generated", rep.coverage.generated},
                     {"generators", rep.coverage.generators}}}};
    emit(opt, report, text);
    return rep.claims_witnessed ? kPass : kFail;
}

int cmd_cobar(const std::string& path, const Options& opt) {
    auto c = load_coalgebra(path);
    auto ring = cobar(c, opt.cap + 1);
    auto dims = homology_dims(*ring, opt.cap);
    json list = json::array();
    for (const auto& d : dims) list.push_back({{"degree", d.degree}, {"dim", d.dim}});
    json report = {{"generators", json::array()}, {"homology", list}};
    std::string text = "cobar generators:";
    for (const auto& ref : ring->letters()) {
        const auto& name = ring->letter_name(ref.factor, ref.letter);
        auto d = boundary(AlgElement::letter(ring, name));
        report["generators"].push_back({{"name", name},
                                        {"degree", ring->letter_degree(ref.factor, ref.letter)},
                                        {"boundary", d.to_string()}});
        text += " " + name + " (deg " + std::to_string(ring->letter_degree(ref.factor, ref.letter)) +
                (d.is_zero() ? "" : ", ∂ = " + d.to_string()) + ")";
    }
    text += "\n" + format_homology(dims);
    emit(opt, report, text);
    return kPass;
}

int cmd_export(const std::string& name, const std::optional<std::string>& out) {
    if (name == "list") {
        for (const auto& s : examples::builtin_systems()) std::cout << "system     " << s.name << "\n";
        for (const auto& c : examples::builtin_coalgebras()) std::cout << "coalgebra  " << c.name << "\n";
        for (const auto& b : examples::broken_variants()) std::cout << "broken     " << b.name << "\n";
        return kPass;
    }
    json j;
    bool found = false;
    for (const auto& b : examples::broken_variants())
        if (b.name == name) {
            j = io::to_json(b.system);
            found = true;
        }
    if (!found) j = load("builtin:" + name);
    if (out)
        io::write_file(*out, j);
    else
        std::cout << j.dump(2) << "\n";
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GF(2) extended Morse/Floer complexes over loop-space chains and their spectral sequences"};
    app.require_subcommand(1);
    Options opt;
    auto add_common = [&](CLI::App* sub, bool pages) {
        sub->add_option("--cap", opt.cap, "maximal total degree")->default_val(12)->check(CLI::NonNegativeNumber);
        if (pages) sub->add_option("--rmax", opt.rmax, "last page (default: filtration width + 1)")->check(CLI::PositiveNumber);
        sub->add_flag("--json", opt.json_out, "print the JSON report instead of text");
    };

    std::string path_a, path_b, path_c;
    std::optional<std::string> retract, out;

    auto* check = app.add_subcommand("check", "validate a generator system (structure, ∂A = A², d² = 0, action order)");
    check->add_option("system", path_a, "system JSON")->required();
    add_common(check, false);

    auto* pages = app.add_subcommand("pages", "spectral sequence of the μ filtration");
    pages->add_option("system", path_a, "system JSON")->required();
    add_common(pages, true);

    auto* serre = app.add_subcommand("serre", "Serre spectral sequence of the path fibration of a coalgebra model");
    serre->add_option("coalgebra", path_a, "coalgebra JSON")->required();
    add_common(serre, true);

    auto* compare = app.add_subcommand("compare", "compare two page sets up to translation");
    compare->add_option("a", path_a, "system, coalgebra or page set JSON")->required();
    compare->add_option("b", path_b, "system, coalgebra or page set JSON")->required();
    compare->add_option("--rmin", opt.rmin, "first compared page")->default_val(2)->check(CLI::PositiveNumber);
    add_common(compare, true);

    auto* morphism = app.add_subcommand("morphism", "check a comparison matrix B and its induced maps");
    morphism->add_option("source", path_a, "source system JSON")->required();
    morphism->add_option("target", path_b, "target system JSON")->required();
    morphism->add_option("B", path_c, "comparison JSON")->required();
    morphism->add_option("--retract", retract, "comparison JSON from target back to source");
    add_common(morphism, true);

    auto* cons = app.add_subcommand("consequences", "moduli claims, rank bound and coefficient coverage");
    cons->add_option("system", path_a, "system JSON")->required();
    add_common(cons, true);

    auto* cob = app.add_subcommand("cobar", "homology of the cobar construction");
    cob->add_option("coalgebra", path_a, "coalgebra JSON")->required();
    add_common(cob, false);

    auto* exp = app.add_subcommand("export", "write a built-in example as JSON ('list' lists them)");
    exp->add_option("name", path_a, "built-in name")->required();
    exp->add_option("-o,--output", out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (*check) return cmd_check(path_a, opt);
        if (*pages) return cmd_pages(path_a, opt);
        if (*serre) return cmd_serre(path_a, opt);
        if (*compare) return cmd_compare(path_a, path_b, opt);
        if (*morphism) return cmd_morphism(path_a, path_b, path_c, retract, opt);
        if (*cons) return cmd_consequences(path_a, opt);
        if (*cob) return cmd_cobar(path_a, opt);
        if (*exp) return cmd_export(path_a, out);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const CapOverflow& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kFail;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
