#pragma once

// Command-line dispatch: eight subcommands over the library, with JSON and
// table output and file ingestion for lattices, root lists, binary forms,
// nerves and 2-cochains. Status convention: 0 success, 1 domain error (a
// module precondition failed on parsed values), 2 usage error (unknown
// command, bad flags, unreadable or syntactically invalid input file).

#include "hkll/cohomology.hpp"
#include "hkll/fujiki.hpp"
#include "hkll/gerbe.hpp"
#include "hkll/json_io.hpp"
#include "hkll/lattice.hpp"
#include "hkll/mukai.hpp"
#include "hkll/reflections.hpp"
#include "hkll/weierstrass.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hkll {

struct CommandResult {
    int status = 0;      // 0 ok, 1 domain error, 2 usage error
    json payload;        // structured output; {"error": ...} on failure
    std::string human;   // rendered text (table or latex); error message on failure
    std::string format;  // "json" | "table" | "latex", decides what run_cli prints
};

namespace detail {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string cli_usage_text() {
    return "usage: hkll <command> [options]\n"
           "\n"
           "commands:\n"
           "  lattice      even-lattice invariants and primitive isotropic search\n"
           "  nefify       reflection walk making a divisor class root-nonnegative\n"
           "  mukai        Mukai vector pairing, primitivity, moduli dimension\n"
           "  fujiki       Fujiki-constant intersection arithmetic\n"
           "  cohomology   h^i(mD) table for an abelian fibration over P^n\n"
           "  weierstrass  singular-fibre analysis of a Weierstrass elliptic K3\n"
           "  gerbe        Cech 2-cochain cocycle / coboundary / torsion check\n"
           "  tables       reference tables: h^i(mD) sweeps and Fujiki constants\n"
           "\n"
           "every command takes --format json|table (cohomology also latex);\n"
           "HKLL_FORMAT sets the default. run 'hkll <command> --help' for flags.\n";
}

inline std::string default_format() {
    const char* env = std::getenv("HKLL_FORMAT");
    if (env) {
        const std::string s{env};
        if (s == "json" || s == "table" || s == "latex") return s;
    }
    return "table";
}

inline CommandResult ok_result(json payload, std::string human, std::string format) {
    CommandResult r;
    r.payload = std::move(payload);
    r.human = std::move(human);
    r.format = std::move(format);
    return r;
}

// Returns a help result when --help was requested, nothing on a clean parse,
// and converts flag-level failures into usage errors.
inline std::optional<CommandResult> finish_parse(CLI::App& app, std::vector<std::string> rest) {
    std::reverse(rest.begin(), rest.end()); // CLI11 consumes the vector back to front
    try {
        app.parse(std::move(rest));
        return std::nullopt;
    } catch (const CLI::CallForHelp&) {
        return ok_result(json{{"help", app.help()}}, app.help(), "table");
    } catch (const CLI::ParseError& e) {
        throw usage_error(std::string{e.what()} + "\n\n" + app.help());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw usage_error(path + ": " + e.what());
    }
}

inline Int parse_int_arg(const std::string& s, const std::string& flag) {
    try {
        Rat r = parse_rat(s);
        if (denominator(r) != 1) throw std::invalid_argument("not an integer");
        return numerator(r);
    } catch (const std::exception&) {
        throw usage_error(flag + ": '" + s + "' is not an integer");
    }
}

inline Rat parse_rat_arg(const std::string& s, const std::string& flag) {
    try {
        return parse_rat(s);
    } catch (const std::exception&) {
        throw usage_error(flag + ": '" + s + "' is not a rational (\"p\" or \"p/q\")");
    }
}

inline IntVec parse_intvec_arg(const std::string& s, const std::string& flag) {
    IntVec out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto from = part.find_first_not_of(" \t");
        const auto to = part.find_last_not_of(" \t");
        if (from == std::string::npos) throw usage_error(flag + ": empty component in '" + s + "'");
        out.push_back(parse_int_arg(part.substr(from, to - from + 1), flag));
    }
    if (out.empty()) throw usage_error(flag + ": empty vector");
    return out;
}

inline IntegralLattice lattice_from_spec(const std::string& spec) {
    if (spec == "H") return make_hyperbolic();
    if (spec == "E8") return make_e8(+1);
    if (spec == "-E8") return make_e8(-1);
    if (spec == "K3") return k3_lattice();
    return json_to_lattice(load_json_file(spec));
}

inline CoverNerve nerve_from_spec(const std::string& spec) {
    if (spec == "rp2") return projective_plane_nerve();
    if (spec.rfind("full:", 0) == 0) {
        const Int k = parse_int_arg(spec.substr(5), "--nerve full:<k>");
        if (k < 1 || k > 64) throw usage_error("--nerve full:<k> needs 1 <= k <= 64");
        return full_nerve(static_cast<int>(k));
    }
    return json_to_nerve(load_json_file(spec));
}

// Two aligned columns for the human rendering of key/value output.
class KvText {
public:
    void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }

    std::string str() const {
        std::size_t width = 0;
        for (const auto& [k, v] : rows_) width = std::max(width, k.size());
        std::ostringstream out;
        for (const auto& [k, v] : rows_)
            out << k << std::string(width - k.size() + 2, ' ') << v << "\n";
        return out.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

inline std::string vec_str(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

inline std::string intpairs_str(const std::vector<std::pair<Int, Int>>& pairs) {
    std::string s;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) s += " ";
        s += "(" + pairs[i].first.str() + "," + pairs[i].second.str() + ")";
    }
    return s;
}

inline void add_format_option(CLI::App* cmd, std::string& format, bool with_latex = false) {
    auto values = with_latex ? std::vector<std::string>{"json", "table", "latex"}
                             : std::vector<std::string>{"json", "table"};
    cmd->add_option("--format", format, with_latex ? "json | table | latex" : "json | table")
        ->check(CLI::IsMember(values));
}

// ---- lattice ----

inline CommandResult cmd_lattice(std::vector<std::string> rest) {
    CLI::App app{"even-lattice invariants and primitive isotropic search", "hkll lattice"};
    app.require_subcommand(1);

    std::string spec, bound_s = "2";
    std::string format = default_format();
    auto* info = app.add_subcommand("info", "rank, determinant, parity, signature");
    info->add_option("--lattice", spec, "H | E8 | -E8 | K3 | path to {\"rank\",\"gram\"} JSON")->required();
    add_format_option(info, format);

    auto* iso = app.add_subcommand("isotropic", "first primitive isotropic vector in a coordinate box");
    iso->add_option("--lattice", spec, "H | E8 | -E8 | K3 | path to {\"rank\",\"gram\"} JSON")->required();
    iso->add_option("--bound", bound_s, "coordinate box half-width (default 2)");
    add_format_option(iso, format);

    if (auto r = finish_parse(app, std::move(rest))) return *r;

    const IntegralLattice L = lattice_from_spec(spec);
    if (info->parsed()) {
        json payload = lattice_to_json(L);
        payload["det"] = int_to_json(L.det());
        payload["even"] = L.is_even();
        payload["signature"] = json::array({L.signature().first, L.signature().second});
        KvText t;
        t.add("rank", std::to_string(L.rank()));
        t.add("det", L.det().str());
        t.add("even", L.is_even() ? "yes" : "no");
        t.add("signature", "(" + std::to_string(L.signature().first) + "," +
                               std::to_string(L.signature().second) + ")");
        return ok_result(std::move(payload), t.str(), format);
    }

    const Int bound = parse_int_arg(bound_s, "--bound");
    const auto hit = find_isotropic(L, bound);
    json payload{{"bound", int_to_json(bound)}, {"found", hit.has_value()}};
    KvText t;
    t.add("bound", bound.str());
    if (hit) {
        payload["vector"] = intvec_to_json(*hit);
        t.add("isotropic", vec_str(*hit));
    } else {
        t.add("isotropic", "none with all coordinates in [-" + bound.str() + "," + bound.str() + "]");
    }
    return ok_result(std::move(payload), t.str(), format);
}

// ---- nefify ----

inline CommandResult cmd_nefify(std::vector<std::string> rest) {
    CLI::App app{"reflect a divisor class until it pairs nonnegatively with every supplied root",
                 "hkll nefify"};
    std::string spec, d_s, ample_s, roots_path, max_s;
    std::string format = default_format();
    app.add_option("--lattice", spec, "H | E8 | -E8 | K3 | path to {\"rank\",\"gram\"} JSON")->required();
    app.add_option("--d", d_s, "divisor class, comma-separated integers")->required();
    app.add_option("--roots", roots_path, "JSON file: array of square -2 vectors (or {\"roots\": [...]})");
    app.add_option("--ample", ample_s, "ample class, comma-separated integers")->required();
    app.add_option("--max-steps", max_s, "reflection budget (default: the initial ample pairing)");
    add_format_option(&app, format);
    if (auto r = finish_parse(app, std::move(rest))) return *r;

    auto lattice = std::make_shared<const IntegralLattice>(lattice_from_spec(spec));
    const IntVec d = parse_intvec_arg(d_s, "--d");
    const IntVec ample = parse_intvec_arg(ample_s, "--ample");
    std::vector<IntVec> roots;
    if (!roots_path.empty()) roots = json_to_root_list(load_json_file(roots_path));

    std::optional<std::uint64_t> max_steps;
    if (!max_s.empty()) {
        const Int m = parse_int_arg(max_s, "--max-steps");
        if (m < 0 || m > Int(std::numeric_limits<std::uint64_t>::max()))
            throw usage_error("--max-steps: out of range");
        max_steps = m.convert_to<std::uint64_t>();
    }

    const ReflectionProblem problem{lattice, d, roots, ample};
    const ReflectionTrace trace = nefify(problem, max_steps);

    const std::string note = "nonnegativity is relative to the supplied root list only (" +
                             std::to_string(roots.size()) +
                             (roots.size() == 1 ? " root)" : " roots)");
    json steps = json::array();
    for (const ReflectionStep& s : trace.steps)
        steps.push_back(json{{"root_index", s.root_index},
                             {"before", intvec_to_json(s.before)},
                             {"after", intvec_to_json(s.after)},
                             {"ample_pairing_before", int_to_json(s.ample_pairing_before)},
                             {"ample_pairing_after", int_to_json(s.ample_pairing_after)}});
    json payload{{"initial", intvec_to_json(trace.initial)},
                 {"result", intvec_to_json(trace.result)},
                 {"initial_ample_pairing", int_to_json(trace.initial_ample_pairing)},
                 {"final_ample_pairing", int_to_json(trace.final_ample_pairing)},
                 {"step_count", trace.steps.size()},
                 {"steps", std::move(steps)},
                 {"note", note}};

    KvText t;
    t.add("initial", vec_str(trace.initial));
    t.add("result", vec_str(trace.result));
    t.add("ample pairing", trace.initial_ample_pairing.str() + " -> " + trace.final_ample_pairing.str());
    t.add("steps", std::to_string(trace.steps.size()));
    std::ostringstream human;
    human << t.str();
    if (!trace.steps.empty()) {
        human << "\n  step  root  after                pairing\n";
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            const ReflectionStep& s = trace.steps[i];
            human << "  " << std::setw(4) << (i + 1) << "  " << std::setw(4) << s.root_index << "  "
                  << std::setw(19) << std::left << vec_str(s.after) << std::right << "  "
                  << s.ample_pairing_after.str() << "\n";
        }
    }
    human << "\n" << note << "\n";
    return ok_result(std::move(payload), human.str(), format);
}

// ---- mukai ----

inline IntVec parse_c1_arg(const std::string& s, std::size_t rank) {
    if (s == "zeros") return IntVec(rank, Int(0));
    return parse_intvec_arg(s, "--c1");
}

inline CommandResult cmd_mukai(std::vector<std::string> rest) {
    CLI::App app{"Mukai vectors on a K3: pairing, primitivity, moduli dimension", "hkll mukai"};
    app.require_subcommand(1);

    std::string v0_s, c1_s = "zeros", v4_s, rank_s, c2_s;
    std::string format = default_format();
    auto* dim = app.add_subcommand("dim", "invariants of the vector (v0, c1, v4)");
    dim->add_option("--v0", v0_s, "rank component")->required();
    dim->add_option("--c1", c1_s, "22 comma-separated integers, or 'zeros'");
    dim->add_option("--v4", v4_s, "degree-4 component")->required();
    add_format_option(dim, format);

    auto* chern = app.add_subcommand("from-chern", "vector of a locally free sheaf from (rank, c1, c2)");
    chern->add_option("--rank", rank_s, "sheaf rank")->required();
    chern->add_option("--c1", c1_s, "22 comma-separated integers, or 'zeros'");
    chern->add_option("--c2", c2_s, "second Chern number")->required();
    add_format_option(chern, format);

    if (auto r = finish_parse(app, std::move(rest))) return *r;

    const auto k3 = std::make_shared<const IntegralLattice>(k3_lattice());
    const IntVec c1 = parse_c1_arg(c1_s, static_cast<std::size_t>(k3->rank()));

    MukaiVector v = dim->parsed()
        ? MukaiVector{parse_int_arg(v0_s, "--v0"), LatticeVector{k3, c1}, parse_int_arg(v4_s, "--v4")}
        : mukai_vector_locally_free(parse_int_arg(rank_s, "--rank"), LatticeVector{k3, c1},
                                    parse_int_arg(c2_s, "--c2"));

    const bool primitive = is_primitive_mukai(v);
    const Int pairing = mukai_pairing(v, v);
    const Int dimension = moduli_dimension(v);

    json payload;
    KvText t;
    if (chern->parsed()) {
        payload["v0"] = int_to_json(v.v0);
        payload["c1"] = intvec_to_json(v.v2.coords());
        payload["v4"] = int_to_json(v.v4);
        t.add("v0", v.v0.str());
        t.add("c1", vec_str(v.v2.coords()));
        t.add("v4", v.v4.str());
    }
    payload["dimension"] = int_to_json(dimension);
    payload["primitive"] = primitive;
    payload["pairing"] = int_to_json(pairing);
    t.add("dimension", dimension.str());
    t.add("primitive", primitive ? "yes" : "no");
    t.add("pairing", pairing.str());
    return ok_result(std::move(payload), t.str(), format);
}

// ---- fujiki ----

inline CommandResult cmd_fujiki(std::vector<std::string> rest) {
    CLI::App app{"Fujiki-constant intersection arithmetic", "hkll fujiki"};
    app.require_subcommand(1);

    std::string family = "hilb", q_s, genus_s;
    int n = 0;
    std::string format = default_format();
    auto* top = app.add_subcommand("top", "top self-intersection c q(D)^n of a divisor");
    top->add_option("--family", family, "hilb | kummer")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>{"hilb", "kummer"}));
    top->add_option("--n", n, "half the complex dimension")->required();
    top->add_option("--q", q_s, "Beauville-Bogomolov square of the divisor")->required();
    add_format_option(top, format);

    auto* principal = app.add_subcommand("principal-check",
                                         "can a Kummer-type fibration carry a principal fibre polarization");
    principal->add_option("--n", n, "half the complex dimension")->required();
    principal->add_option("--q", q_s, "q(E,D), a positive integer")->required();
    add_format_option(principal, format);

    auto* pol = app.add_subcommand("pol-type", "fibre polarization type from a curve genus");
    pol->add_option("--genus", genus_s, "curve genus, at least 2")->required();
    add_format_option(pol, format);

    if (auto r = finish_parse(app, std::move(rest))) return *r;

    if (top->parsed()) {
        const Rat q = parse_rat_arg(q_s, "--q");
        const Rat c = family == "hilb" ? fujiki_constant_hilb(n) : fujiki_constant_kummer(n);
        const Rat value = fujiki_top_intersection(FujikiData{n, c}, q);
        json payload{{"family", family},
                     {"n", n},
                     {"q", rat_to_json(q)},
                     {"constant", rat_to_json(c)},
                     {"value", rat_to_json(value)}};
        KvText t;
        t.add("family", family);
        t.add("n", std::to_string(n));
        t.add("constant", format_rat(c));
        t.add("q(D)", format_rat(q));
        t.add("D^(2n)", format_rat(value));
        return ok_result(std::move(payload), t.str(), format);
    }

    if (principal->parsed()) {
        const Int q = parse_int_arg(q_s, "--q");
        const PrincipalPolarizationCheck r = principal_polarization_possible(n, q);
        json payload{{"n", n},
                     {"q", int_to_json(q)},
                     {"fibre_integral", int_to_json(r.fibre_integral)},
                     {"required", int_to_json(r.required)},
                     {"possible", r.possible}};
        KvText t;
        t.add("n", std::to_string(n));
        t.add("q(E,D)", q.str());
        t.add("fibre integral", r.fibre_integral.str() + "  ((n+1)! q^n)");
        t.add("principal needs", r.required.str() + "  (n!)");
        t.add("possible", r.possible ? "yes" : "no");
        return ok_result(std::move(payload), t.str(), format);
    }

    const Int genus = parse_int_arg(genus_s, "--genus");
    const PolarizationType p = polarization_type_from_genus(genus);
    json fibre = json::array();
    for (const Int& d : p.fibre_type) fibre.push_back(int_to_json(d));
    json pairs = json::array();
    for (const auto& [d1, d2] : p.pairs) pairs.push_back(json::array({int_to_json(d1), int_to_json(d2)}));
    json payload{{"genus", int_to_json(genus)},
                 {"d1", int_to_json(p.d1)},
                 {"d2", int_to_json(p.d2)},
                 {"fibre_type", std::move(fibre)},
                 {"pairs", std::move(pairs)}};
    KvText t;
    t.add("genus", genus.str());
    t.add("polarization type", "(" + p.d1.str() + "," + p.d2.str() + ")");
    t.add("fibre type", vec_str(p.fibre_type));
    t.add("divisor pairs", intpairs_str(p.pairs));
    return ok_result(std::move(payload), t.str(), format);
}

// ---- cohomology ----

inline CommandResult cmd_cohomology(std::vector<std::string> rest) {
    CLI::App app{"cohomology of multiples of the fibration class", "hkll cohomology"};
    app.require_subcommand(1);

    int n = 0, m = 0;
    std::string format = default_format();
    auto* table = app.add_subcommand("table", "h^i(mD) for the abelian fibration over P^n");
    table->add_option("--n", n, "base dimension, 1 to 8")->required();
    table->add_option("--m", m, "positive multiple of the fibration class")->required();
    add_format_option(table, format, /*with_latex=*/true);
    if (auto r = finish_parse(app, std::move(rest))) return *r;

    const CohomologyTable t = abelian_fibration_table(n, m);
    const Int chi = euler_characteristic(n, m);
    json h = json::array();
    for (const Int& hi : t.h) h.push_back(int_to_json(hi));
    json payload{{"n", n}, {"m", m}, {"h", std::move(h)}, {"chi", int_to_json(chi)}};

    std::ostringstream human;
    if (format == "latex") {
        human << "% h^i(mD), n = " << n << ", m = " << m << "\n";
        human << "\\begin{tabular}{rr}\n$i$ & $h^i(mD)$ \\\\\n\\hline\n";
        for (std::size_t i = 0; i < t.h.size(); ++i)
            human << i << " & " << t.h[i].str() << " \\\\\n";
        human << "\\hline\n$\\chi$ & " << chi.str() << " \\\\\n\\end{tabular}\n";
    } else {
        human << "h^i(mD), n = " << n << ", m = " << m << "\n\n";
        std::size_t width = 3;
        for (const Int& hi : t.h) width = std::max(width, hi.str().size());
        human << "  i  " << std::setw(static_cast<int>(width)) << "h^i" << "\n";
        for (std::size_t i = 0; i < t.h.size(); ++i)
            human << "  " << i << "  " << std::setw(static_cast<int>(width)) << t.h[i].str() << "\n";
        human << "\nchi = " << chi.str() << "\n";
    }
    return ok_result(std::move(payload), human.str(), format);
}

// ---- weierstrass ----

inline CommandResult cmd_weierstrass(std::vector<std::string> rest) {
    CLI::App app{"singular fibres of a Weierstrass elliptic K3 over P^1", "hkll weierstrass"};
    app.require_subcommand(1);

    std::string a_path, b_path;
    std::string format = default_format();
    auto* analyze = app.add_subcommand("analyze", "discriminant, minimality, fibre blocks");
    analyze->add_option("--a", a_path, "JSON coefficient array for a, degree 8 (9 entries max)")->required();
    analyze->add_option("--b", b_path, "JSON coefficient array for b, degree 12 (13 entries max)")->required();
    add_format_option(analyze, format);
    if (auto r = finish_parse(app, std::move(rest))) return *r;

    const BinaryForm a = json_to_binary_form(load_json_file(a_path), 8, "a");
    const BinaryForm b = json_to_binary_form(load_json_file(b_path), 12, "b");
    const WeierstrassModel w{a, b};
    const BinaryForm delta = discriminant(w); // throws if the fibration is singular everywhere
    const auto blocks = fibre_report(w);

    int total = 0;
    json fibres = json::array();
    for (const FibreBlock& blk : blocks) {
        total += blk.multiplicity * blk.root_count;
        json entry{{"at_infinity", blk.at_infinity}};
        if (!blk.at_infinity) entry["factor"] = blk.factor.str();
        entry["multiplicity"] = blk.multiplicity;
        entry["roots"] = blk.root_count;
        entry["type"] = fibre_type_name(blk.type);
        fibres.push_back(std::move(entry));
    }
    json payload{{"degree24", true},
                 {"minimal", w.minimal()},
                 {"fibres", std::move(fibres)},
                 {"total_multiplicity", total},
                 {"discriminant", binary_form_to_json(delta)}};

    std::ostringstream human;
    human << "discriminant  degree 24, nonzero\n";
    human << "minimal       " << (w.minimal() ? "yes" : "no") << "\n\n";
    std::size_t width = 8; // "infinity"
    for (const FibreBlock& blk : blocks)
        if (!blk.at_infinity) width = std::max(width, blk.factor.str().size());
    human << "  " << std::setw(static_cast<int>(width)) << std::left << "location"
          << "  mult  roots  type\n";
    for (const FibreBlock& blk : blocks)
        human << "  " << std::setw(static_cast<int>(width)) << std::left
              << (blk.at_infinity ? std::string{"infinity"} : blk.factor.str()) << std::right << "  "
              << std::setw(4) << blk.multiplicity << "  " << std::setw(5) << blk.root_count << "  "
              << fibre_type_name(blk.type) << "\n";
    human << "\ntotal multiplicity  " << total << "\n";
    return ok_result(std::move(payload), human.str(), format);
}

// ---- gerbe ----

inline CommandResult cmd_gerbe(std::vector<std::string> rest) {
    CLI::App app{"Cech 2-cochain analysis on a cover nerve", "hkll gerbe"};
    app.require_subcommand(1);

    std::string nerve_spec = "rp2", beta_path, mod_s = "2";
    std::string format = default_format();
    auto* check = app.add_subcommand("check", "cocycle, coboundary witness, torsion order");
    check->add_option("--nerve", nerve_spec, "rp2 | full:<k> | path to nerve JSON (default rp2)");
    check->add_option("--beta", beta_path, "JSON object {\"i,j,k\": value}; omitted entries are 0");
    check->add_option("--mod", mod_s, "coefficients Z/N for N >= 1, or 0 for the circle (default 2)");
    add_format_option(check, format);
    if (auto r = finish_parse(app, std::move(rest))) return *r;

    const CoverNerve nerve = nerve_from_spec(nerve_spec);
    const Int mod = parse_int_arg(mod_s, "--mod");
    if (mod < 0) throw usage_error("--mod: must be 0 (circle) or a positive modulus");
    const CoeffGroup group = mod == 0 ? CoeffGroup::circle() : CoeffGroup::mod(mod);

    std::map<Triple, Rat> beta;
    if (beta_path.empty())
        for (const Triple& t : nerve.triples) beta[t] = Rat(0);
    else
        beta = json_to_beta(load_json_file(beta_path), nerve);

    const CechGerbe g{nerve, group, std::move(beta)};
    const bool cocycle = is_cocycle(g);

    json payload{{"coefficients", mod == 0 ? std::string{"circle"} : "Z/" + mod.str()},
                 {"index_count", nerve.index_count},
                 {"pair_count", nerve.pairs.size()},
                 {"triple_count", nerve.triples.size()},
                 {"quad_count", nerve.quads.size()},
                 {"cocycle", cocycle}};
    KvText t;
    t.add("coefficients", mod == 0 ? "circle" : "Z/" + mod.str());
    t.add("nerve", std::to_string(nerve.index_count) + " indices, " + std::to_string(nerve.pairs.size()) +
                       " pairs, " + std::to_string(nerve.triples.size()) + " triples, " +
                       std::to_string(nerve.quads.size()) + " quads");
    t.add("cocycle", cocycle ? "yes" : "no");
    if (cocycle) {
        const CoboundaryWitness w = is_coboundary(g);
        const Int order = torsion_order(g);
        payload["coboundary"] = w.is_coboundary;
        payload["order"] = int_to_json(order);
        if (w.is_coboundary) payload["alpha"] = alpha_to_json(w.alpha);
        t.add("coboundary", w.is_coboundary ? "yes" : "no");
        t.add("order", order.str());
    } else {
        t.add("coboundary", "undefined (not a cocycle)");
    }
    return ok_result(std::move(payload), t.str(), format);
}

// ---- tables ----

// Product form of h^0(P^n, Omega^i(m)) as printed closed forms:
// (m+n-i)...(m+1) (m-1)...(m-i) / ((n-i)! i!), valid for every m >= 1.
inline std::string bott_closed_form(int n, int i) {
    if (i > n) return "0";
    std::vector<std::string> factors;
    for (int j = n - i; j >= 1; --j) factors.push_back("m+" + std::to_string(j));
    for (int j = 1; j <= i; ++j) factors.push_back("m-" + std::to_string(j));
    const Int denom = factorial(static_cast<unsigned>(n - i)) * factorial(static_cast<unsigned>(i));
    std::string s;
    if (factors.size() == 1 && denom == 1) {
        s = factors.front();
    } else {
        for (const std::string& f : factors) s += "(" + f + ")";
    }
    if (denom != 1) s += "/" + denom.str();
    return s;
}

inline constexpr int kTablesSweepMax = 20;
inline constexpr int kTablesFujikiMax = 8;

// One cohomology section: closed forms as printed, then a numeric sweep.
inline std::string hi_table_section(int n) {
    std::ostringstream out;
    out << "n = " << n << "\n";
    if (n == 1) {
        for (int i = 0; i <= 2; ++i)
            out << "  h^" << i << "(mD) = " << bott_closed_form(1, i) << "\n";
    } else {
        for (int i = 0; i <= n; ++i)
            out << "  h^" << i << "(mD) = " << bott_closed_form(n, i) << "\n";
        out << "  h^i(mD) = 0 otherwise\n";
    }
    out << "\n";
    const auto cell = [&out](const std::string& s) { out << std::setw(5) << s; };
    out << "    m |";
    for (int m = 1; m <= kTablesSweepMax; ++m) cell(std::to_string(m));
    out << "\n";
    for (int i = 0; i <= n; ++i) {
        out << "  h^" << i << " |";
        for (int m = 1; m <= kTablesSweepMax; ++m) cell(bott_h0_omega(n, i, m).str());
        out << "\n";
    }
    out << "  chi |";
    for (int m = 1; m <= kTablesSweepMax; ++m) cell(euler_characteristic(n, m).str());
    out << "\n";
    return out.str();
}

inline std::string fujiki_table_text() {
    std::ostringstream out;
    out << "Fujiki constants\n\n";
    out << "  c(S^[n]) = (2n)!/(2^n n!)        Hilbert scheme of n points on a K3\n";
    out << "  c(K_n)   = (n+1) (2n)!/(2^n n!)  generalized Kummer variety\n\n";
    out << "    n |     c(S^[n]) |       c(K_n)\n";
    for (int n = 1; n <= kTablesFujikiMax; ++n) {
        out << "  " << std::setw(3) << n << " |" << std::setw(13) << format_rat(fujiki_constant_hilb(n))
            << " |" << std::setw(13) << format_rat(fujiki_constant_kummer(n)) << "\n";
    }
    return out.str();
}

inline std::string tables_text() {
    std::ostringstream out;
    out << "h^i(mD) for abelian fibrations X -> P^n, D the pulled-back hyperplane class\n\n";
    for (int n = 1; n <= 3; ++n) out << hi_table_section(n) << "\n";
    out << fujiki_table_text();
    return out.str();
}

inline json tables_json() {
    json sections = json::array();
    for (int n = 1; n <= 3; ++n) {
        json forms = json::array();
        for (int i = 0; i <= 2 * n; ++i) forms.push_back(bott_closed_form(n, i));
        json rows = json::array();
        for (int m = 1; m <= kTablesSweepMax; ++m) {
            const CohomologyTable t = abelian_fibration_table(n, m);
            json h = json::array();
            for (const Int& hi : t.h) h.push_back(int_to_json(hi));
            rows.push_back(json{{"m", m}, {"h", std::move(h)}, {"chi", int_to_json(euler_characteristic(n, m))}});
        }
        sections.push_back(json{{"n", n}, {"closed_forms", std::move(forms)}, {"rows", std::move(rows)}});
    }
    json constants = json::array();
    for (int n = 1; n <= kTablesFujikiMax; ++n)
        constants.push_back(json{{"n", n},
                                 {"hilb", rat_to_json(fujiki_constant_hilb(n))},
                                 {"kummer", rat_to_json(fujiki_constant_kummer(n))}});
    return json{{"cohomology", std::move(sections)}, {"fujiki_constants", std::move(constants)}};
}

inline CommandResult cmd_tables(std::vector<std::string> rest) {
    CLI::App app{"reference tables: h^i(mD) sweeps for n = 1,2,3 and Fujiki constants", "hkll tables"};
    std::string format = default_format();
    add_format_option(&app, format);
    if (auto r = finish_parse(app, std::move(rest))) return *r;
    return ok_result(tables_json(), tables_text(), format);
}

}  // namespace detail

inline CommandResult dispatch(const std::vector<std::string>& args) {
    using namespace detail;
    std::string head = args.empty() ? std::string{} : args[0];
    try {
        if (head.empty()) throw usage_error(cli_usage_text());
        if (head == "--help" || head == "-h" || head == "help")
            return ok_result(json{{"help", cli_usage_text()}}, cli_usage_text(), "table");
        std::vector<std::string> rest(args.begin() + 1, args.end());
        if (head == "lattice") return cmd_lattice(std::move(rest));
        if (head == "nefify") return cmd_nefify(std::move(rest));
        if (head == "mukai") return cmd_mukai(std::move(rest));
        if (head == "fujiki") return cmd_fujiki(std::move(rest));
        if (head == "cohomology") return cmd_cohomology(std::move(rest));
        if (head == "weierstrass") return cmd_weierstrass(std::move(rest));
        if (head == "gerbe") return cmd_gerbe(std::move(rest));
        if (head == "tables") return cmd_tables(std::move(rest));
        throw usage_error("unknown command '" + head + "'\n\n" + cli_usage_text());
    } catch (const usage_error& e) {
        CommandResult r;
        r.status = 2;
        r.payload = json{{"error", e.what()}};
        r.human = e.what();
        return r;
    } catch (const std::exception& e) {
        CommandResult r;
        r.status = 1;
        r.payload = json{{"error", e.what()}};
        r.human = e.what();
        return r;
    }
}

inline int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    const CommandResult r = dispatch(args);
    if (r.status != 0) {
        std::cerr << r.human << std::endl;
        return r.status;
    }
    if (r.format == "json")
        std::cout << r.payload.dump(2) << std::endl;
    else
        std::cout << r.human << std::flush;
    return 0;
}

}  // namespace hkll
