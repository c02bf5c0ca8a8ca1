#pragma once

// Command implementations behind the relequiv executable. Everything here
// writes to caller-supplied streams and returns an exit status, so the
// commands can be exercised directly from tests.

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "relequiv/generators.hpp"
#include "relequiv/spec_io.hpp"

namespace relequiv {

enum class Format { text, latex, csv, json };

enum ExitCode : int {
    exit_ok = 0,
    exit_parse = 2,
    exit_group = 3,
    exit_validation = 4,
    exit_inconsistent = 5,
};

struct CliOptions {
    std::optional<int> j;
    std::optional<int> dmax;
    Format format = Format::text;
    unsigned threads = 1;
    std::optional<int> k_degree_bound;
    std::optional<int> check_degree;
    std::optional<std::size_t> max_order;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"molien", "invariants", "equivariants", "basis", "general-form", "check"};
    return c;
}

namespace cli_detail {

using ojson = nlohmann::ordered_json;

struct Context {
    const GroupSpec& spec;
    const CliOptions& opt;
    GradedGroup group;
    int dmax;

    PipelineOptions pipeline_options() const {
        PipelineOptions p;
        p.k_degree_bound = opt.k_degree_bound.value_or(spec.options.k_degree_bound.value_or(0));
        p.check_degree = opt.check_degree.value_or(spec.options.check_degree.value_or(0));
        p.names = spec.variables;
        return p;
    }
};

inline std::vector<int> selected_js(const Context& c) {
    if (c.opt.j) return {*c.opt.j};
    std::vector<int> all;
    for (int j = 0; j < c.group.modulus(); ++j) all.push_back(j);
    return all;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

inline ojson group_json(const Context& c) {
    ojson g;
    g["name"] = c.spec.name;
    g["order"] = c.group.order();
    g["kernel_order"] = c.group.kernel().size();
    g["m"] = c.group.modulus();
    g["source_dim"] = c.group.source_dim();
    g["target_dim"] = c.group.target_dim();
    return g;
}

inline void write_header(std::ostream& out, const Context& c) {
    out << "# " << (c.spec.name.empty() ? std::string("group") : c.spec.name) << ": |Gamma| = " << c.group.order()
        << ", |K| = " << c.group.kernel().size() << ", m = " << c.group.modulus() << "\n";
}

// ---- molien -------------------------------------------------------------

inline int cmd_molien(std::ostream& out, const Context& c) {
    const auto js = selected_js(c);
    std::vector<IntSeries> phi, psi;
    for (int j : js) {
        phi.push_back(molien_series(c.group, j, SeriesKind::invariant, c.dmax, c.opt.threads));
        psi.push_back(molien_series(c.group, j, SeriesKind::equivariant, c.dmax, c.opt.threads));
    }
    switch (c.opt.format) {
        case Format::text:
            write_header(out, c);
            for (std::size_t i = 0; i < js.size(); ++i) out << "Phi_" << js[i] << "(t) = " << phi[i].to_string() << "\n";
            for (std::size_t i = 0; i < js.size(); ++i) out << "Psi_" << js[i] << "(t) = " << psi[i].to_string() << "\n";
            break;
        case Format::latex:
            for (std::size_t i = 0; i < js.size(); ++i)
                out << "\\Phi_{" << js[i] << "}(t) = " << phi[i].to_latex() << "\n";
            for (std::size_t i = 0; i < js.size(); ++i)
                out << "\\Psi_{" << js[i] << "}(t) = " << psi[i].to_latex() << "\n";
            break;
        case Format::csv: {
            bool first = true;
            auto block = [&](const char* label, int j, const IntSeries& s) {
                if (!first) out << "\n";
                first = false;
                out << "# " << label << "_" << j << "\n" << "degree,dim\n";
                for (int d = 0; d <= s.dmax(); ++d) out << d << "," << s[static_cast<std::size_t>(d)] << "\n";
            };
            for (std::size_t i = 0; i < js.size(); ++i) block("Phi", js[i], phi[i]);
            for (std::size_t i = 0; i < js.size(); ++i) block("Psi", js[i], psi[i]);
            break;
        }
        case Format::json: {
            ojson doc;
            doc["group"] = group_json(c);
            doc["dmax"] = c.dmax;
            doc["j"] = js;
            ojson p = ojson::array(), q = ojson::array();
            for (std::size_t i = 0; i < js.size(); ++i) {
                p.push_back(phi[i].coeffs);
                q.push_back(psi[i].coeffs);
            }
            doc["phi"] = p;
            doc["psi"] = q;
            out << doc.dump(2) << "\n";
            break;
        }
    }
    return exit_ok;
}

// ---- generator listings -------------------------------------------------

template <class T>
struct Listing {
    std::string title;
    std::string prefix;  // symbol for item numbering, e.g. "u", "v", "H"
    const GeneratorSet<T>* set;
};

template <class T>
void write_listing_text(std::ostream& out, const Listing<T>& l, const GroupSpec& spec, bool latex) {
    out << "# " << l.title << ": " << l.set->size() << " generator" << (l.set->size() == 1 ? "" : "s") << "\n";
    for (std::size_t i = 0; i < l.set->items.size(); ++i) {
        const auto& item = l.set->items[i];
        if (latex)
            out << item.value.to_latex(spec.latex_variables) << "\n";
        else
            out << item.value.to_string(spec.variables) << "    # " << l.prefix << i << ", degree " << item.degree
                << ", " << item.provenance << "\n";
    }
}

template <class T>
ojson listing_json(const Listing<T>& l, const GroupSpec& spec) {
    ojson s;
    s["title"] = l.title;
    s["kind"] = to_string(l.set->kind);
    s["j"] = l.set->j;
    ojson items = ojson::array();
    for (const auto& item : l.set->items) {
        ojson x;
        x["value"] = item.value.to_string(spec.variables);
        x["latex"] = item.value.to_latex(spec.latex_variables);
        x["degree"] = item.degree;
        x["provenance"] = item.provenance;
        items.push_back(std::move(x));
    }
    s["items"] = std::move(items);
    return s;
}

template <class T>
void write_listing_csv_rows(std::ostream& out, const Listing<T>& l, const GroupSpec& spec) {
    for (std::size_t i = 0; i < l.set->items.size(); ++i) {
        const auto& item = l.set->items[i];
        out << csv_quote(l.title) << "," << l.set->j << "," << i << "," << item.degree << ","
            << csv_quote(item.value.to_string(spec.variables)) << "," << csv_quote(item.provenance) << "\n";
    }
}

// Writes a sequence of listings in the requested format. Listings of
// polynomials and of maps are passed separately.
inline void write_listings(std::ostream& out, const Context& c, const std::vector<Listing<Poly>>& polys,
                           const std::vector<Listing<PolyMap>>& maps) {
    const auto& spec = c.spec;
    switch (c.opt.format) {
        case Format::text:
        case Format::latex: {
            const bool latex = c.opt.format == Format::latex;
            if (!latex) write_header(out, c);
            bool first = true;
            auto sep = [&] {
                if (!first) out << "\n";
                first = false;
            };
            for (const auto& l : polys) {
                sep();
                write_listing_text(out, l, spec, latex);
            }
            for (const auto& l : maps) {
                sep();
                write_listing_text(out, l, spec, latex);
            }
            break;
        }
        case Format::csv:
            out << "set,j,index,degree,generator,provenance\n";
            for (const auto& l : polys) write_listing_csv_rows(out, l, spec);
            for (const auto& l : maps) write_listing_csv_rows(out, l, spec);
            break;
        case Format::json: {
            ojson doc;
            doc["group"] = group_json(c);
            ojson sets = ojson::array();
            for (const auto& l : polys) sets.push_back(listing_json(l, spec));
            for (const auto& l : maps) sets.push_back(listing_json(l, spec));
            doc["sets"] = std::move(sets);
            out << doc.dump(2) << "\n";
            break;
        }
    }
}

inline std::string invariant_title(int j) {
    return j == 0 ? "generators of the invariant ring P(Gamma)"
                  : "sigma^" + std::to_string(j) + "-relative invariants over P(Gamma)";
}
inline std::string equivariant_title(int j) {
    return j == 0 ? "equivariants over P(Gamma)"
                  : "sigma^" + std::to_string(j) + "-relative equivariants over P(Gamma)";
}

inline int cmd_invariants(std::ostream& out, const Context& c) {
    const Pipeline p = run_pipeline(c.group, c.pipeline_options());
    std::vector<Listing<Poly>> ls;
    for (int j : selected_js(c)) ls.push_back({invariant_title(j), j == 0 ? "r" : "b", &p.invariants[std::size_t(j)]});
    write_listings(out, c, ls, {});
    return exit_ok;
}

inline int cmd_equivariants(std::ostream& out, const Context& c) {
    const Pipeline p = run_pipeline(c.group, c.pipeline_options());
    std::vector<Listing<PolyMap>> ls;
    for (int j : selected_js(c)) ls.push_back({equivariant_title(j), "g", &p.equivariants[std::size_t(j)]});
    write_listings(out, c, {}, ls);
    return exit_ok;
}

inline int cmd_basis(std::ostream& out, const Context& c) {
    const Pipeline p = run_pipeline(c.group, c.pipeline_options());
    write_listings(out, c,
                   {{"Hilbert basis of P(K)", "u", &p.k_invariants},
                    {"module basis B of P(K) over P(Gamma)", "v", &p.basis_B}},
                   {{"generators of the K-equivariants over P(K)", "H", &p.k_equivariants}});
    return exit_ok;
}

inline int cmd_general_form(std::ostream& out, const Context& c) {
    const Pipeline p = run_pipeline(c.group, c.pipeline_options());
    std::vector<GeneralForm> forms;
    int next = 1;
    for (int j = 0; j < c.group.modulus(); ++j) {
        forms.push_back(general_form(p.equivariants[std::size_t(j)], c.group.target_dim(), next, c.spec.variables,
                                     c.spec.latex_variables, "g_" + std::to_string(j)));
        next += forms.back().count;
    }
    const auto js = selected_js(c);
    switch (c.opt.format) {
        case Format::text:
            write_header(out, c);
            for (int j : js) out << forms[std::size_t(j)].text << "\n";
            out << "# f_i ranges over P(Gamma)\n";
            break;
        case Format::latex:
            for (int j : js) {
                std::string l = forms[std::size_t(j)].latex;
                // g_0(z) -> g_{0}(z)
                const std::string tag = "g_" + std::to_string(j);
                l.replace(0, tag.size(), "g_{" + std::to_string(j) + "}");
                out << l << "\n";
            }
            break;
        case Format::csv:
            out << "j,first_index,count,text\n";
            for (int j : js) {
                const auto& f = forms[std::size_t(j)];
                out << j << "," << f.first_index << "," << f.count << "," << csv_quote(f.text) << "\n";
            }
            break;
        case Format::json: {
            ojson doc;
            doc["group"] = group_json(c);
            ojson arr = ojson::array();
            for (int j : js) {
                const auto& f = forms[std::size_t(j)];
                ojson x;
                x["j"] = j;
                x["first_index"] = f.first_index;
                x["count"] = f.count;
                x["text"] = f.text;
                x["latex"] = f.latex;
                arr.push_back(std::move(x));
            }
            doc["forms"] = std::move(arr);
            out << doc.dump(2) << "\n";
            break;
        }
    }
    return exit_ok;
}

// ---- check --------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

class CheckLog {
   public:
    void add(std::string name, bool pass, std::string detail = {}) {
        results_.push_back({std::move(name), pass, std::move(detail)});
    }
    // Runs f, recording an exception as a failure.
    template <class F>
    void run(const std::string& name, F&& f) {
        try {
            std::string detail;
            const bool ok = f(detail);
            add(name, ok, detail);
        } catch (const std::exception& e) {
            add(name, false, e.what());
        }
    }
    const std::vector<CheckResult>& results() const noexcept { return results_; }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& r : results_) n += r.pass ? 0 : 1;
        return n;
    }

   private:
    std::vector<CheckResult> results_;
};

// Random polynomial with small integer coefficients, terms of degree <= dmax.
inline Poly random_poly(std::mt19937_64& rng, std::size_t nvars, int dmax, int terms) {
    std::uniform_int_distribution<int> deg(0, dmax), coeff(-3, 3);
    Poly p(nvars);
    for (int t = 0; t < terms; ++t) {
        const auto monos = monomials_of_degree(nvars, deg(rng));
        std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
        p.add_term(monos[pick(rng)], Cyclotomic(coeff(rng)));
    }
    return p;
}

inline PolyMap random_map(std::mt19937_64& rng, std::size_t comps, std::size_t nvars, int dmax, int terms) {
    std::vector<Poly> cs;
    for (std::size_t i = 0; i < comps; ++i) cs.push_back(random_poly(rng, nvars, dmax, terms));
    return PolyMap(std::move(cs));
}

template <class T>
bool projector_laws(const GradedGroup& g, const T& f, std::string& detail) {
    const int m = g.modulus();
    std::vector<T> r;
    T total = f * Cyclotomic(0);
    for (int j = 0; j < m; ++j) {
        if constexpr (std::is_same_v<T, Poly>)
            r.push_back(relative_project(g, j, f));
        else
            r.push_back(relative_project_map(g, j, f));
        total += r.back();
    }
    if (!(total == f)) return detail = "sum of projections differs from input", false;
    for (int j = 0; j < m; ++j) {
        if (!is_relative(g, j, r[std::size_t(j)])) return detail = "image not relative for j=" + std::to_string(j), false;
        for (int i = 0; i < m; ++i) {
            T twice;
            if constexpr (std::is_same_v<T, Poly>)
                twice = relative_project(g, i, r[std::size_t(j)]);
            else
                twice = relative_project_map(g, i, r[std::size_t(j)]);
            const bool ok = i == j ? twice == r[std::size_t(j)] : twice.is_zero();
            if (!ok)
                return detail = "R_" + std::to_string(i) + " R_" + std::to_string(j) + " law fails", false;
        }
    }
    return true;
}

inline std::string series_pair(const IntSeries& a, const IntSeries& b) { return a.to_string() + " vs " + b.to_string(); }

inline int cmd_check(std::ostream& out, const Context& c) {
    const GradedGroup& g = c.group;
    const int m = g.modulus();
    const int dmax = c.dmax;
    CheckLog log;

    log.run("grading is a homomorphism", [&](std::string& d) {
        for (std::size_t a = 0; a < g.order(); ++a)
            for (std::size_t b = 0; b < g.order(); ++b)
                if (g.element(g.multiply(a, b)).sigma != (g.element(a).sigma + g.element(b).sigma) % m)
                    return d = "sigma(ab) != sigma(a) + sigma(b)", false;
        return true;
    });
    log.run("inverses and cosets", [&](std::string& d) {
        for (std::size_t a = 0; a < g.order(); ++a)
            if (g.multiply(a, g.inverse(a)) != g.identity()) return d = "inverse lookup", false;
        std::vector<std::size_t> sizes(static_cast<std::size_t>(m), 0);
        for (const auto& e : g.elements()) ++sizes[static_cast<std::size_t>(e.sigma)];
        for (auto s : sizes)
            if (s != g.kernel().size()) return d = "cosets of unequal size", false;
        const auto reps = coset_representatives(g);
        if (g.element(g.multiply(reps.back(), g.delta())).sigma != 0) return d = "delta^m not in K", false;
        return true;
    });

    // Three-way agreement and sum rules.
    std::vector<IntSeries> phi, psi;
    for (int j = 0; j < m; ++j) {
        phi.push_back(molien_series(g, j, SeriesKind::invariant, dmax, c.opt.threads));
        psi.push_back(molien_series(g, j, SeriesKind::equivariant, dmax, c.opt.threads));
    }
    for (int j = 0; j < m; ++j)
        for (SeriesKind kind : {SeriesKind::invariant, SeriesKind::equivariant}) {
            const IntSeries& ms = kind == SeriesKind::invariant ? phi[std::size_t(j)] : psi[std::size_t(j)];
            const std::string tag = std::string(kind == SeriesKind::invariant ? "Phi_" : "Psi_") + std::to_string(j);
            log.run(tag + " Molien = characters", [&](std::string& d) {
                const IntSeries ch = dims_by_characters(g, j, kind, dmax);
                if (!(ch == ms)) return d = series_pair(ms, ch), false;
                return true;
            });
            log.run(tag + " Molien = nullity oracle", [&](std::string& d) {
                for (int deg = 0; deg <= dmax; ++deg) {
                    const auto o = dim_oracle(g, j, kind, deg);
                    if (o != ms[std::size_t(deg)])
                        return d = "degree " + std::to_string(deg) + ": oracle " + std::to_string(o) + ", Molien " +
                                   std::to_string(ms[std::size_t(deg)]),
                               false;
                }
                return true;
            });
        }
    for (SeriesKind kind : {SeriesKind::invariant, SeriesKind::equivariant})
        log.run(std::string("sum rule over j (") + to_string(kind) + ")", [&](std::string& d) {
            const IntSeries k = kernel_molien_series(g, kind, dmax, c.opt.threads);
            IntSeries s;
            s.coeffs.assign(k.coeffs.size(), 0);
            for (int j = 0; j < m; ++j)
                for (std::size_t i = 0; i < s.coeffs.size(); ++i)
                    s.coeffs[i] += (kind == SeriesKind::invariant ? phi : psi)[std::size_t(j)][i];
            if (!(s == k)) return d = series_pair(s, k), false;
            return true;
        });

    if (!c.spec.expected_phi.empty() || !c.spec.expected_psi.empty())
        log.run("expected series from the spec file", [&](std::string& d) {
            for (int j = 0; j < m; ++j) {
                if (!c.spec.expected_phi.empty() && !agree_up_to_common_dmax(c.spec.expected_phi[std::size_t(j)], phi[std::size_t(j)]))
                    return d = "Phi_" + std::to_string(j) + ": " + series_pair(phi[std::size_t(j)], c.spec.expected_phi[std::size_t(j)]), false;
                if (!c.spec.expected_psi.empty() && !agree_up_to_common_dmax(c.spec.expected_psi[std::size_t(j)], psi[std::size_t(j)]))
                    return d = "Psi_" + std::to_string(j) + ": " + series_pair(psi[std::size_t(j)], c.spec.expected_psi[std::size_t(j)]), false;
            }
            return true;
        });

    // Projector laws on seeded random K-invariant and K-equivariant inputs.
    constexpr int samples = 12;
    log.run("scalar projector laws (" + std::to_string(samples) + " seeded samples)", [&](std::string& d) {
        std::mt19937_64 rng(0x5eed0001);
        for (int s = 0; s < samples; ++s) {
            const Poly f = average_over_K(g, random_poly(rng, g.source_dim(), 4, 6));
            if (!projector_laws(g, f, d)) return false;
        }
        return true;
    });
    log.run("vector projector laws (" + std::to_string(samples) + " seeded samples)", [&](std::string& d) {
        std::mt19937_64 rng(0x5eed0002);
        for (int s = 0; s < samples; ++s) {
            const PolyMap f = average_over_K(g, random_map(rng, g.target_dim(), g.source_dim(), 3, 4));
            if (!projector_laws(g, f, d)) return false;
        }
        return true;
    });

    // Generator pipeline: every stage certifies itself against Molien series.
    std::optional<Pipeline> pipe;
    log.run("generator pipeline certified against Molien series", [&](std::string& d) {
        pipe = run_pipeline(g, c.pipeline_options());
        d = std::to_string(pipe->k_invariants.size()) + " K-invariants, " + std::to_string(pipe->basis_B.size()) +
            " in B";
        return true;
    });
    if (pipe) {
        log.run("Davenport bound: patterns of length m add nothing", [&](std::string& d) {
            for (const auto& r : pipe->davenport)
                if (r.new_generators != 0)
                    return d = "j=" + std::to_string(r.j) + ": " + std::to_string(r.new_generators) + " new", false;
            return true;
        });
        log.run("independence of the choice of delta", [&](std::string& d) {
            for (const auto& e : g.elements()) {
                if (e.sigma != 1 % m || e.index == g.delta()) continue;
                const Pipeline other = run_pipeline(g.with_delta(e.index), c.pipeline_options());
                for (int j = 0; j < m; ++j)
                    if (other.invariants[std::size_t(j)].size() != pipe->invariants[std::size_t(j)].size() ||
                        other.equivariants[std::size_t(j)].size() != pipe->equivariants[std::size_t(j)].size())
                        return d = "generator counts differ for delta = element " + std::to_string(e.index), false;
                d = "delta = element " + std::to_string(e.index);
                return true;
            }
            d = "no alternative delta";
            return true;
        });
    }

    switch (c.opt.format) {
        case Format::json: {
            ojson doc;
            doc["group"] = group_json(c);
            ojson arr = ojson::array();
            for (const auto& r : log.results()) {
                ojson x;
                x["name"] = r.name;
                x["pass"] = r.pass;
                x["detail"] = r.detail;
                arr.push_back(std::move(x));
            }
            doc["checks"] = std::move(arr);
            doc["failed"] = log.failures();
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::csv:
            out << "check,result,detail\n";
            for (const auto& r : log.results())
                out << csv_quote(r.name) << "," << (r.pass ? "PASS" : "FAIL") << "," << csv_quote(r.detail) << "\n";
            break;
        default:
            write_header(out, c);
            for (const auto& r : log.results())
                out << (r.pass ? "PASS " : "FAIL ") << r.name << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
            out << "check: " << log.results().size() - log.failures() << " passed, " << log.failures()
                << " failed\n";
    }
    return log.failures() == 0 ? exit_ok : exit_inconsistent;
}

}  // namespace cli_detail

/// Runs one command on a parsed spec. Errors are reported on `err` and
/// mapped to exit codes: 2 input, 3 group construction, 4 validation,
/// 5 internal inconsistency.
inline int run(const std::string& command, const GroupSpec& spec, const CliOptions& opt, std::ostream& out,
               std::ostream& err) {
    try {
        if (opt.dmax && *opt.dmax < 0) throw ParseError("--dmax must be nonnegative");
        if (opt.threads < 1) throw ParseError("--threads must be positive");
        cli_detail::Context c{spec, opt, build_group(spec, opt.max_order), opt.dmax.value_or(spec.options.dmax.value_or(6))};
        if (opt.j && (*opt.j < 0 || *opt.j >= c.group.modulus()))
            throw ParseError("--j must lie in 0.." + std::to_string(c.group.modulus() - 1));
        if (command == "molien") return cli_detail::cmd_molien(out, c);
        if (command == "invariants") return cli_detail::cmd_invariants(out, c);
        if (command == "equivariants") return cli_detail::cmd_equivariants(out, c);
        if (command == "basis") return cli_detail::cmd_basis(out, c);
        if (command == "general-form") return cli_detail::cmd_general_form(out, c);
        if (command == "check") return cli_detail::cmd_check(out, c);
        throw ParseError("unknown command '" + command + "'");
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_parse;
    } catch (const GroupError& e) {
        err << "error: group construction: " << e.what() << "\n";
        return exit_group;
    } catch (const ValidationError& e) {
        err << "error: validation: " << e.what() << "\n";
        return exit_validation;
    } catch (const Error& e) {
        err << "error: internal inconsistency: " << e.what() << "\n";
        return exit_inconsistent;
    }
}

/// As run(), reading the spec from a file first.
inline int run_file(const std::string& command, const std::string& path, const CliOptions& opt, std::ostream& out,
                    std::ostream& err) {
    try {
        const GroupSpec spec = load_spec(path);
        return run(command, spec, opt, out, err);
    } catch (const ParseError& e) {
        err << "error: " << path << ": " << e.what() << "\n";
        return exit_parse;
    }
}

}  // namespace relequiv
