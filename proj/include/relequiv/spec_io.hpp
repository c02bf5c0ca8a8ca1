#pragma once

// Group-specification files: a JSON document whose matrix entries are
// cyclotomic literals. Syntax errors, duplicate keys, unknown keys and
// violated constraints are reported with line and column.
//
//   {
//     "m": 3,
//     "variables": ["z1", "z1b", "z2", "z2b"],
//     "rho_generators": [[["E(3)", "0", "0", "0"], ...], ...],
//     "eta_generators": [...],            optional, defaults to rho
//     "sigma_values": [0, 1],
//     "options": {"dmax": 6, "k_degree_bound": 3, "check_degree": 8, "max_order": 10000},
//     "expected": {"phi": [[...], ...], "psi": [[...], ...]}
//   }

#include <cctype>
#include <cstddef>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "relequiv/group.hpp"
#include "relequiv/molien.hpp"

namespace relequiv {

struct SpecOptions {
    std::optional<int> dmax;
    std::optional<int> k_degree_bound;
    std::optional<int> check_degree;
    std::optional<std::size_t> max_order;
};

struct GroupSpec {
    std::string name;
    int m = 1;
    std::vector<std::string> variables;
    std::vector<std::string> latex_variables;  // defaults to variables
    std::vector<Matrix> rho_generators;
    std::vector<Matrix> eta_generators;  // empty: eta = rho
    std::vector<int> sigma_values;
    SpecOptions options;
    std::vector<IntSeries> expected_phi;  // one per j when present
    std::vector<IntSeries> expected_psi;

    std::vector<GeneratorInput> generator_inputs() const {
        std::vector<GeneratorInput> out;
        for (std::size_t i = 0; i < rho_generators.size(); ++i)
            out.push_back({rho_generators[i], eta_generators.empty() ? Matrix() : eta_generators[i], sigma_values[i]});
        return out;
    }
};

inline constexpr std::size_t kDefaultMaxOrder = 10000;

namespace detail {

struct Location {
    std::size_t line = 0;
    std::size_t column = 0;
};

inline Location locate(std::string_view text, std::size_t offset) {
    Location loc{1, 1};
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++loc.line;
            loc.column = 1;
        } else {
            ++loc.column;
        }
    }
    return loc;
}

// Forward iterator over the input that counts how many characters the JSON
// lexer has consumed, so SAX events can be mapped back to positions.
class CountingIterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    CountingIterator() = default;
    CountingIterator(const char* p, std::size_t* counter) : p_(p), counter_(counter) {}

    reference operator*() const { return *p_; }
    CountingIterator& operator++() {
        ++p_;
        if (counter_) ++*counter_;
        return *this;
    }
    CountingIterator operator++(int) {
        CountingIterator t = *this;
        ++*this;
        return t;
    }
    friend bool operator==(const CountingIterator& a, const CountingIterator& b) { return a.p_ == b.p_; }

   private:
    const char* p_ = nullptr;
    std::size_t* counter_ = nullptr;
};

// Builds the document, records where each value starts, rejects duplicate keys.
class SpecSax {
   public:
    using json = nlohmann::json;

    SpecSax(std::string_view text, const std::size_t* consumed) : text_(text), consumed_(consumed) {}

    json root;
    std::map<std::string, Location> positions;

    bool null() { return value(nullptr, 4); }
    bool boolean(bool b) { return value(b, b ? 4 : 5); }
    // Numbers end one character early: the lexer has read its lookahead.
    bool number_integer(json::number_integer_t v) { return value(v, std::to_string(v).size() + 1); }
    bool number_unsigned(json::number_unsigned_t v) { return value(v, std::to_string(v).size() + 1); }
    bool number_float(json::number_float_t v, const std::string& raw) { return value(v, raw.size() + 1); }
    bool string(std::string& s) { return value(s, s.size() + 2); }
    bool binary(json::binary_t&) { return false; }

    bool start_object(std::size_t) { return open(json::object()); }
    bool start_array(std::size_t) { return open(json::array()); }
    bool end_object() { return close(); }
    bool end_array() { return close(); }

    bool key(std::string& k) {
        Frame& f = frames_.back();
        const std::size_t start = *consumed_ >= k.size() + 2 ? *consumed_ - k.size() - 2 : 0;
        if (!f.keys.insert(k).second) {
            const Location loc = locate(text_, start);
            throw ParseError("duplicate key '" + k + "'" + (f.path.empty() ? "" : " in " + f.path), loc.line,
                             loc.column);
        }
        f.pending_key = k;
        return true;
    }

    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        std::string msg = ex.what();
        if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        const Location loc = locate(text_, position > 0 ? position - 1 : 0);
        throw ParseError("invalid JSON: " + msg, loc.line, loc.column);
    }

   private:
    struct Frame {
        json* node = nullptr;
        std::string path;
        std::set<std::string> keys;
        std::string pending_key;
        std::size_t next_index = 0;
    };

    std::string_view text_;
    const std::size_t* consumed_;
    std::vector<Frame> frames_;

    // Inserts v into the open container; returns the stored node and its path.
    std::pair<json*, std::string> insert(json v, std::size_t token_length) {
        const std::size_t end = *consumed_;
        const std::size_t start = end >= token_length ? end - token_length : 0;
        if (frames_.empty()) {
            root = std::move(v);
            positions[""] = locate(text_, start);
            return {&root, ""};
        }
        Frame& f = frames_.back();
        json* slot;
        std::string path;
        if (f.node->is_array()) {
            path = f.path + "[" + std::to_string(f.next_index++) + "]";
            f.node->push_back(std::move(v));
            slot = &f.node->back();
        } else {
            path = f.path.empty() ? f.pending_key : f.path + "." + f.pending_key;
            slot = &((*f.node)[f.pending_key] = std::move(v));
        }
        positions[path] = locate(text_, start);
        return {slot, path};
    }

    bool value(json v, std::size_t token_length) {
        insert(std::move(v), token_length);
        return true;
    }
    bool open(json container) {
        auto [slot, path] = insert(std::move(container), 1);
        frames_.push_back(Frame{slot, path, {}, {}, 0});
        return true;
    }
    bool close() {
        frames_.pop_back();
        return true;
    }
};

class SpecReader {
   public:
    using json = nlohmann::json;

    SpecReader(const std::map<std::string, Location>& positions) : positions_(positions) {}

    [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
        const Location loc = where(path);
        throw ParseError((path.empty() ? "" : path + ": ") + msg, loc.line, loc.column);
    }

    Location where(const std::string& path) const {
        auto it = positions_.find(path);
        return it == positions_.end() ? Location{} : it->second;
    }

    static std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
    static std::string child(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    const json& array(const json& v, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected an array");
        return v;
    }

    long integer(const json& v, const std::string& path, long lo, long hi) const {
        if (!v.is_number_integer()) fail(path, "expected an integer");
        const long x = v.get<long>();
        if (x < lo || x > hi)
            fail(path, "value " + std::to_string(x) + " out of range " + std::to_string(lo) + ".." + std::to_string(hi));
        return x;
    }

    void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) const {
        if (!obj.is_object()) fail(path, "expected an object");
        for (const auto& [k, v] : obj.items()) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || k == a;
            if (!ok) fail(child(path, k), "unknown key '" + k + "'");
        }
    }

    Cyclotomic entry(const json& v, const std::string& path) const {
        if (v.is_number_integer()) return Cyclotomic(v.get<long>());
        if (!v.is_string()) fail(path, "matrix entry must be a cyclotomic literal string or an integer");
        const std::string s = v.get<std::string>();
        try {
            return Cyclotomic::parse(s);
        } catch (const ParseError& e) {
            // The literal starts one character after the opening quote.
            Location loc = where(path);
            if (loc.line > 0) loc.column += e.column();
            throw ParseError(path + ": " + e.message(), loc.line, loc.column);
        } catch (const InvalidInput& e) {
            fail(path, std::string("cyclotomic literal '") + s + "': " + e.what());
        }
    }

    Matrix matrix(const json& v, const std::string& path, std::size_t size, const char* what) const {
        array(v, path);
        if (v.size() != size)
            fail(path, std::string(what) + " matrix must have " + std::to_string(size) + " rows, found " +
                           std::to_string(v.size()));
        Matrix out(size, size);
        for (std::size_t r = 0; r < size; ++r) {
            const std::string rp = child(path, r);
            array(v[r], rp);
            if (v[r].size() != size)
                fail(rp, "ragged matrix: row has " + std::to_string(v[r].size()) + " entries, expected " +
                             std::to_string(size));
            for (std::size_t c = 0; c < size; ++c) out(r, c) = entry(v[r][c], child(rp, c));
        }
        return out;
    }

    std::vector<IntSeries> series_list(const json& v, const std::string& path, int m) const {
        array(v, path);
        if (static_cast<int>(v.size()) != m) fail(path, "expected one series per j = 0.." + std::to_string(m - 1));
        std::vector<IntSeries> out;
        for (std::size_t j = 0; j < v.size(); ++j) {
            const std::string sp = child(path, j);
            array(v[j], sp);
            if (v[j].empty()) fail(sp, "series must list at least the degree-0 coefficient");
            IntSeries s;
            for (std::size_t d = 0; d < v[j].size(); ++d)
                s.coeffs.push_back(integer(v[j][d], child(sp, d), 0, std::numeric_limits<long>::max()));
            out.push_back(std::move(s));
        }
        return out;
    }

   private:
    const std::map<std::string, Location>& positions_;
};

inline bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

}  // namespace detail

/// Parses and validates a group specification. Every failure is a ParseError
/// carrying the line and column of the offending value when known.
inline GroupSpec parse_spec(std::string_view text) {
    std::size_t consumed = 0;
    detail::SpecSax sax(text, &consumed);
    detail::CountingIterator first(text.data(), &consumed), last(text.data() + text.size(), nullptr);
    nlohmann::json::sax_parse(first, last, &sax);

    const auto& doc = sax.root;
    const detail::SpecReader rd(sax.positions);
    rd.only_keys(doc, "",
                 {"name", "description", "m", "variables", "latex_variables", "rho_generators", "eta_generators",
                  "sigma_values", "options", "expected"});

    GroupSpec spec;
    for (const char* required : {"m", "variables", "rho_generators", "sigma_values"})
        if (!doc.contains(required)) rd.fail("", std::string("missing required key '") + required + "'");

    if (doc.contains("name")) {
        if (!doc["name"].is_string()) rd.fail("name", "expected a string");
        spec.name = doc["name"].get<std::string>();
    }
    if (doc.contains("description") && !doc["description"].is_string()) rd.fail("description", "expected a string");

    spec.m = static_cast<int>(rd.integer(doc["m"], "m", 1, 1000000));

    const auto& vars = rd.array(doc["variables"], "variables");
    if (vars.empty()) rd.fail("variables", "at least one variable required");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const std::string p = detail::SpecReader::child("variables", i);
        if (!vars[i].is_string() || !detail::is_identifier(vars[i].get<std::string>()))
            rd.fail(p, "variable names must be identifiers");
        if (!seen.insert(vars[i].get<std::string>()).second) rd.fail(p, "duplicate variable name");
        spec.variables.push_back(vars[i].get<std::string>());
    }
    if (doc.contains("latex_variables")) {
        const auto& lv = rd.array(doc["latex_variables"], "latex_variables");
        if (lv.size() != vars.size()) rd.fail("latex_variables", "must have one entry per variable");
        for (std::size_t i = 0; i < lv.size(); ++i) {
            if (!lv[i].is_string()) rd.fail(detail::SpecReader::child("latex_variables", i), "expected a string");
            spec.latex_variables.push_back(lv[i].get<std::string>());
        }
    } else {
        spec.latex_variables = spec.variables;
    }

    const std::size_t n = spec.variables.size();
    const auto& rho = rd.array(doc["rho_generators"], "rho_generators");
    if (rho.empty()) rd.fail("rho_generators", "at least one generator required");
    for (std::size_t i = 0; i < rho.size(); ++i)
        spec.rho_generators.push_back(rd.matrix(rho[i], detail::SpecReader::child("rho_generators", i), n, "rho"));

    const auto& sig = rd.array(doc["sigma_values"], "sigma_values");
    if (sig.size() != rho.size()) rd.fail("sigma_values", "must have one value per generator");
    for (std::size_t i = 0; i < sig.size(); ++i)
        spec.sigma_values.push_back(
            static_cast<int>(rd.integer(sig[i], detail::SpecReader::child("sigma_values", i), 0, spec.m - 1)));

    if (doc.contains("eta_generators")) {
        const auto& eta = rd.array(doc["eta_generators"], "eta_generators");
        if (eta.size() != rho.size()) rd.fail("eta_generators", "must have one matrix per generator");
        const std::string p0 = detail::SpecReader::child("eta_generators", 0);
        const std::size_t w = rd.array(eta[0], p0).size();
        if (w == 0) rd.fail(p0, "eta matrices must be nonempty");
        for (std::size_t i = 0; i < eta.size(); ++i)
            spec.eta_generators.push_back(rd.matrix(eta[i], detail::SpecReader::child("eta_generators", i), w, "eta"));
    }

    if (doc.contains("options")) {
        const auto& o = doc["options"];
        rd.only_keys(o, "options", {"dmax", "k_degree_bound", "check_degree", "max_order"});
        if (o.contains("dmax")) spec.options.dmax = static_cast<int>(rd.integer(o["dmax"], "options.dmax", 0, 200));
        if (o.contains("k_degree_bound"))
            spec.options.k_degree_bound =
                static_cast<int>(rd.integer(o["k_degree_bound"], "options.k_degree_bound", 1, 200));
        if (o.contains("check_degree"))
            spec.options.check_degree = static_cast<int>(rd.integer(o["check_degree"], "options.check_degree", 1, 200));
        if (o.contains("max_order"))
            spec.options.max_order =
                static_cast<std::size_t>(rd.integer(o["max_order"], "options.max_order", 1, 100000000));
    }

    if (doc.contains("expected")) {
        const auto& e = doc["expected"];
        rd.only_keys(e, "expected", {"phi", "psi"});
        if (e.contains("phi")) spec.expected_phi = rd.series_list(e["phi"], "expected.phi", spec.m);
        if (e.contains("psi")) spec.expected_psi = rd.series_list(e["psi"], "expected.psi", spec.m);
    }
    return spec;
}

inline GroupSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

inline GradedGroup build_group(const GroupSpec& spec, std::optional<std::size_t> max_order = std::nullopt) {
    const auto inputs = spec.generator_inputs();
    return close_group(inputs, spec.m, max_order.value_or(spec.options.max_order.value_or(kDefaultMaxOrder)));
}

}  // namespace relequiv
