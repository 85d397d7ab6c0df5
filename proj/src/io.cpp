#include "morita/io.hpp"

#include <fstream>
#include <sstream>

#include "morita/catalog.hpp"
#include "morita/errors.hpp"
#include "morita/hash.hpp"

namespace morita::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { fail(ErrorKind::BadInput, where + ": " + what); }

std::string field(const std::string& where, const std::string& name) { return where + ": field '" + name + "'"; }

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
    return *it;
}

std::size_t as_index(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) bad(where, "expected a non-negative integer");
    return v.get<std::size_t>();
}

std::size_t as_index_below(const json& v, std::size_t bound, const std::string& where) {
    std::size_t k = as_index(v, where);
    if (k >= bound)
        fail(ErrorKind::OutOfRange, where + ": " + std::to_string(k) + " out of range [0, " + std::to_string(bound) + ")",
             {k, bound});
    return k;
}

// rows × cols integer matrix, each entry below `bound`, flattened row-major
std::vector<Elem> matrix(const json& j, const char* key, std::size_t rows, std::size_t cols, std::size_t bound,
                         const std::string& where) {
    const json& m = need(j, key, where);
    const std::string w = field(where, key);
    if (!m.is_array() || m.size() != rows)
        bad(w, "expected " + std::to_string(rows) + " rows of " + std::to_string(cols));
    std::vector<Elem> out;
    out.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string wr = w + " row " + std::to_string(r);
        if (!m[r].is_array() || m[r].size() != cols) bad(wr, "expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            out.push_back(as_index_below(m[r][c], bound, wr + " column " + std::to_string(c)));
    }
    return out;
}

std::vector<Elem> vector_field(const json& j, const char* key, std::size_t len, std::size_t bound,
                               const std::string& where) {
    const json& v = need(j, key, where);
    const std::string w = field(where, key);
    if (!v.is_array() || v.size() != len) bad(w, "expected " + std::to_string(len) + " entries");
    std::vector<Elem> out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(as_index_below(v[i], bound, w + " entry " + std::to_string(i)));
    return out;
}

std::vector<std::string> names_field(const json& j, std::size_t len, const std::string& where) {
    auto it = j.find("names");
    if (it == j.end()) return {};
    const std::string w = field(where, "names");
    if (!it->is_array() || it->size() != len) bad(w, "expected " + std::to_string(len) + " strings");
    std::vector<std::string> out;
    for (const auto& s : *it) {
        if (!s.is_string()) bad(w, "expected strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::BadInput, path.string() + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json bits_list(const std::vector<Bits>& v) {
    json a = json::array();
    for (const auto& b : v) a.push_back(b.to_string());
    return a;
}

std::string hex(std::uint64_t v) {
    std::ostringstream ss;
    ss << std::hex;
    ss.width(16);
    ss.fill('0');
    ss << v;
    return ss.str();
}

}  // namespace

json parse_json(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        auto cut = msg.find("syntax error");
        fail(ErrorKind::BadInput, where + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                                      (cut == std::string::npos ? msg : msg.substr(cut)));
    }
}

json read_json(const std::filesystem::path& path) { return parse_json(slurp(path), path.string()); }

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::BadInput, path.string() + ": cannot write");
    out << j.dump(2) << '\n';
}

RawTable table_from_json(const json& j, const std::string& where) {
    RawTable t;
    t.n = as_index(need(j, "n", where), field(where, "n"));
    if (t.n == 0) bad(field(where, "n"), "must be positive");
    t.mult = matrix(j, "mult", t.n, t.n, t.n, where);
    t.names = names_field(j, t.n, where);
    if (auto it = j.find("zero"); it != j.end() && !it->is_null())
        t.zero = as_index_below(*it, t.n, field(where, "zero"));
    if (auto it = j.find("identity"); it != j.end() && !it->is_null())
        t.identity = as_index_below(*it, t.n, field(where, "identity"));
    return t;
}

json table_to_json(const InverseSemigroup& s) {
    const std::size_t n = s.size();
    json j;
    j["n"] = n;
    json m = json::array();
    for (Elem a = 0; a < n; ++a) {
        json row = json::array();
        for (Elem b = 0; b < n; ++b) row.push_back(s.mul(a, b));
        m.push_back(std::move(row));
    }
    j["mult"] = std::move(m);
    json names = json::array();
    for (Elem a = 0; a < n; ++a) names.push_back(s.name(a));
    j["names"] = std::move(names);
    if (s.zero()) j["zero"] = *s.zero();
    if (s.identity()) j["identity"] = *s.identity();
    return j;
}

InverseSemigroup semigroup_from(const json& ref, const std::filesystem::path& base, const std::string& where) {
    if (ref.is_object()) return InverseSemigroup::validate(table_from_json(ref, where));
    if (!ref.is_string()) bad(where, "expected a catalog name, a path or an inline table");
    std::string s = ref.get<std::string>();
    if (s.rfind("catalog:", 0) == 0) return catalog_semigroup(s.substr(8));
    std::filesystem::path p(s);
    if (p.is_relative() && !base.empty()) p = base / p;
    return InverseSemigroup::validate(table_from_json(read_json(p), p.string()));
}

InverseSemigroup load_semigroup(const std::string& arg) { return semigroup_from(json(arg), {}, arg); }

ActionData action_from_json(const json& j, const std::filesystem::path& base, const std::string& where) {
    ActionData d;
    d.s = share(semigroup_from(need(j, "semigroup", where), base, field(where, "semigroup")));
    d.x_size = as_index(need(j, "x_size", where), field(where, "x_size"));
    const std::size_t ns = d.s->size();
    d.act = matrix(j, "act", ns, d.x_size, d.x_size, where);
    d.support = vector_field(j, "support", d.x_size, ns, where);
    d.names = names_field(j, d.x_size, where);
    return d;
}

ActionData load_action(const std::string& path) {
    std::filesystem::path p(path);
    return action_from_json(read_json(p), p.parent_path(), path);
}

BiactionTables bimodule_from_json(const json& j, const std::filesystem::path& base, const std::string& where) {
    BiactionTables t;
    t.s = share(semigroup_from(need(j, "s", where), base, field(where, "s")));
    t.t = share(semigroup_from(need(j, "t", where), base, field(where, "t")));
    t.x_size = as_index(need(j, "x_size", where), field(where, "x_size"));
    const std::size_t k = t.x_size, ns = t.s->size(), nt = t.t->size();
    t.lact = matrix(j, "lact", ns, k, k, where);
    t.ract = matrix(j, "ract", k, nt, k, where);
    t.inner_s = matrix(j, "inner_s", k, k, ns, where);
    t.inner_t = matrix(j, "inner_t", k, k, nt, where);
    return t;
}

BiactionTables load_bimodule(const std::string& path) {
    std::filesystem::path p(path);
    return bimodule_from_json(read_json(p), p.parent_path(), path);
}

json bimodule_to_json(const Biaction& b) {
    const std::size_t k = b.size(), ns = b.S().size(), nt = b.T().size();
    auto rows = [](const std::vector<Elem>& v, std::size_t r, std::size_t c) {
        json m = json::array();
        for (std::size_t i = 0; i < r; ++i) m.push_back(json(std::vector<Elem>(v.begin() + i * c, v.begin() + (i + 1) * c)));
        return m;
    };
    const auto& t = b.tables();
    json j;
    j["s"] = table_to_json(b.S());
    j["t"] = table_to_json(b.T());
    j["x_size"] = k;
    j["lact"] = rows(t.lact, ns, k);
    j["ract"] = rows(t.ract, k, nt);
    j["inner_s"] = rows(t.inner_s, k, k);
    j["inner_t"] = rows(t.inner_t, k, k);
    return j;
}

Presentation presentation_from_json(const json& j, const std::string& where) {
    const std::size_t n = as_index(need(j, "generators", where), field(where, "generators"));
    Presentation p(n);
    const json& rel = need(j, "relations", where);
    const std::string w = field(where, "relations");
    if (!rel.is_array()) bad(w, "expected an array of [lhs, rhs] pairs");
    for (std::size_t i = 0; i < rel.size(); ++i) {
        const std::string wi = w + " entry " + std::to_string(i);
        if (!rel[i].is_array() || rel[i].size() != 2) bad(wi, "expected [lhs, rhs]");
        std::vector<std::size_t> side[2];
        for (int s = 0; s < 2; ++s) {
            if (!rel[i][s].is_array()) bad(wi, "expected arrays of generator indices");
            for (const auto& g : rel[i][s]) side[s].push_back(as_index_below(g, n, wi));
        }
        p.add(side[0], side[1]);
    }
    return p;
}

Presentation load_presentation(const std::string& path) { return presentation_from_json(read_json(path), path); }

json carrier_to_json(const ClosureFamily& c) { return bits_list(c.members()); }

json enlargement_to_json(const Enlargement& en) {
    json j;
    j["u"] = table_to_json(en.u->S());
    json m = json::array();
    for (const auto& r : en.matrices) m.push_back({r.s, r.x, r.y, r.t});
    j["matrices"] = std::move(m);
    j["e_s"] = en.e_s;
    j["e_t"] = en.e_t;
    j["embed_s"] = en.embed_s;
    j["embed_t"] = en.embed_t;
    return j;
}

json simplifying_to_json(const SimplifyingReport& r) {
    json j;
    j["value"] = r.value;
    j["by_ideals"] = r.by_ideals;
    j["by_pencils"] = r.by_pencils;
    j["by_pairs"] = r.by_pairs;
    if (r.proper_ideal) j["proper_ideal"] = r.proper_ideal->to_string();
    return j;
}

json certificate_to_json(const Certificate& c, const InvarianceReport& inv, const std::string& s_name,
                         const std::string& t_name) {
    const auto& en = c.enlargement;
    auto side = [](const EnlargementReport& rep) {
        json e1 = json::array();
        for (std::size_t i = 0; i < rep.e1.size(); ++i)
            e1.push_back({{"element", rep.s.index[i]}, {"a", rep.e1[i].a}, {"t", rep.e1[i].s}, {"b", rep.e1[i].b}});
        json e2 = json::array();
        for (std::size_t u = 0; u < rep.e2.size(); ++u) {
            json parts = json::array();
            for (const auto& f : rep.e2[u]) parts.push_back({f.a, f.s, f.b});
            e2.push_back({{"element", u}, {"products", std::move(parts)}});
        }
        return std::pair{std::move(e1), std::move(e2)};
    };
    auto [s1, s2] = side(en.s_report);
    auto [t1, t2] = side(en.t_report);
    json j;
    j["s"] = {{"source", s_name}, {"size", c.s_size}, {"corner", en.e_s}};
    j["t"] = {{"source", t_name}, {"size", c.t_size}, {"corner", en.e_t}};
    j["x_size"] = c.x_size;
    j["bimodule_hash"] = hex(c.bimodule_hash);
    j["u_size"] = c.u_size;
    j["u_digest"] = hex([&] {
        Fnv1a h;
        h.add_all(en.u->S().table());
        return h.value();
    }());
    j["e1_witnesses"] = {{"s", std::move(s1)}, {"t", std::move(t1)}};
    j["e2_witnesses"] = {{"s", std::move(s2)}, {"t", std::move(t2)}};
    j["round_trip"] = c.round_trip;
    json iv;
    iv["zero_simplifying"] = {{"s", simplifying_to_json(inv.s_simplifying)},
                              {"t", simplifying_to_json(inv.t_simplifying)},
                              {"u", simplifying_to_json(inv.u_simplifying)}};
    iv["fundamental"] = {{"s", inv.s_fundamental}, {"t", inv.t_fundamental}, {"u", inv.u_fundamental}};
    iv["idempotents"] = {{"s", inv.s_idempotents}, {"t", inv.t_idempotents}};
    iv["d_classes"] = {{"s", inv.s_d_classes}, {"t", inv.t_d_classes}};
    auto dw = [](const std::vector<DWitness>& ws) {
        json a = json::array();
        for (const auto& w : ws) a.push_back({w.idempotent, w.u, w.target});
        return a;
    };
    iv["d_witnesses"] = {{"s", dw(inv.s_witnesses)}, {"t", dw(inv.t_witnesses)}};
    j["invariants"] = std::move(iv);
    j["morita_equivalent"] = true;
    return j;
}

}  // namespace morita::io
