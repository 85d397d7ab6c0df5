#include "morita/cli.hpp"

#include <CLI11.hpp>
#include <optional>
#include <sstream>

#include "morita/catalog.hpp"
#include "morita/errors.hpp"
#include "morita/hash.hpp"
#include "morita/io.hpp"
#include "morita/sheaves.hpp"

namespace morita::cli {

namespace {

using io::json;

struct Ctx {
    explicit Ctx(std::ostream& o) : out(o) {}
    std::ostream& out;
    bool quiet = false;
    std::string out_path;
    std::size_t max_size = 4096;
    std::size_t max_quadruples = default_max_quadruples;

    template <class... A>
    void say(const A&... parts) const {
        if (quiet) return;
        (out << ... << parts);
        out << '\n';
    }
    void emit(const json& doc) const {
        if (!out_path.empty()) io::write_json(doc, out_path);
        else out << doc.dump(2) << '\n';
    }
};

const char* yes(bool b) { return b ? "true" : "false"; }

std::string hex(std::uint64_t v) {
    std::ostringstream ss;
    ss << std::hex;
    ss.width(16);
    ss.fill('0');
    ss << v;
    return ss.str();
}

PseudogroupPtr load_pseudogroup(const std::string& arg) { return Pseudogroup::make(io::load_semigroup(arg)); }

EquivalenceBimodule load_equivalence(const std::string& path) {
    auto t = io::load_bimodule(path);
    auto sp = Pseudogroup::make(*t.s);
    auto tp = Pseudogroup::make(*t.t);
    return EquivalenceBimodule::verify(sp, tp, Biaction::verify(std::move(t)));
}

void cmd_validate(const Ctx& c, const std::string& file) {
    auto s = io::load_semigroup(file);
    c.say("inverse semigroup: ", s.size(), " elements, ", s.idempotents().size(), " idempotents");
    auto p = Pseudogroup::make(std::move(s));
    c.say("pseudogroup: true");
    c.say("zero: ", p->S().name(p->zero()), ", identity: ", p->S().name(p->top()));
    c.say("d-classes: ", p->S().d_class_count());
}

void cmd_lcc(const Ctx& c, const std::string& file) {
    auto p = load_pseudogroup(file);
    LccOptions o;
    o.max_carrier = c.max_size;
    auto q = make_lcc(p, o);
    auto iso = iso_check(*p, *q);
    c.say("lcc: ", q->size(), " closed ideals", q->generated() ? " (generated)" : " (filtered)");
    c.say("partial units: ", q->partial_units().size(), ", isomorphic to S: true");
    json doc;
    doc["ground"] = p->size();
    doc["size"] = q->size();
    doc["carrier"] = io::carrier_to_json(q->carrier());
    doc["unit"] = q->unit();
    doc["top"] = q->top();
    doc["partial_units"] = q->partial_units();
    doc["mult_digest"] = hex(q->mult_digest());
    c.emit(doc);
}

void cmd_present(const Ctx& c, const std::string& file, bool from_pseudogroup) {
    PresentOptions o;
    o.max_carrier = std::max<std::size_t>(c.max_size, 1);
    std::optional<QuantalFramePtr> q;
    Presentation pr;
    if (from_pseudogroup) {
        auto p = load_pseudogroup(file);
        pr = compatible_join_relations(*p);
        LccOptions lo;
        lo.max_carrier = c.max_size;
        q = make_lcc(p, lo);
    } else {
        pr = io::load_presentation(file);
    }
    c.say("relations: ", pr.relations().size(), " on ", pr.generators(), " generators");
    auto ps = PresentedSupLattice::present(std::move(pr), o);
    c.say("carrier: ", ps.size(), " closed sets", ps.generated() ? " (generated)" : " (filtered)");
    if (q) {
        if (ps.carrier().members() != (*q)->carrier().members())
            fail(ErrorKind::NotIsomorphic, "presented carrier differs from lcc", {ps.size(), (*q)->size()});
        c.say("equals lcc: true");
    }
    json doc;
    doc["generators"] = ps.presentation().generators();
    doc["size"] = ps.size();
    doc["carrier"] = io::carrier_to_json(ps.carrier());
    json eta = json::array();
    for (std::size_t x = 0; x < ps.presentation().generators(); ++x) eta.push_back(ps.eta(x));
    doc["eta"] = std::move(eta);
    c.emit(doc);
}

void cmd_module(const Ctx& c, const std::string& file) {
    auto d = io::load_action(file);
    auto p = Pseudogroup::make(*d.s);
    auto a = SupportedAction::validate(std::move(d));
    if (auto w = day_failure(a)) fail(ErrorKind::ModuleLawFailed, "action does not preserve compatibility", *w);
    c.say("supported action: ", a.size(), " elements, pointed: ", yes(a.zero().has_value()));
    if (a.zero()) c.say("completion: ", schein_complete(p, a, c.max_size).members.size(), " elements");
    auto m = PseudoModule::from(p, a);
    check_module_laws(m);
    c.say("module: true");
}

void cmd_sheaf(const Ctx& c, const std::string& file, bool self) {
    if (self) {
        auto p = load_pseudogroup(file);
        LccOptions lo;
        lo.max_carrier = c.max_size;
        auto q = make_lcc(p, lo);
        auto x = QSheaf::verify(self_sheaf(q));
        auto th = theta(x);
        auto h = verify_hilbert(x, self_inner(*q));
        c.say("sheaf: ", x.size(), " elements, ", x.sections().size(), " local sections");
        c.say("theta: ", th.module.size(), " elements; hilbert basis: ", h.basis.size());
        return;
    }
    auto d = io::load_action(file);
    auto p = Pseudogroup::make(*d.s);
    auto m = PseudoModule::from(p, SupportedAction::validate(std::move(d)));
    LccOptions lo;
    lo.max_carrier = c.max_size;
    auto ms = lcc_module(m, make_lcc(p, lo), c.max_size);
    auto th = theta(ms.sheaf);
    unit_iso(m, ms, th);
    auto h = verify_hilbert(ms.sheaf, derive_inner(ms.sheaf));
    c.say("sheaf: ", ms.sheaf.size(), " elements, ", ms.sheaf.sections().size(), " local sections");
    c.say("theta isomorphic to the module: true; hilbert basis: ", h.basis.size());
}

void cmd_bimodule(const Ctx& c, const std::string& file) {
    auto eb = load_equivalence(file);
    c.say("equivalence bimodule: ", eb.size(), " elements over |S| = ", eb.S().size(), ", |T| = ", eb.T().size());
    c.say("hash: ", hex(bimodule_hash(eb.base())));
}

void cmd_enlarge(const Ctx& c, const std::string& file) {
    auto eb = load_equivalence(file);
    auto en = enlarge_from_bimodule(eb, c.max_quadruples);
    c.say("enlargement: ", en.u->size(), " matrices; corners ", en.e_s, ", ", en.e_t, "; E1, E2 hold on both");
    c.emit(io::enlargement_to_json(en));
}

void cmd_extract(const Ctx& c, const std::string& file, std::size_t e, std::size_t f) {
    auto u = load_pseudogroup(file);
    auto rs = check_sup_enlargement(u, e);
    auto rt = check_sup_enlargement(u, f);
    auto b = bimodule_from_enlargement(u, e, f);
    c.say("corners: ", rs.s.index.size(), " and ", rt.s.index.size(), " elements; bimodule: ", b.bimodule.size(),
          " elements");
    c.emit(io::bimodule_to_json(b.bimodule.base()));
}

void cmd_invariants(const Ctx& c, const std::string& file) {
    auto p = load_pseudogroup(file);
    auto z = is_zero_simplifying(*p);
    bool fund = is_fundamental(p->S());
    c.say("0-simplifying: ", yes(z.value));
    c.say("fundamental: ", yes(fund));
    c.say("idempotents: ", p->S().idempotents().size());
    c.say("d-classes: ", p->S().d_class_count());
    if (!c.out_path.empty()) {
        json doc;
        doc["zero_simplifying"] = io::simplifying_to_json(z);
        doc["fundamental"] = fund;
        doc["idempotents"] = p->S().idempotents().size();
        doc["d_classes"] = p->S().d_class_count();
        c.emit(doc);
    }
}

void cmd_catalog(const Ctx& c, const std::string& name) {
    if (name.empty()) {
        for (const auto& e : catalog_entries()) c.out << e.name << "  " << e.description << '\n';
        return;
    }
    c.emit(io::table_to_json(catalog_semigroup(name)));
}

void cmd_certify(const Ctx& c, const std::string& s, const std::string& t, const std::string& b) {
    auto sp = load_pseudogroup(s);
    auto tp = load_pseudogroup(t);
    auto cert = joint_equivalence(sp, tp, Biaction::verify(io::load_bimodule(b)), c.max_quadruples);
    auto inv = invariance_report(*sp, *tp, cert.enlargement);
    c.say("joint enlargement: ", cert.u_size, " elements; E1, E2 hold for both corners; round trip: true");
    c.say("0-simplifying: ", yes(inv.s_simplifying.value), " / ", yes(inv.t_simplifying.value));
    c.say("fundamental: ", yes(inv.s_fundamental), " / ", yes(inv.t_fundamental));
    c.say("d-classes: ", inv.s_d_classes, " / ", inv.t_d_classes);
    c.say("Morita equivalent as pseudogroups: true");
    c.emit(io::certificate_to_json(cert, inv, s, t));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Morita equivalence of finite pseudogroups", "morita"};
    app.fallthrough();
    app.require_subcommand(1, 1);
    Ctx c(out);
    app.add_option("--max-size", c.max_size, "enumeration bound for carriers")->capture_default_str();
    app.add_option("--max-quadruples", c.max_quadruples, "bound on S×X×X×T for enlargements")->capture_default_str();
    app.add_flag("--quiet", c.quiet, "suppress the human-readable report");
    app.add_option("--out", c.out_path, "write the JSON document here instead of stdout");

    std::string file, file2, file3;
    std::size_t e = 0, f = 0;
    bool flag = false;
    auto* v = app.add_subcommand("validate", "check a Cayley table as an inverse semigroup and a pseudogroup");
    v->add_option("semigroup", file, "table file or catalog:NAME")->required();
    auto* l = app.add_subcommand("lcc", "closed ideals and the quantal frame of a pseudogroup");
    l->add_option("semigroup", file)->required();
    auto* pr = app.add_subcommand("present", "sup-lattice from generators and relations");
    pr->add_option("file", file, "presentation file, or a semigroup with --pseudogroup")->required();
    pr->add_flag("--pseudogroup", flag, "present the compatible-join relations of a pseudogroup and compare with lcc");
    auto* mo = app.add_subcommand("module", "supported action and module laws");
    mo->add_option("action", file)->required();
    auto* sh = app.add_subcommand("sheaf", "sheaf completion of a module, sections and Hilbert structure");
    sh->add_option("file", file, "action file, or a semigroup with --self")->required();
    sh->add_flag("--self", flag, "use the quantal frame acting on itself");
    auto* bi = app.add_subcommand("bimodule", "verify an equivalence bimodule");
    bi->add_option("bimodule", file)->required();
    auto* en = app.add_subcommand("enlarge", "joint enlargement of an equivalence bimodule");
    en->add_option("bimodule", file)->required();
    auto* ex = app.add_subcommand("extract", "equivalence bimodule eUf from an enlargement");
    ex->add_option("semigroup", file)->required();
    ex->add_option("--e", e, "idempotent for the left corner")->required();
    ex->add_option("--f", f, "idempotent for the right corner")->required();
    auto* iv = app.add_subcommand("invariants", "0-simplifying, fundamental, idempotents, d-classes");
    iv->add_option("semigroup", file)->required();
    auto* ca = app.add_subcommand("catalog", "list catalog entries or dump one as a table");
    ca->add_option("name", file);
    auto* ce = app.add_subcommand("certify", "full pipeline: bimodule, enlargement, corners, invariants");
    ce->add_option("s", file)->required();
    ce->add_option("t", file2)->required();
    ce->add_option("bimodule", file3)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& pe) {
        if (pe.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << pe.what() << '\n';
        return 2;
    }

    try {
        if (v->parsed()) cmd_validate(c, file);
        else if (l->parsed()) cmd_lcc(c, file);
        else if (pr->parsed()) cmd_present(c, file, flag);
        else if (mo->parsed()) cmd_module(c, file);
        else if (sh->parsed()) cmd_sheaf(c, file, flag);
        else if (bi->parsed()) cmd_bimodule(c, file);
        else if (en->parsed()) cmd_enlarge(c, file);
        else if (ex->parsed()) cmd_extract(c, file, e, f);
        else if (iv->parsed()) cmd_invariants(c, file);
        else if (ca->parsed()) cmd_catalog(c, file);
        else if (ce->parsed()) cmd_certify(c, file, file2, file3);
    } catch (const Error& x) {
        err << "error: " << kind_name(x.kind()) << ": " << x.detail() << '\n';
        if (!x.witness().empty()) {
            err << "witness:";
            for (auto w : x.witness()) err << ' ' << w;
            err << '\n';
        }
        return is_input_error(x.kind()) ? 2 : 1;
    } catch (const std::exception& x) {
        err << "error: " << x.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace morita::cli
