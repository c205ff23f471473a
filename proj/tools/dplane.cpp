// dplane: certificates for even-order tangency and splitting in double planes.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dplane/hunt.hpp"

using json = nlohmann::ordered_json;
using namespace dplane;

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "0.3.0";

struct Request {
    std::string subcommand;
    std::string kind; // construct only
    std::string b, c, q, h, point;
    std::string field = "F13";
    std::string input;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string mode = "monte-carlo";
    unsigned s = 2;
    unsigned n = 40;
    unsigned l = 1;
    unsigned max_tries = 50;
    unsigned shards = 1;
    bool allow_large = false;
    bool include_even = false;
    bool rational = false;
};

std::string trim(std::string s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// "name = poly" per line; blank lines and '#' comments are skipped
std::map<std::string, std::string> read_forms(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::InvalidArgument, "cannot open input file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    unsigned no = 0;
    while (std::getline(in, line)) {
        ++no;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::SyntaxError, path + ":" + std::to_string(no) + ": expected 'name = poly'");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

void resolve_inputs(Request& r)
{
    if (r.input.empty())
        return;
    const auto forms = read_forms(r.input);
    auto take = [&](std::string& slot, const char* name) {
        auto it = forms.find(name);
        if (slot.empty() && it != forms.end())
            slot = it->second;
    };
    take(r.b, "B");
    take(r.c, "C");
    take(r.q, "Q");
    take(r.h, "H");
}

PlaneCurve curve_arg(const std::string& text, const Field& f, const char* name)
{
    if (text.empty())
        fail(ErrorKind::InvalidArgument, std::string("missing --") + name);
    return PlaneCurve(TriForm::parse(text, f));
}

Elem parse_elem(std::string t, const Field& f)
{
    t = trim(t);
    if (t == "0" || t == "-0")
        return f.zero();
    const TriForm g = TriForm::parse(t + "*x", f);
    return g.coeff({1, 0, 0});
}

ProjPoint parse_point(std::string text, const Field& f)
{
    text = trim(text);
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')' && text.find(':') != std::string::npos)
        text = text.substr(1, text.size() - 2);
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        depth += ch == '(' ? 1 : ch == ')' ? -1 : 0;
        if (ch == ':' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3)
        fail(ErrorKind::SyntaxError, "a point needs three coordinates a:b:c");
    return ProjPoint({parse_elem(parts[0], f), parse_elem(parts[1], f), parse_elem(parts[2], f)});
}

// ---------------------------------------------------------------- serialization

json field_json(const Field& f)
{
    json j;
    j["name"] = f.name();
    j["characteristic"] = f.characteristic();
    j["degree"] = f.is_finite() ? f.degree() : 1u;
    j["modulus"] = f.is_finite() && f.degree() > 1 ? json(f.modulus_string()) : json(nullptr);
    return j;
}

json point_json(const ClosedPoint& p)
{
    json j;
    j["point"] = p.rep.str();
    j["point_field"] = p.rep.field().name();
    j["residue_degree"] = p.residue_degree;
    return j;
}

json report_json(const TangencyReport& r)
{
    json j;
    json recs = json::array();
    for (const auto& t : r.records) {
        json e = point_json(t.point);
        e["order"] = t.order;
        e["even"] = t.even;
        e["kind"] = to_string(t.kind);
        recs.push_back(e);
    }
    j["records"] = recs;
    j["total"] = r.total;
    j["all_even"] = r.all_even;
    json strata = json::array();
    for (const auto& s : r.intersection.strata)
        strata.push_back({{"exponent", s.exponent}, {"degree", s.degree}});
    j["strata"] = strata;
    j["parity_only"] = r.intersection.parity_only;
    return j;
}

json certificate_json(const UlrichCertificate& c)
{
    json j;
    j["s"] = c.s;
    j["verdict"] = to_string(c.verdict);
    j["d_sigma_d"] = c.d_sigma_d ? json(*c.d_sigma_d) : json(nullptr);
    j["genus_d"] = c.genus_d ? json(*c.genus_d) : json(nullptr);
    j["pair_note"] = c.pair_note;
    j["divisor_reduced"] = c.divisor_reduced;
    j["parity_only"] = c.parity_only;
    j["seed"] = c.seed;
    j["report"] = report_json(c.report);
    return j;
}

json split_json(const SplitReport& r)
{
    json j;
    j["mode"] = to_string(r.mode);
    j["outcome"] = to_string(r.outcome);
    j["samples"] = r.samples;
    j["discarded_even"] = r.discarded_even;
    j["seed"] = r.seed;
    if (r.mode == SplitMode::ExactParametrized) {
        j["pullback"] = r.pullback.str('t');
        j["pullback_form_degree"] = r.pullback_form_degree;
        if (r.root) {
            j["root"] = {{"constant", r.root->c.str()}, {"square_root", r.root->h.str('t')}};
        } else {
            j["root"] = nullptr;
        }
        json strata = json::array();
        for (const auto& s : r.odd_strata)
            strata.push_back({{"exponent", s.exponent}, {"degree", s.degree}});
        j["odd_strata"] = strata;
    }
    if (r.witness) {
        j["witness"] = {{"point", r.witness->str()},
                        {"value", r.witness_value.str()},
                        {"residue_degree", r.witness_degree}};
    } else {
        j["witness"] = nullptr;
    }
    j["note"] = r.note;
    return j;
}

std::string bipoly_str(const BiPoly& g)
{
    // polynomial in v with coefficients in Q[u]
    std::string out;
    for (std::size_t i = g.coeffs().size(); i-- > 0;) {
        const UniPoly& c = g.coeffs()[i];
        if (c.is_zero())
            continue;
        std::string cs = c.str('u');
        if (!out.empty())
            out += " + ";
        if (i == 0) {
            out += cs;
            continue;
        }
        if (c.is_constant() && (-c.coeff(0)).is_one())
            out += "-";
        else if (!c.is_one())
            out += (c.coeffs().size() > 1 || cs.find(' ') != std::string::npos ? "(" + cs + ")" : cs) + "*";
        out += "v";
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

json local_json(const LocalModel& m, unsigned l)
{
    return {{"mode", "LocalModel"},
            {"l", l},
            {"factor1", bipoly_str(m.factor1)},
            {"factor2", bipoly_str(m.factor2)},
            {"product_ok", m.product_ok},
            {"local_mult", m.local_mult}};
}

json bundle_json(const InstanceBundle& b)
{
    json j;
    j["kind"] = to_string(b.kind);
    j["s"] = b.s;
    j["B"] = b.b.str();
    j["C"] = b.c.str();
    j["point"] = b.point ? json(b.point->str()) : json(nullptr);
    j["Q"] = b.q ? json(b.q->str()) : json(nullptr);
    j["H"] = b.h ? json(b.h->str()) : json(nullptr);
    j["tries"] = b.tries;
    j["certificate"] = certificate_json(b.certificate);
    return j;
}

json partition_json(const std::vector<TangentConicRecord>& recs, const HuntStats& st, const FamilyPartition& fp)
{
    json j;
    j["candidates"] = st.candidates;
    j["smooth_conics"] = st.smooth;
    j["prefilter_survivors"] = st.prefiltered;
    j["tangent_conics"] = recs.size();
    j["count"] = fp.count;
    j["audited_triples"] = fp.audited_triples;
    j["same_family_calls"] = fp.same_family_calls;
    json fams = json::array();
    for (const auto& f : fp.families) {
        json members = json::array();
        for (const auto& r : f) {
            json half = json::array();
            for (const auto& hp : r.half_divisor) {
                json e = point_json(hp.point);
                e["mult"] = hp.mult;
                half.push_back(e);
            }
            members.push_back({{"conic", r.conic.str()}, {"half_divisor", half}});
        }
        fams.push_back({{"size", f.size()}, {"members", members}});
    }
    j["families"] = fams;
    return j;
}

void add_provenance(json& prov, const IntersectionSet& s)
{
    for (const auto& c : s.changes)
        prov["coord_changes"].push_back(c.str());
    for (const auto& e : s.extensions)
        prov["extensions"].push_back(e);
}

json request_json(const Request& r)
{
    json j;
    j["subcommand"] = r.subcommand;
    if (!r.kind.empty())
        j["kind"] = r.kind;
    if (!r.b.empty())
        j["B"] = r.b;
    if (!r.c.empty())
        j["C"] = r.c;
    if (!r.q.empty())
        j["Q"] = r.q;
    if (!r.h.empty())
        j["H"] = r.h;
    if (!r.point.empty())
        j["point"] = r.point;
    j["field"] = r.field;
    j["seed"] = r.seed;
    j["format"] = r.format;
    if (r.subcommand == "split-test") {
        j["mode"] = r.mode;
        j["n"] = r.n;
        if (r.mode == "local")
            j["l"] = r.l;
        j["include_even"] = r.include_even;
    }
    if (r.subcommand == "construct") {
        j["s"] = r.s;
        j["max_tries"] = r.max_tries;
        j["rational"] = r.rational;
    }
    if (r.subcommand == "hunt-conics") {
        j["shards"] = r.shards;
        j["allow_large"] = r.allow_large;
    }
    return j;
}

// ---------------------------------------------------------------- text output

void text_report(std::ostream& os, const TangencyReport& r)
{
    for (const auto& t : r.records)
        os << "  " << t.point.rep.str() << "  deg " << t.point.residue_degree << "  order " << t.order << "  "
           << to_string(t.kind) << "\n";
    for (const auto& s : r.intersection.strata)
        os << "  stratum exponent " << s.exponent << " degree " << s.degree << "\n";
    os << "total " << r.total << ", all even: " << (r.all_even ? "yes" : "no") << "\n";
}

void text_certificate(std::ostream& os, const UlrichCertificate& c)
{
    text_report(os, c.report);
    os << "verdict " << to_string(c.verdict);
    if (c.d_sigma_d)
        os << "  D.sigma(D) = " << *c.d_sigma_d << "  genus(D) = " << *c.genus_d;
    os << "\n";
}

// ---------------------------------------------------------------- commands

struct Outcome {
    json result;
    json provenance;
    std::string text;
};

Outcome run(Request& r)
{
    resolve_inputs(r);
    const Field f = Field::parse(r.field);
    Outcome o;
    o.provenance["seed"] = r.seed;
    o.provenance["coord_changes"] = json::array();
    o.provenance["extensions"] = json::array();
    std::ostringstream text;

    if (r.subcommand == "check-tangency") {
        const PlaneCurve b = curve_arg(r.b, f, "B"), c = curve_arg(r.c, f, "C");
        const TangencyReport rep = classify_tangency(b, c, r.seed);
        o.result = report_json(rep);
        add_provenance(o.provenance, rep.intersection);
        text_report(text, rep);
    } else if (r.subcommand == "verify-ulrich") {
        const PlaneCurve b = curve_arg(r.b, f, "B"), c = curve_arg(r.c, f, "C");
        const UlrichCertificate cert = ulrich_criterion(b, c, r.seed);
        o.result = certificate_json(cert);
        add_provenance(o.provenance, cert.report.intersection);
        text_certificate(text, cert);
    } else if (r.subcommand == "construct") {
        InstanceBundle ib;
        if (r.kind == "fermat") {
            ib = fermat_pair(r.s, f, r.seed, r.rational);
        } else if (r.kind == "squared") {
            const PlaneCurve c = curve_arg(r.c, f, "C");
            if (!r.q.empty() || !r.h.empty())
                ib = squared_construction(c, TriForm::parse(r.q, f), TriForm::parse(r.h, f), r.seed);
            else
                ib = squared_construction(c, r.seed, r.max_tries);
        } else if (r.kind == "tangent-line") {
            const PlaneCurve b = curve_arg(r.b, f, "B");
            if (r.point.empty())
                fail(ErrorKind::InvalidArgument, "missing --point");
            ib = tangent_line_instance(b, parse_point(r.point, f), r.seed);
        } else {
            fail(ErrorKind::InvalidArgument, "unknown construction " + r.kind);
        }
        o.result = bundle_json(ib);
        add_provenance(o.provenance, ib.certificate.report.intersection);
        text << "B = " << ib.b.str() << "\nC = " << ib.c.str() << "\n";
        if (ib.q)
            text << "Q = " << ib.q->str() << "\nH = " << ib.h->str() << "\ntries " << ib.tries << "\n";
        text_certificate(text, ib.certificate);
    } else if (r.subcommand == "split-test") {
        if (r.mode == "local") {
            const LocalModel m = local_split_model(r.l);
            o.result = local_json(m, r.l);
            text << "(" << bipoly_str(m.factor1) << ")(" << bipoly_str(m.factor2) << ")  local multiplicity "
                 << m.local_mult << "\n";
        } else {
            const PlaneCurve b = curve_arg(r.b, f, "B"), c = curve_arg(r.c, f, "C");
            SplitReport rep;
            if (r.mode == "exact")
                rep = split_exact_parametrized(b, c, r.seed);
            else if (r.mode == "monte-carlo")
                rep = split_monte_carlo(b, c, r.n, r.seed, r.include_even);
            else
                fail(ErrorKind::InvalidArgument, "unknown mode " + r.mode);
            o.result = split_json(rep);
            text << to_string(rep.outcome) << "  samples " << rep.samples << "\n";
            if (rep.witness)
                text << "witness " << rep.witness->str() << " value " << rep.witness_value.str() << "\n";
            if (!rep.note.empty())
                text << rep.note << "\n";
        }
    } else if (r.subcommand == "hunt-conics") {
        const PlaneCurve b = curve_arg(r.b, f, "B");
        HuntStats st;
        const auto recs = enumerate_tangent_conics(b, {r.allow_large, r.shards, r.seed}, &st);
        const FamilyPartition fp = classify_families(recs, b, r.seed);
        o.result = partition_json(recs, st, fp);
        text << recs.size() << " tangent conics in " << fp.count << " families\n";
        for (std::size_t i = 0; i < fp.families.size(); ++i) {
            text << "family " << i + 1 << ":";
            for (const auto& rec : fp.families[i])
                text << "  " << rec.conic.str() << ";";
            text << "\n";
        }
    }
    o.text = text.str();
    return o;
}

void emit_error(const Request& r, const std::string& kind, const std::string& msg, int code)
{
    if (r.format == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["tool_version"] = kToolVersion;
        j["error"] = {{"kind", kind}, {"message", msg}, {"exit_code", code}};
        std::cerr << j.dump(2) << "\n";
    } else {
        std::cerr << "error: " << kind << ": " << msg << "\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    Request r;
    CLI::App app{"Even-order tangency, Ulrich line bundle certificates and double-plane splitting"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--field", r.field, "Q, F<p> or F<p>^<k>")->capture_default_str();
        sub->add_option("--seed", r.seed, "random seed")->capture_default_str();
        sub->add_option("--format", r.format, "json or text")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        sub->add_option("--input", r.input, "file of 'name = poly' lines (B, C, Q, H)");
    };

    auto* tangency = app.add_subcommand("check-tangency", "tangency orders of C against B");
    tangency->add_option("--B", r.b, "branch curve");
    tangency->add_option("--C", r.c, "curve to test");
    common(tangency);

    auto* verify = app.add_subcommand("verify-ulrich", "even-order tangency criterion for deg B = 2 deg C");
    verify->add_option("--B", r.b, "branch curve");
    verify->add_option("--C", r.c, "curve of half the degree");
    common(verify);

    auto* construct = app.add_subcommand("construct", "build certified pairs");
    construct->add_option("kind", r.kind, "fermat, squared or tangent-line")
        ->required()
        ->check(CLI::IsMember({"fermat", "squared", "tangent-line"}));
    construct->add_option("--s", r.s, "degree of C for the Fermat pair")->capture_default_str();
    construct->add_option("--B", r.b, "conic for tangent-line");
    construct->add_option("--C", r.c, "curve for squared");
    construct->add_option("--Q", r.q, "explicit Q for squared");
    construct->add_option("--H", r.h, "explicit H for squared");
    construct->add_option("--point", r.point, "point a:b:c for tangent-line");
    construct->add_option("--max-tries", r.max_tries, "squared search budget")->capture_default_str();
    construct->add_flag("--rational", r.rational, "require rational s-th roots of unity");
    common(construct);

    auto* split = app.add_subcommand("split-test", "does the preimage of C split in the double plane");
    split->add_option("--B", r.b, "branch curve");
    split->add_option("--C", r.c, "curve to test");
    split->add_option("--mode", r.mode, "exact, monte-carlo or local")
        ->check(CLI::IsMember({"exact", "monte-carlo", "local"}))
        ->capture_default_str();
    split->add_option("--n", r.n, "Monte Carlo samples")->capture_default_str();
    split->add_option("--l", r.l, "local model exponent")->capture_default_str();
    split->add_flag("--include-even", r.include_even, "count even-degree residue fields");
    common(split);

    auto* hunt = app.add_subcommand("hunt-conics", "enumerate tangent conics to a quartic and group them");
    hunt->add_option("--B", r.b, "smooth quartic");
    hunt->add_option("--shards", r.shards, "worker threads")->capture_default_str();
    hunt->add_flag("--allow-large", r.allow_large, "permit fields with more than 31 elements");
    common(hunt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    r.subcommand = app.get_subcommands().front()->get_name();

    const auto t0 = std::chrono::steady_clock::now();
    try {
        Outcome o = run(r);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (r.format == "text") {
            std::cout << o.text;
            return 0;
        }
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["tool_version"] = kToolVersion;
        doc["request"] = request_json(r);
        doc["field"] = field_json(Field::parse(r.field));
        doc["result"] = o.result;
        doc["provenance"] = o.provenance;
        doc["timings"] = {{"total_ms", std::round(ms * 1000) / 1000}};
        std::cout << doc.dump(2) << "\n";
        return 0;
    } catch (const Error& e) {
        emit_error(r, std::string(error_name(e.kind())), e.detail(), e.exit_code());
        return e.exit_code();
    } catch (const std::exception& e) {
        emit_error(r, "Internal", e.what(), 4);
        return 4;
    }
}
