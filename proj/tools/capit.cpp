#include "capit/classifier.hpp"
#include "capit/fixtures.hpp"
#include "capit/group.hpp"
#include "capit/properties.hpp"
#include "capit/report.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace capit;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_consistency = 3;
constexpr int exit_fixture = 4;

Int parse_int(const std::string& s, const char* flag)
{
    Int v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw input_error(std::string(flag) + " must be a decimal integer");
    return v;
}

struct ClassifyArgs {
    std::string p1, p2;
};

int cmd_classify(const ClassifyArgs& a, bool as_json)
{
    PrimePair pair = validate_pair(parse_int(a.p1, "--p1"), parse_int(a.p2, "--p2"));
    InvariantRecord r = invariants(pair);
    PredictionReport rep = predict(r);
    Validation v = cross_validate(rep);
    if (as_json)
        std::cout << canonical_dump(report_json(rep, v));
    else
        std::cout << report_text(rep, v);
    return v.ok() ? exit_ok : exit_consistency;
}

struct FixtureArgs {
    std::optional<int> table;
    std::optional<int64_t> d;
    bool quiet = false;
};

int cmd_verify_fixtures(const FixtureArgs& a, bool as_json)
{
    FixtureCorpus corpus = load_fixtures();
    FixtureSummary s = verify_fixtures(corpus, {a.table, a.d});
    if (as_json) {
        Json rows = Json::array();
        for (const RowResult& r : s.rows) {
            Json checks = Json::array();
            for (const RowCheck& c : r.checks)
                checks.push_back({{"column", c.column},
                                  {"printed", c.printed},
                                  {"expected", c.expected},
                                  {"computed", c.computed},
                                  {"ok", c.ok}});
            Json row = {{"table", r.table}, {"part", r.part}, {"d", r.d}, {"p1", r.p1}, {"p2", r.p2}, {"ok", r.ok()}, {"checks", checks}};
            if (!r.error.empty())
                row["error"] = r.error;
            rows.push_back(row);
        }
        std::cout << canonical_dump({{"source", corpus.source},
                                     {"rows", rows},
                                     {"total", s.rows.size()},
                                     {"passed", s.passed()},
                                     {"ok", s.ok()}});
    } else {
        if (s.rows.empty())
            std::cout << "0 rows matched the filter\n";
        for (const RowResult& r : s.rows) {
            size_t good = std::count_if(r.checks.begin(), r.checks.end(), [](const RowCheck& c) { return c.ok; });
            std::cout << "table " << r.table << " d=" << r.d << (r.part.empty() ? "" : " " + r.part) << " (" << r.p1 << ", " << r.p2
                      << "): " << (r.ok() ? "pass" : "FAIL") << "  " << good << "/" << r.checks.size() << " columns\n";
            if (!r.error.empty())
                std::cout << "    error: " << r.error << "\n";
            for (const RowCheck& c : r.checks) {
                if (a.quiet && c.ok)
                    continue;
                std::cout << "    " << (c.ok ? "ok   " : "FAIL ") << c.column;
                if (!c.printed.empty() && c.printed != c.expected)
                    std::cout << "  printed " << c.printed << " -> 2-part " << c.expected;
                else if (!c.printed.empty())
                    std::cout << "  printed " << c.printed;
                std::cout << "  computed " << c.computed << "\n";
            }
        }
        std::cout << s.passed() << "/" << s.rows.size() << " rows pass\n";
    }
    return s.ok() ? exit_ok : exit_fixture;
}

struct GroupArgs {
    int m = 0, n = 0, q = 1;
    std::string psi = "tau-sigma";
    bool force = false;
    std::optional<int> legendre, pi, b;
};

Sign sign_arg(int v, const char* flag)
{
    if (v != 1 && v != -1)
        throw input_error(std::string(flag) + " must be 1 or -1");
    return Sign(v);
}

int cmd_group(const GroupArgs& a, bool as_json)
{
    if (a.q != 1 && a.q != 2)
        throw input_error("--q must be 1 or 2");
    if (a.m < 1 || a.n < 1)
        throw input_error("--m and --n must be positive");
    GPresentation p{a.m, a.n, a.q, parse_psi(a.psi)};
    if (p.q == 2)
        p.psi = Psi::tau_sigma;
    if (!p.admissible() && !a.force) {
        std::string why = p.m < 2 ? "m >= 2 required" : "parameters do not occur for any prime pair";
        throw input_error("presentation " + p.str() + " rejected: " + why + " (use --force to inspect it)");
    }
    if (p.m + p.n > 16)
        throw input_error("presentation too large to enumerate");

    Json out = {{"presentation", p.str()}, {"m", p.m}, {"n", p.n}, {"q", p.q}, {"psi", to_string(p.psi)},
                {"admissible", p.admissible()}};
    std::ostringstream text;
    text << "presentation " << p.str() << (p.admissible() ? "" : " (not admissible)") << "\n";

    Group g(p, true);
    out["consistent"] = g.consistent();
    text << "  consistent: " << (g.consistent() ? "yes" : "no") << "\n";
    if (!p.admissible() || !g.consistent()) {
        if (as_json)
            std::cout << canonical_dump(out);
        else
            std::cout << text.str();
        return g.consistent() ? exit_ok : exit_consistency;
    }

    Subgroup gd = derived_subgroup(g);
    std::vector<Subgroup> lcs = lower_central_series(g);
    Json series = Json::array();
    for (size_t i = 0; i < lcs.size(); ++i) {
        Json term = {{"order", lcs[i].order()}};
        if (i > 0) // every term past G lies in the abelian G'
            term["type"] = type_json(abelian_invariants(lcs[i], Subgroup::trivial(g)));
        series.push_back(term);
    }
    out["order"] = g.order();
    out["derived_type"] = type_json(abelian_invariants(gd, Subgroup::trivial(g)));
    out["abelianization"] = type_json(abelian_invariants(Subgroup::whole(g), gd));
    out["lower_central_series"] = series;
    out["nilpotency_class"] = nilpotency_class(g);
    out["coclass"] = coclass(g);
    text << "  order " << g.order() << ", G' " << abelian_invariants(gd, Subgroup::trivial(g)).str() << ", G/G' "
         << abelian_invariants(Subgroup::whole(g), gd).str() << "\n";
    text << "  lower central series orders:";
    for (const Subgroup& s : lcs)
        text << " " << s.order();
    text << "\n  nilpotency class " << nilpotency_class(g) << ", coclass " << coclass(g) << "\n";

    if (a.legendre || a.pi || a.b) {
        if (!a.legendre || !a.pi)
            throw input_error("subgroup report needs --legendre and --pi");
        InvariantRecord r;
        r.legendre = sign_arg(*a.legendre, "--legendre");
        r.pi = sign_arg(*a.pi, "--pi");
        if (r.legendre.is_plus() && !a.b)
            throw input_error("subgroup report with --legendre 1 needs --b");
        r.B = a.b ? sign_arg(*a.b, "--b") : Sign::plus();
        r.m = p.m;
        r.n = p.n;
        r.q = p.q;
        r.psi = p.psi;
        ClassSets norms = norm_groups(r);
        const auto& layout = field_layout();
        Json fields = Json::array();
        std::vector<Subgroup> gk;
        for (int j = 0; j < 7; ++j) {
            gk.push_back(subgroup_of_classes(gd, norms[j]));
            const Subgroup& h = gk.back();
            AbelianType t = abelianization(h);
            ClassSet ker = transfer_kernel(h);
            fields.push_back({{"name", layout[j].name()}, {"norm_group", class_set_json(norms[j])},
                              {"abelianization", type_json(t)}, {"kernel", class_set_json(ker)}});
            text << "  G" << j + 1 << " (" << layout[j].name() << ")  N " << class_set_str(norms[j]) << "  G/G' "
                 << t.str() << "  kernel " << class_set_str(ker) << "\n";
        }
        for (int j = 0; j < 7; ++j) {
            const auto& f = layout[7 + j].factors;
            Subgroup h = intersect(intersect(gk[f[0] - 1], gk[f[1] - 1]), gk[f[2] - 1]);
            AbelianType t = abelianization(h);
            ClassSet ker = transfer_kernel(h);
            fields.push_back({{"name", layout[7 + j].name()}, {"abelianization", type_json(t)},
                              {"kernel", class_set_json(ker)}});
            text << "  " << layout[7 + j].name() << " subgroup  G/G' " << t.str() << "  kernel " << class_set_str(ker)
                 << "\n";
        }
        out["subgroups"] = fields;
    }
    if (as_json)
        std::cout << canonical_dump(out);
    else
        std::cout << text.str();
    return exit_ok;
}

struct ScanArgs {
    int64_t max = 0;
    unsigned jobs = 1;
};

int cmd_scan(const ScanArgs& a, bool as_json)
{
    if (a.max < 13)
        throw input_error("--max must be at least 13 (the smallest pair is (5, 13))");
    if (a.jobs < 1)
        throw input_error("--jobs must be positive");
    std::vector<PairReport> reports = scan(a.max, a.jobs);
    size_t bad = 0;
    Json results = Json::array();
    for (const PairReport& r : reports) {
        if (!r.ok())
            ++bad;
        results.push_back(pair_report_json(r));
    }
    if (as_json) {
        std::cout << canonical_dump({{"max", a.max}, {"pairs", reports.size()}, {"failed_pairs", bad},
                                     {"ok", bad == 0}, {"results", results}});
    } else {
        for (const PairReport& r : reports)
            for (const PropertyResult& x : r.results)
                if (!x.ok)
                    std::cout << "pair (" << r.pair.p1 << ", " << r.pair.p2 << "): " << x.name << " violated: "
                              << x.detail << "\n";
        std::cout << reports.size() << " pairs, " << bad << " with violations\n";
    }
    return bad == 0 ? exit_ok : exit_consistency;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"capitulation and class-group calculator for Q(sqrt(2 p1 p2), i), p1 = p2 = 5 mod 8"};
    app.require_subcommand(1);
    bool as_json = false;

    ClassifyArgs ca;
    auto* classify = app.add_subcommand("classify", "invariants, predictions and engine cross-validation for one pair");
    classify->add_option("--p1", ca.p1, "first prime, 5 mod 8")->required();
    classify->add_option("--p2", ca.p2, "second prime, 5 mod 8")->required();
    classify->add_flag("--json", as_json, "canonical JSON output");

    FixtureArgs fa;
    auto* verify = app.add_subcommand("verify-fixtures", "compare computed values with the tabulated fixtures");
    verify->add_option("--table", fa.table, "only this table id (4-9)");
    verify->add_option("--filter", fa.d, "only rows with this d");
    verify->add_flag("--quiet", fa.quiet, "list failing columns only");
    verify->add_flag("--json", as_json, "canonical JSON output");

    GroupArgs ga;
    auto* group = app.add_subcommand("group", "structure of the group with parameters m, n, q, psi");
    group->add_option("--m", ga.m, "exponent m")->required();
    group->add_option("--n", ga.n, "exponent n")->required();
    group->add_option("--q", ga.q, "unit index q, 1 or 2")->required();
    group->add_option("--psi", ga.psi, "rho^2: sigma or tau-sigma (forced to tau-sigma when q = 2)");
    group->add_flag("--force", ga.force, "inspect a presentation outside the admissible patterns");
    group->add_option("--legendre", ga.legendre, "(p1/p2), 1 or -1, for the subgroup report");
    group->add_option("--pi", ga.pi, "(pi1/pi3), 1 or -1");
    group->add_option("--b", ga.b, "(1+i/pi1)(1+i/pi3), 1 or -1");
    group->add_flag("--json", as_json, "canonical JSON output");

    ScanArgs sa;
    auto* scan_cmd = app.add_subcommand("scan", "property suite over all pairs p1 < p2 <= max");
    scan_cmd->add_option("--max", sa.max, "largest prime")->required();
    scan_cmd->add_option("--jobs", sa.jobs, "worker threads");
    scan_cmd->add_flag("--json", as_json, "canonical JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*classify)
            return cmd_classify(ca, as_json);
        if (*verify)
            return cmd_verify_fixtures(fa, as_json);
        if (*group)
            return cmd_group(ga, as_json);
        return cmd_scan(sa, as_json);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const consistency_error& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return exit_consistency;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_consistency;
    }
}
