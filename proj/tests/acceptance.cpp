#include "capit/fixtures.hpp"
#include "capit/properties.hpp"

#include <chrono>
#include <cstring>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace capit;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

void print(int id, const char* title, const Outcome& o)
{
    std::cout << "criterion " << id << " (" << title << "): " << (o.ok ? "PASS" : "FAIL") << "  " << o.detail
              << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string timing(std::chrono::steady_clock::time_point t0)
{
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << " [" << seconds_since(t0) << " s]";
    return os.str();
}

Outcome fixture_tables(const FixtureCorpus& corpus, std::set<int> ids)
{
    auto t0 = std::chrono::steady_clock::now();
    size_t rows = 0, good = 0;
    std::string first_bad;
    for (int id : ids) {
        FixtureSummary s = verify_fixtures(corpus, {id, std::nullopt});
        rows += s.rows.size();
        good += s.passed();
        for (const RowResult& r : s.rows) {
            if (r.ok() || !first_bad.empty())
                continue;
            first_bad = "table " + std::to_string(r.table) + " d=" + std::to_string(r.d) + ": ";
            if (!r.error.empty())
                first_bad += r.error;
            for (const RowCheck& c : r.checks)
                if (!c.ok)
                    first_bad += c.column + " expected " + c.expected + " computed " + c.computed + "; ";
        }
    }
    Outcome o{rows > 0 && good == rows, std::to_string(good) + "/" + std::to_string(rows) + " rows"};
    if (!first_bad.empty())
        o.detail += ", first mismatch " + first_bad;
    o.detail += timing(t0);
    return o;
}

Outcome engine_identities()
{
    auto t0 = std::chrono::steady_clock::now();
    auto presentations = admissible_presentations(5, 5);
    size_t good = 0;
    std::string first_bad;
    for (const GPresentation& p : presentations) {
        bool ok = true;
        for (const PropertyResult& r : check_presentation(p))
            if (!r.ok) {
                ok = false;
                if (first_bad.empty())
                    first_bad = p.str() + " " + r.name + " " + r.detail;
            }
        good += ok;
    }
    Outcome o{good == presentations.size() && !presentations.empty(),
              std::to_string(good) + "/" + std::to_string(presentations.size()) + " presentations"};
    if (!first_bad.empty())
        o.detail += ", first failure " + first_bad;
    o.detail += timing(t0);
    return o;
}

// Tally of one property over the scanned pairs it applies to.
struct Tally {
    size_t checked = 0;
    size_t failed = 0;
    std::string first_bad;

    void add(const PairReport& rep, const PropertyResult& r)
    {
        ++checked;
        if (r.ok)
            return;
        ++failed;
        if (first_bad.empty())
            first_bad = "(" + std::to_string(rep.pair.p1) + ", " + std::to_string(rep.pair.p2) + ") " + r.detail;
    }
    bool ok() const { return checked > 0 && failed == 0; }
    std::string str(const std::string& name) const
    {
        std::string s = name + " " + std::to_string(checked - failed) + "/" + std::to_string(checked);
        if (!first_bad.empty())
            s += " (first failure " + first_bad + ")";
        return s;
    }
};

} // namespace

int main(int argc, char** argv)
{
    bool no_fixtures = argc > 1 && std::strcmp(argv[1], "--no-fixtures") == 0;

    // Criteria 3-6 run before any fixture access, so criterion 7 can observe them fixture-free.
    Outcome c3 = engine_identities();

    auto t0 = std::chrono::steady_clock::now();
    std::vector<PairReport> reports = scan(500, 1);
    double scan_seconds = seconds_since(t0);
    std::map<std::string, Tally> tally;
    for (const PairReport& rep : reports) {
        for (const PropertyResult& r : rep.results) {
            if (r.name == "q_equivalence" && rep.pair.p2 > 300)
                continue;
            tally[r.name].add(rep, r);
        }
        for (const char* name : {"prediction_vs_engine", "kaplan_two_parts", "imaginary_subfield_structure",
                                 "real_subfield_structure", "norm_eps_d"}) {
            bool present = false;
            for (const PropertyResult& r : rep.results)
                present = present || r.name == name;
            if (!present) // a pair whose record failed skips the later properties
                tally[name].add(rep, {name, false, "not evaluated"});
        }
    }
    std::string scan_note = std::to_string(reports.size()) + " pairs";
    auto scan_timing = [&] {
        std::ostringstream os;
        os.precision(2);
        os << std::fixed << " [scan " << scan_seconds << " s]";
        return os.str();
    };

    const Tally& master = tally["prediction_vs_engine"];
    Outcome c4{master.ok() && master.checked == reports.size(), scan_note + ", " + master.str("prediction_vs_engine") + scan_timing()};

    const Tally& quartic = tally["quartic_identity"];
    const Tally& qeq = tally["q_equivalence"];
    Outcome c5{quartic.ok() && qeq.ok(), quartic.str("quartic_identity") + ", " + qeq.str("q_equivalence (p2 <= 300)")};

    Outcome c6{true, ""};
    for (const char* name : {"kaplan_two_parts", "norm_eps_d", "imaginary_subfield_structure", "real_subfield_structure"}) {
        const Tally& t = tally[name];
        c6.ok = c6.ok && t.ok() && t.checked == reports.size();
        c6.detail += (c6.detail.empty() ? "" : ", ") + t.str(name);
    }

    // Every other per-pair property must hold too, otherwise the scan is not clean.
    for (const auto& [name, t] : tally)
        if (t.failed && name != "prediction_vs_engine" && name != "quartic_identity" && name != "q_equivalence")
            c4 = {false, c4.detail + ", also " + t.str(name)};

    int loads_before = fixture_load_count();
    Outcome c7{c3.ok && c4.ok && c5.ok && c6.ok && loads_before == 0,
               "criteria 3-6 " + std::string(c3.ok && c4.ok && c5.ok && c6.ok ? "pass" : "fail") +
                   " with " + std::to_string(loads_before) + " fixture loads"};

    Outcome c1{false, "skipped (fixtures disabled)"}, c2 = c1;
    if (!no_fixtures) {
        try {
            FixtureCorpus corpus = load_fixtures();
            c1 = fixture_tables(corpus, {4});
            c2 = fixture_tables(corpus, {5, 6, 7, 8, 9});
        } catch (const std::exception& e) {
            c1 = c2 = {false, e.what()};
        }
    }

    bool all = c3.ok && c4.ok && c5.ok && c6.ok && c7.ok;
    if (no_fixtures) {
        std::cout << "criterion 1 (table 4 reproduction): SKIP  fixtures disabled" << std::endl;
        std::cout << "criterion 2 (extension tables reproduction): SKIP  fixtures disabled" << std::endl;
    } else {
        print(1, "table 4 reproduction", c1);
        print(2, "extension tables reproduction", c2);
        all = all && c1.ok && c2.ok;
    }
    print(3, "engine-vs-theorem identities, m, n <= 5", c3);
    print(4, "prediction vs engine, pairs <= 500", c4);
    print(5, "symbol identities", c5);
    print(6, "oracle sanity, pairs <= 500", c6);
    print(7, "property floor without fixtures", c7);
    return all ? 0 : 1;
}
