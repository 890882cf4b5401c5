#include "capit/fixtures.hpp"

#include "capit/classifier.hpp"
#include "capit/properties.hpp"
#include "capit/quadratic.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace capit {

using nlohmann::json;

namespace {

std::atomic<int> load_count{0};

[[noreturn]] void corrupt(const std::string& where, const std::string& what)
{
    throw fixture_error("corrupt fixture corpus (" + where + "): " + what);
}

void require_int(const json& obj, const std::string& key, const std::string& where)
{
    if (!obj.contains(key) || !obj[key].is_number_integer())
        corrupt(where, "missing integer field '" + key + "'");
}

void require_tuple(const json& t, const std::string& where)
{
    if (!t.is_array() || t.empty())
        corrupt(where, "class group tuple must be a non-empty array");
    for (const json& x : t)
        if (!x.is_number_integer() || x.get<int64_t>() < 1)
            corrupt(where, "class group tuple entries must be positive integers");
}

void require_tuples(const json& obj, const std::string& key, size_t count, const std::string& where)
{
    if (!obj.contains(key) || !obj[key].is_array() || obj[key].size() != count)
        corrupt(where, "'" + key + "' must hold " + std::to_string(count) + " tuples");
    for (const json& t : obj[key])
        require_tuple(t, where + "." + key);
}

void require_d(const json& obj, int64_t d, const std::string& where)
{
    require_int(obj, "p1", where);
    require_int(obj, "p2", where);
    if (Int(2) * obj["p1"].get<int64_t>() * obj["p2"].get<int64_t>() != d)
        corrupt(where, "d != 2 p1 p2");
}

void validate_row(int id, const json& row, const std::string& where)
{
    if (!row.is_object())
        corrupt(where, "row must be an object");
    require_int(row, "d", where);
    int64_t d = row["d"].get<int64_t>();
    auto ints = [&](const json& obj, std::initializer_list<const char*> keys, const std::string& w) {
        for (const char* k : keys)
            require_int(obj, k, w);
    };
    switch (id) {
    case 4:
        require_d(row, d, where);
        ints(row, {"q", "legendre", "m", "n", "disc", "cc"}, where);
        require_tuple(row.value("cl_k0", json()), where + ".cl_k0");
        require_tuple(row.value("cl_kbar0", json()), where + ".cl_kbar0");
        require_tuple(row.value("cl_base", json()), where + ".cl_base");
        break;
    case 5:
    case 6:
        require_d(row, d, where);
        ints(row, {"q", "m", "n"}, where);
        require_tuples(row, "cl_K", 7, where);
        break;
    case 7:
        require_d(row, d, where);
        ints(row, {"q", "b", "n"}, where);
        require_tuples(row, "cl_L", 7, where);
        break;
    case 8:
        require_d(row, d, where);
        ints(row, {"b", "m", "n"}, where);
        require_tuples(row, "cl_L", 7, where);
        break;
    case 9:
        for (const char* part : {"k", "l"}) {
            std::string w = where + "." + part;
            if (!row.contains(part) || !row[part].is_object())
                corrupt(where, std::string("missing part '") + part + "'");
            require_d(row[part], d, w);
            ints(row[part], {"q", "pi", "m"}, w);
        }
        require_tuples(row["k"], "cl_K", 7, where + ".k");
        require_tuples(row["l"], "cl_L", 7, where + ".l");
        break;
    default:
        corrupt(where, "unknown table id " + std::to_string(id));
    }
}

std::vector<uint64_t> tuple_of(const json& t)
{
    std::vector<uint64_t> out;
    for (const json& x : t)
        out.push_back(x.get<uint64_t>());
    return out;
}

std::string tuple_str(const std::vector<uint64_t>& t)
{
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < t.size(); ++i)
        os << (i ? ", " : "") << t[i];
    os << ")";
    return os.str();
}

struct PairData {
    InvariantRecord record;
    PredictionReport report;
    Validation validation;
    PropertyResult swap;
};

class RowChecker {
public:
    explicit RowChecker(RowResult& out) : out_(out) {}

    void value(const std::string& column, int64_t printed, int64_t computed)
    {
        std::string p = std::to_string(printed);
        out_.checks.push_back({column, p, p, std::to_string(computed), printed == computed});
    }

    void big(const std::string& column, int64_t printed, const Int& computed)
    {
        std::string p = std::to_string(printed);
        out_.checks.push_back({column, p, p, to_string(computed), computed == printed});
    }

    // 2-part of the printed group against a computed 2-group type.
    void two_part(const std::string& column, const json& printed, const AbelianType& computed)
    {
        std::vector<uint64_t> t = tuple_of(printed);
        AbelianType expected = AbelianType::from_factors(t).two_part();
        out_.checks.push_back({column, tuple_str(t), expected.str(), computed.str(), expected == computed});
    }

    // Full printed structure against a computed full structure.
    void full(const std::string& column, const json& printed, const AbelianType& computed)
    {
        std::vector<uint64_t> t = tuple_of(printed);
        AbelianType expected = AbelianType::from_factors(t);
        out_.checks.push_back({column, tuple_str(t), expected.str(), computed.str(), expected == computed});
    }

    void flag(const std::string& column, bool ok, const std::string& computed)
    {
        out_.checks.push_back({column, "", "ok", computed, ok});
    }

    void engine(const PairData& pd)
    {
        const Validation& v = pd.validation;
        std::string detail = std::to_string(v.validated_extensions) + "/14 extensions";
        for (const Check& c : v.failures())
            detail += "; " + c.name + ": predicted " + c.expected + ", engine " + c.actual;
        flag("cross_validation", v.ok(), detail);
        flag("pair_swap", pd.swap.ok, pd.swap.ok ? "invariant" : pd.swap.detail);
    }

private:
    RowResult& out_;
};

} // namespace

bool RowResult::ok() const
{
    return error.empty() && std::all_of(checks.begin(), checks.end(), [](const RowCheck& c) { return c.ok; });
}

size_t FixtureSummary::passed() const
{
    return size_t(std::count_if(rows.begin(), rows.end(), [](const RowResult& r) { return r.ok(); }));
}

FixtureCorpus parse_fixtures(const std::string& text, const std::string& source)
{
    ++load_count;
    FixtureCorpus corpus;
    corpus.source = source;
    try {
        corpus.doc = json::parse(text);
    } catch (const json::parse_error& e) {
        corrupt(source, e.what());
    }
    const json& doc = corpus.doc;
    if (!doc.is_object() || doc.value("format", "") != "fixtures_v1")
        corrupt(source, "format tag must be \"fixtures_v1\"");
    if (!doc.contains("tables") || !doc["tables"].is_array())
        corrupt(source, "missing 'tables' array");
    std::vector<int> seen;
    for (const json& table : doc["tables"]) {
        if (!table.is_object())
            corrupt(source, "table must be an object");
        require_int(table, "id", source);
        int id = table["id"].get<int>();
        if (std::find(seen.begin(), seen.end(), id) != seen.end())
            corrupt(source, "duplicate table id " + std::to_string(id));
        seen.push_back(id);
        std::string where = source + ": table " + std::to_string(id);
        if (id >= 5 && id <= 8)
            require_int(table, "legendre", where);
        if (id == 9)
            require_int(table, "legendre", where);
        if (id >= 5 && id <= 8)
            require_int(table, "pi", where);
        if (id == 7)
            require_int(table, "m", where);
        if (!table.contains("rows") || !table["rows"].is_array())
            corrupt(where, "missing 'rows' array");
        size_t i = 0;
        for (const json& row : table["rows"])
            validate_row(id, row, where + " row " + std::to_string(i++));
    }
    return corpus;
}

FixtureCorpus load_fixtures()
{
    const char* path = std::getenv(fixtures_env);
    if (!path || !*path)
        return parse_fixtures(embedded_fixtures_text(), "embedded");
    std::ifstream in(path);
    if (!in) {
        ++load_count;
        throw fixture_error(std::string("cannot read fixture file ") + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_fixtures(buf.str(), path);
}

int fixture_load_count() { return load_count.load(); }

FixtureSummary verify_fixtures(const FixtureCorpus& corpus, const FixtureFilter& filter)
{
    std::map<std::pair<int64_t, int64_t>, PairData> cache;
    auto data_for = [&](int64_t p1, int64_t p2) -> const PairData& {
        auto key = std::make_pair(p1, p2);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
        PairData pd;
        pd.record = invariants(validate_pair(p1, p2));
        pd.report = predict(pd.record);
        pd.validation = cross_validate(pd.report);
        pd.swap = pair_swap(pd.record, pd.report);
        return cache.emplace(key, std::move(pd)).first->second;
    };

    FixtureSummary summary;
    for (const json& table : corpus.doc["tables"]) {
        int id = table["id"].get<int>();
        if (filter.table && *filter.table != id)
            continue;
        for (const json& row : table["rows"]) {
            int64_t d = row["d"].get<int64_t>();
            if (filter.d && *filter.d != d)
                continue;
            // rows of table id 9 hold a K part and an L part, each with its own printed primes
            std::vector<const json*> parts;
            if (id == 9)
                parts = {&row["k"], &row["l"]};
            else
                parts = {&row};
            for (const json* part : parts) {
                RowResult res;
                res.table = id;
                res.d = d;
                res.p1 = (*part)["p1"].get<int64_t>();
                res.p2 = (*part)["p2"].get<int64_t>();
                if (id == 9)
                    res.part = part == &row["k"] ? "K" : "L";
                RowChecker check(res);
                try {
                    const PairData& pd = data_for(res.p1, res.p2);
                    const InvariantRecord& r = pd.record;
                    const PredictionReport& rep = pd.report;
                    const json& p = *part;
                    auto legendre = id == 4 ? p["legendre"] : table["legendre"];
                    check.value("(p1/p2)", legendre.get<int>(), r.legendre.value());
                    if (table.contains("pi"))
                        check.value("(pi1/pi3)", table["pi"].get<int>(), r.pi.value());
                    if (p.contains("pi"))
                        check.value("(pi1/pi3)", p["pi"].get<int>(), r.pi.value());
                    if (p.contains("b"))
                        check.value("b", p["b"].get<int>(), r.B.value());
                    if (p.contains("q"))
                        check.value("q", p["q"].get<int>(), r.q);
                    if (p.contains("m"))
                        check.value("m", p["m"].get<int>(), r.m);
                    if (table.contains("m"))
                        check.value("m", table["m"].get<int>(), r.m);
                    if (p.contains("n"))
                        check.value("n", p["n"].get<int>(), r.n);
                    if (id == 4) {
                        Int d0 = field_discriminant(r.d), dbar0 = field_discriminant(-r.d);
                        AbelianType k0 = class_group(d0), kbar0 = class_group(dbar0);
                        check.two_part("Cl2(k0)", p["cl_k0"], k0.two_part());
                        check.two_part("Cl2(kbar0)", p["cl_kbar0"], kbar0.two_part());
                        check.full("Cl(k0)", p["cl_k0"], k0);
                        check.full("Cl(kbar0)", p["cl_kbar0"], kbar0);
                        check.two_part("Cl2(base)", p["cl_base"], rep.base_class_group);
                        check.big("disc", p["disc"].get<int64_t>(), rep.disc);
                        check.value("cc", p["cc"].get<int>(), rep.coclass);
                    }
                    if (p.contains("cl_K"))
                        for (int j = 0; j < 7; ++j)
                            check.two_part("Cl2(K" + std::to_string(j + 1) + ")", p["cl_K"][j], rep.k[j].type);
                    if (p.contains("cl_L"))
                        for (int j = 0; j < 7; ++j)
                            check.two_part("Cl2(L" + std::to_string(j + 1) + ")", p["cl_L"][j], rep.l[j].type);
                    check.engine(pd);
                } catch (const std::exception& e) {
                    res.error = e.what();
                }
                summary.rows.push_back(std::move(res));
            }
        }
    }
    return summary;
}

} // namespace capit
