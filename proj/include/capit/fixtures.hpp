#pragma once

#include "capit/arith.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace capit {

// Unreadable or malformed fixture corpus; the CLI maps it to exit code 2.
struct fixture_error : input_error {
    using input_error::input_error;
};

struct FixtureCorpus {
    nlohmann::json doc;
    std::string source; // "embedded" or the override path
};

inline constexpr const char* fixtures_env = "CAPIT_FIXTURES";

const std::string& embedded_fixtures_text();
// Checks the format tag, the table ids and every row's shape; throws fixture_error.
FixtureCorpus parse_fixtures(const std::string& text, const std::string& source);
// The file named by $CAPIT_FIXTURES if set, else the embedded copy.
FixtureCorpus load_fixtures();
// Number of load_fixtures / parse_fixtures calls in this process.
int fixture_load_count();

struct FixtureFilter {
    std::optional<int> table;
    std::optional<int64_t> d;
};

struct RowCheck {
    std::string column;
    std::string printed;  // as printed, e.g. "(30, 10, 2)"
    std::string expected; // value compared, e.g. the 2-part "(2, 2, 2)"
    std::string computed;
    bool ok = false;
};

struct RowResult {
    int table = 0;
    int64_t d = 0;
    int64_t p1 = 0;
    int64_t p2 = 0;
    std::string part; // "K" or "L" for rows printing both halves separately
    std::vector<RowCheck> checks;
    std::string error; // set when the row could not be evaluated

    bool ok() const;
};

struct FixtureSummary {
    std::vector<RowResult> rows;

    size_t passed() const;
    bool ok() const { return passed() == rows.size(); }
};

FixtureSummary verify_fixtures(const FixtureCorpus& corpus, const FixtureFilter& filter = {});

} // namespace capit
