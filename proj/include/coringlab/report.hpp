#pragma once

#include <string>
#include <vector>

namespace coringlab {

/// One verified identity: suite name, identity id ("eq-4.2.1", "functor-comp",
/// ...), pass/fail, and the offending element tuple when it failed.
struct Record {
    std::string suite;
    std::string identity;
    bool pass = true;
    std::string counterexample;
};

struct Report {
    std::vector<Record> records;

    bool pass() const {
        for (const auto& r : records)
            if (!r.pass) return false;
        return true;
    }

    void ok(const std::string& suite, const std::string& identity) {
        records.push_back({suite, identity, true, ""});
    }

    void fail(const std::string& suite, const std::string& identity, const std::string& cx) {
        records.push_back({suite, identity, false, cx});
    }

    void check(const std::string& suite, const std::string& identity, bool cond,
               const std::string& cx) {
        if (cond)
            ok(suite, identity);
        else
            fail(suite, identity, cx);
    }

    void merge(const Report& other) {
        records.insert(records.end(), other.records.begin(), other.records.end());
    }

    std::vector<Record> failures() const {
        std::vector<Record> f;
        for (const auto& r : records)
            if (!r.pass) f.push_back(r);
        return f;
    }
};

}  // namespace coringlab
