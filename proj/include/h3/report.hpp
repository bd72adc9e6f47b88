#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace h3 {

enum class Verdict { pass, fail, skipped };

std::string to_string(Verdict v);

struct Check {
    std::string name;
    Verdict verdict = Verdict::pass;
    std::string witness; // set on failure
    std::string detail;
};

// An ordered list of named checks plus free-form invariants. Key order in the
// JSON output follows insertion order so reports are byte-reproducible.
class Report {
public:
    using Json = nlohmann::ordered_json;

    Report() = default;
    explicit Report(std::string subject) : subject_(std::move(subject)) {}

    const std::string& subject() const { return subject_; }
    const std::vector<Check>& checks() const { return checks_; }
    Json& invariants() { return invariants_; }
    const Json& invariants() const { return invariants_; }

    void pass(std::string name, std::string detail = {});
    void fail(std::string name, std::string witness, std::string detail = {});
    void skip(std::string name, std::string detail = {});
    // Records pass or fail depending on ok.
    void expect(bool ok, std::string name, std::string witness, std::string detail = {});
    void merge(const Report& other);

    bool passed() const;
    const Check* find(const std::string& name) const;
    Json checks_json() const;
    std::string text() const;

private:
    std::string subject_;
    std::vector<Check> checks_;
    Json invariants_ = Json::object();
};

} // namespace h3
