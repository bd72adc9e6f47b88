#include "h3/report.hpp"

#include <sstream>

namespace h3 {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::skipped:
        return "skipped";
    }
    return "unknown";
}

void Report::pass(std::string name, std::string detail)
{
    checks_.push_back({std::move(name), Verdict::pass, {}, std::move(detail)});
}

void Report::fail(std::string name, std::string witness, std::string detail)
{
    checks_.push_back({std::move(name), Verdict::fail, std::move(witness), std::move(detail)});
}

void Report::skip(std::string name, std::string detail)
{
    checks_.push_back({std::move(name), Verdict::skipped, {}, std::move(detail)});
}

void Report::expect(bool ok, std::string name, std::string witness, std::string detail)
{
    if (ok)
        pass(std::move(name), std::move(detail));
    else
        fail(std::move(name), std::move(witness), std::move(detail));
}

void Report::merge(const Report& other)
{
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
    for (const auto& [k, v] : other.invariants_.items())
        invariants_[k] = v;
}

bool Report::passed() const
{
    for (const auto& c : checks_)
        if (c.verdict == Verdict::fail)
            return false;
    return true;
}

const Check* Report::find(const std::string& name) const
{
    for (const auto& c : checks_)
        if (c.name == name)
            return &c;
    return nullptr;
}

Report::Json Report::checks_json() const
{
    Json arr = Json::array();
    for (const auto& c : checks_) {
        Json j;
        j["name"] = c.name;
        j["verdict"] = to_string(c.verdict);
        if (c.verdict == Verdict::fail)
            j["witness"] = c.witness;
        if (!c.detail.empty())
            j["detail"] = c.detail;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::string Report::text() const
{
    std::ostringstream os;
    if (!subject_.empty())
        os << subject_ << "\n";
    for (const auto& c : checks_) {
        os << "  [" << to_string(c.verdict) << "] " << c.name;
        if (!c.detail.empty())
            os << ": " << c.detail;
        if (c.verdict == Verdict::fail)
            os << " (witness: " << c.witness << ")";
        os << "\n";
    }
    for (const auto& [k, v] : invariants_.items())
        os << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    return os.str();
}

} // namespace h3
