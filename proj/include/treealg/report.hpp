// Line-oriented check reports: one PASS/FAIL line per (identity, subject),
// the rendered difference on failure, and a summary block with counts per
// identity at the end.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace treealg {

class Report {
  public:
    explicit Report(std::string name) : name_(std::move(name)) {}

    void check(const std::string& identity, const std::string& subject, bool ok,
               const std::function<std::string()>& detail = {}) {
        Line ln{identity, subject, ok, {}};
        if (!ok && detail) ln.detail = detail();
        auto& c = counts_[identity];
        (ok ? c.first : c.second) += 1;
        all_pass_ = all_pass_ && ok;
        lines_.push_back(std::move(ln));
    }

    void merge(const Report& other) {
        for (auto& ln : other.lines_) {
            auto& c = counts_[ln.identity];
            (ln.pass ? c.first : c.second) += 1;
            all_pass_ = all_pass_ && ln.pass;
            lines_.push_back(ln);
        }
    }

    bool all_pass() const { return all_pass_; }
    const std::string& name() const { return name_; }
    size_t size() const { return lines_.size(); }

    std::string render(bool failures_only = false) const {
        std::string s = "# report " + name_ + "\n";
        for (auto& ln : lines_) {
            if (failures_only && ln.pass) continue;
            s += (ln.pass ? "PASS " : "FAIL ") + ln.identity + " " + ln.subject + "\n";
            if (!ln.pass && !ln.detail.empty()) {
                s += "  difference:\n";
                std::string indent = "    ";
                std::string cur;
                for (char c : ln.detail) {
                    if (c == '\n') {
                        s += indent + cur + "\n";
                        cur.clear();
                    } else cur += c;
                }
                if (!cur.empty()) s += indent + cur + "\n";
            }
        }
        s += "# summary";
        s += all_pass_ ? " OK" : " FAILED";
        s += "\n";
        for (auto& [id, c] : counts_)
            s += "# " + id + " pass=" + std::to_string(c.first) +
                 " fail=" + std::to_string(c.second) + "\n";
        return s;
    }

  private:
    struct Line {
        std::string identity, subject;
        bool pass;
        std::string detail;
    };
    std::string name_;
    std::vector<Line> lines_;
    std::map<std::string, std::pair<int, int>> counts_;
    bool all_pass_ = true;
};

} // namespace treealg
