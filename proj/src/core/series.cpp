#include "epicast/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "epicast/error.hpp"

namespace epicast {

namespace {

int parse_fixed_int(std::string_view text, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DomainError("invalid date '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw DomainError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
    }
    const int y = parse_fixed_int(text.substr(0, 4), text);
    const int m = parse_fixed_int(text.substr(5, 2), text);
    const int d = parse_fixed_int(text.substr(8, 2), text);
    const std::chrono::year_month_day ymd{std::chrono::year{y},
                                          std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        throw DomainError("invalid calendar date '" + std::string(text) + "'");
    }
    return Date{ymd};
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

UnivariateSeries::UnivariateSeries(std::string name, std::vector<Date> dates,
                                   std::vector<double> values)
    : name_(std::move(name)), dates_(std::move(dates)), values_(std::move(values)) {
    if (dates_.size() != values_.size()) {
        throw ValidationError("series '" + name_ + "': " + std::to_string(dates_.size()) +
                              " dates but " + std::to_string(values_.size()) + " values");
    }
    std::string missing;
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        const auto step = (dates_[i] - dates_[i - 1]).count();
        if (step == 0) {
            throw ValidationError("series '" + name_ + "': duplicated date " +
                                  format_date(dates_[i]));
        }
        if (step < 0) {
            throw ValidationError("series '" + name_ + "': dates not increasing at " +
                                  format_date(dates_[i]));
        }
        for (auto d = dates_[i - 1] + std::chrono::days{1}; d < dates_[i]; d += std::chrono::days{1}) {
            if (!missing.empty()) missing += ", ";
            missing += format_date(d);
        }
    }
    if (!missing.empty()) {
        throw ValidationError("series '" + name_ + "': missing dates " + missing);
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("series '" + name_ + "': non-finite value on " +
                                  format_date(dates_[i]));
        }
        if (values_[i] < 0.0) has_negative_ = true;
    }
}

UnivariateSeries UnivariateSeries::from_start(std::string name, Date start,
                                              std::vector<double> values) {
    std::vector<Date> dates(values.size());
    for (std::size_t i = 0; i < dates.size(); ++i) {
        dates[i] = start + std::chrono::days{static_cast<int>(i)};
    }
    return UnivariateSeries(std::move(name), std::move(dates), std::move(values));
}

UnivariateSeries UnivariateSeries::slice(std::size_t first, std::size_t count) const {
    if (first + count > size()) {
        throw DomainError("slice [" + std::to_string(first) + ", " +
                          std::to_string(first + count) + ") exceeds series length " +
                          std::to_string(size()));
    }
    return UnivariateSeries(
        name_, std::vector<Date>(dates_.begin() + first, dates_.begin() + first + count),
        std::vector<double>(values_.begin() + first, values_.begin() + first + count));
}

HierarchicalPanel::HierarchicalPanel(UnivariateSeries national, std::vector<UnivariateSeries> states)
    : national_(std::move(national)), states_(std::move(states)) {
    if (states_.empty()) {
        throw ValidationError("panel needs at least one constituent series");
    }
    for (const auto& s : states_) {
        if (!std::equal(s.dates().begin(), s.dates().end(), national_.dates().begin(),
                        national_.dates().end())) {
            throw ValidationError("series '" + s.name() + "' does not share the national date index");
        }
    }
    defect_.resize(national_.size());
    for (std::size_t t = 0; t < defect_.size(); ++t) {
        double sum = 0.0;
        for (const auto& s : states_) sum += s[t];
        defect_[t] = national_[t] - sum;
    }
}

TrainTest split(const UnivariateSeries& series, SplitSpec spec) {
    if (spec.train_len == 0) {
        throw DomainError("split: train length must be positive");
    }
    if (spec.train_len + spec.test_len > series.size()) {
        throw DomainError("split: train " + std::to_string(spec.train_len) + " + test " +
                          std::to_string(spec.test_len) + " exceeds series length " +
                          std::to_string(series.size()));
    }
    return {series.slice(0, spec.train_len), series.slice(spec.train_len, spec.test_len)};
}

}  // namespace epicast
