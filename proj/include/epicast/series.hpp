#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace epicast {

using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Throws DomainError.
Date parse_date(std::string_view text);
std::string format_date(Date d);

/**
 * A named daily count series on a gap-free calendar index.
 *
 * Construction validates the invariants: equal lengths, strictly
 * consecutive days, finite values. Negative values are accepted but set
 * has_negative() so callers can warn about downward corrections.
 */
class UnivariateSeries {
public:
    UnivariateSeries() = default;
    UnivariateSeries(std::string name, std::vector<Date> dates, std::vector<double> values);

    /// Series of `values.size()` consecutive days starting at `start`.
    static UnivariateSeries from_start(std::string name, Date start, std::vector<double> values);

    const std::string& name() const noexcept { return name_; }
    std::span<const Date> dates() const noexcept { return dates_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    bool has_negative() const noexcept { return has_negative_; }

    double operator[](std::size_t i) const { return values_[i]; }
    Date date(std::size_t i) const { return dates_[i]; }

    /// Half-open slice [first, first + count).
    UnivariateSeries slice(std::size_t first, std::size_t count) const;

    bool operator==(const UnivariateSeries&) const = default;

private:
    std::string name_;
    std::vector<Date> dates_;
    std::vector<double> values_;
    bool has_negative_ = false;
};

/// National total plus its constituent regional series on one date index.
class HierarchicalPanel {
public:
    HierarchicalPanel(UnivariateSeries national, std::vector<UnivariateSeries> states);

    const UnivariateSeries& national() const noexcept { return national_; }
    const std::vector<UnivariateSeries>& states() const noexcept { return states_; }
    std::size_t n() const noexcept { return states_.size(); }
    std::size_t length() const noexcept { return national_.size(); }

    /// defect[t] = Y_t - sum_i y_t^(i); non-zero when the source has an
    /// unallocated bucket.
    std::span<const double> defect() const noexcept { return defect_; }

private:
    UnivariateSeries national_;
    std::vector<UnivariateSeries> states_;
    std::vector<double> defect_;
};

struct SplitSpec {
    std::size_t train_len = 0;
    std::size_t test_len = 0;
};

struct TrainTest {
    UnivariateSeries train;
    UnivariateSeries test;
};

/// Ordered split: first train_len points, then the next test_len points.
TrainTest split(const UnivariateSeries& series, SplitSpec spec);

}  // namespace epicast
