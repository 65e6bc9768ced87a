#include "epicast/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "epicast/error.hpp"
#include "epicast/log.hpp"

namespace epicast {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

double parse_value(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = field.data() + field.size();
    if (!field.empty() && field.front() == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError("non-numeric value '" + std::string(field) + "'", line_no);
    }
    return value;
}

struct Row {
    Date date;
    std::vector<double> values;
    std::size_t line;
};

struct Table {
    std::vector<std::string> columns;  // data columns, excluding `date`
    std::vector<Row> rows;
};

Table read_table(std::istream& in) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (trim(view).empty()) continue;
        auto fields = split_fields(view);
        if (!have_header) {
            if (fields.size() < 2 || fields[0] != "date") {
                throw ParseError("header must start with 'date' followed by data columns", line_no);
            }
            for (std::size_t i = 1; i < fields.size(); ++i) {
                if (fields[i].empty()) throw ParseError("empty column name", line_no);
                table.columns.emplace_back(fields[i]);
            }
            have_header = true;
            continue;
        }
        if (fields.size() != table.columns.size() + 1) {
            throw ParseError("expected " + std::to_string(table.columns.size() + 1) +
                                 " fields, found " + std::to_string(fields.size()),
                             line_no);
        }
        Row row;
        row.line = line_no;
        try {
            row.date = parse_date(fields[0]);
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_no);
        }
        row.values.reserve(table.columns.size());
        for (std::size_t i = 1; i < fields.size(); ++i) {
            row.values.push_back(parse_value(fields[i], line_no));
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("missing header row", line_no == 0 ? 1 : line_no);
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    return table;
}

UnivariateSeries column(const Table& table, std::size_t col, std::string name) {
    std::vector<Date> dates;
    std::vector<double> values;
    dates.reserve(table.rows.size());
    values.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        dates.push_back(row.date);
        values.push_back(row.values[col]);
    }
    UnivariateSeries series(std::move(name), std::move(dates), std::move(values));
    if (series.has_negative()) {
        log::warn("series '" + series.name() + "' contains negative daily values");
    }
    return series;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

UnivariateSeries parse_series_csv(std::istream& in, std::string name) {
    Table table = read_table(in);
    if (table.columns.size() != 1 || table.columns[0] != "value") {
        throw ParseError("series header must be 'date,value'", 1);
    }
    return column(table, 0, std::move(name));
}

UnivariateSeries parse_series_csv(const std::filesystem::path& path) {
    auto in = open(path);
    return parse_series_csv(in, path.stem().string());
}

HierarchicalPanel parse_panel_csv(std::istream& in) {
    Table table = read_table(in);
    if (table.columns.size() < 2) {
        throw ParseError("panel needs a national column and at least one state column", 1);
    }
    UnivariateSeries national = column(table, 0, table.columns[0]);
    std::vector<UnivariateSeries> states;
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        states.push_back(column(table, c, table.columns[c]));
    }
    return HierarchicalPanel(std::move(national), std::move(states));
}

HierarchicalPanel parse_panel_csv(const std::filesystem::path& path) {
    auto in = open(path);
    return parse_panel_csv(in);
}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

void write_series_csv(std::ostream& out, const UnivariateSeries& series) {
    out << "date,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_date(series.date(i)) << ',' << format_number(series[i]) << '\n';
    }
}

void write_panel_csv(std::ostream& out, const HierarchicalPanel& panel) {
    out << "date," << panel.national().name();
    for (const auto& s : panel.states()) out << ',' << s.name();
    out << '\n';
    for (std::size_t t = 0; t < panel.length(); ++t) {
        out << format_date(panel.national().date(t)) << ',' << format_number(panel.national()[t]);
        for (const auto& s : panel.states()) out << ',' << format_number(s[t]);
        out << '\n';
    }
}

}  // namespace epicast
