#include "slowdown/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "slowdown/errors.hpp"

namespace slowdown {
namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

LoadedSeries load_csv(const std::string& path, const std::string& asset_id,
                      const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw CsvError("cannot open '" + path + "'");
    }

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw CsvError("'" + path + "' is empty");
    }
    ++line_no;
    if (strip_cr(line) != "date,close") {
        throw CsvError("'" + path + "': expected header 'date,close', got '" + strip_cr(line) + "'",
                       line_no);
    }

    std::vector<std::pair<Date, double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            throw CsvError("'" + path + "': blank line", line_no);
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw CsvError("'" + path + "': missing comma", line_no);
        }
        Date date;
        try {
            date = Date::parse(line.substr(0, comma));
        } catch (const std::invalid_argument& e) {
            throw CsvError("'" + path + "': " + e.what(), line_no);
        }
        const char* first = line.data() + comma + 1;
        const char* last = line.data() + line.size();
        double close = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, close);
        if (ec != std::errc() || ptr != last) {
            throw CsvError("'" + path + "': bad close value '" + line.substr(comma + 1) + "'",
                           line_no);
        }
        if (!std::isfinite(close) || close < 0.0) {
            throw CsvError("'" + path + "': close must be a finite non-negative number", line_no);
        }
        rows.emplace_back(date, close);
    }
    if (rows.empty()) {
        throw CsvError("'" + path + "' has no data rows");
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].first == rows[i - 1].first) {
            throw CsvError("'" + path + "': duplicate date " + rows[i].first.to_string());
        }
    }

    LoadedSeries out;
    out.series.asset = asset_id;
    out.series.dates.push_back(rows[0].first);
    out.series.prices.push_back(rows[0].second);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int gap = rows[i].first - rows[i - 1].first - 1;  // missing days
        if (gap > 0) {
            if (!options.forward_fill || gap > options.max_fill_days) {
                throw CsvError("'" + path + "': " + std::to_string(gap) +
                               "-day gap before " + rows[i].first.to_string() +
                               (options.forward_fill ? " exceeds the forward-fill limit"
                                                     : " (enable forward fill to bridge gaps)"));
            }
            for (int k = 1; k <= gap; ++k) {
                out.series.dates.push_back(rows[i - 1].first + k);
                out.series.prices.push_back(rows[i - 1].second);
                ++out.fill_count;
            }
        }
        out.series.dates.push_back(rows[i].first);
        out.series.prices.push_back(rows[i].second);
    }

    out.series.validate();
    return out;
}

void save_csv(const std::string& path, const PriceSeries& series) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) {
        throw CsvError("cannot write '" + path + "'");
    }
    std::fputs("date,close\n", f);
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::fprintf(f, "%s,%.17g\n", series.dates[i].to_string().c_str(), series.prices[i]);
    }
    if (std::fclose(f) != 0) {
        throw CsvError("error closing '" + path + "'");
    }
}

}  // namespace slowdown
