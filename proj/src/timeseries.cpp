#include "spike_esn/timeseries.hpp"

#include "spike_esn/error.hpp"
#include "spike_esn/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace spike_esn {

void Series::validate() const {
    if (values.empty()) throw Error(Errc::invalid_argument, "series '" + name + "' is empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(Errc::invalid_argument,
                        "series '" + name + "' has a non-finite value at index " + std::to_string(i));
        }
    }
    if (!labels.empty() && labels.size() != values.size()) {
        throw Error(Errc::dimension_mismatch, "series '" + name + "' has mismatched label count");
    }
}

Series Series::slice(std::size_t first, std::size_t count) const {
    if (first + count > values.size()) throw Error(Errc::insufficient_data, "series slice out of range");
    Series out;
    out.name = name;
    out.values.assign(values.begin() + first, values.begin() + first + count);
    if (!labels.empty()) out.labels.assign(labels.begin() + first, labels.begin() + first + count);
    return out;
}

Series make_series(std::string name, std::vector<double> values) {
    Series s{std::move(name), std::move(values), {}};
    s.validate();
    return s;
}

void NormParams::validate() const {
    if (!std::isfinite(u_min) || !std::isfinite(u_max) || !(u_max > u_min)) {
        throw Error(Errc::degenerate_range, "normalizer needs finite u_max > u_min");
    }
}

NormParams fit_normalizer(std::span<const double> values) {
    if (values.size() < 2) throw Error(Errc::insufficient_data, "normalizer needs at least two values");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    NormParams p{*lo, *hi};
    if (!(p.u_max > p.u_min)) {
        throw Error(Errc::degenerate_range, "constant series: max equals min (" + io::format_double(p.u_min) + ")");
    }
    p.validate();
    return p;
}

SupervisedSet SupervisedSet::slice(std::size_t first, std::size_t count) const {
    if (first + count > inputs.size()) throw Error(Errc::insufficient_data, "supervised slice out of range");
    SupervisedSet out;
    out.step = step;
    out.inputs.assign(inputs.begin() + first, inputs.begin() + first + count);
    out.targets.assign(targets.begin() + first, targets.begin() + first + count);
    return out;
}

SupervisedSet make_supervised(const Series& series, std::size_t step) {
    if (step == 0) throw Error(Errc::invalid_argument, "prediction step must be positive");
    const std::size_t n = series.size();
    if (step >= n) {
        throw Error(Errc::insufficient_data,
                    "step " + std::to_string(step) + " needs more than " + std::to_string(n) + " values");
    }
    SupervisedSet set;
    set.step = step;
    set.inputs.assign(series.values.begin(), series.values.end() - static_cast<std::ptrdiff_t>(step));
    set.targets.assign(series.values.begin() + static_cast<std::ptrdiff_t>(step), series.values.end());
    return set;
}

std::vector<double> unshift(const SupervisedSet& set) {
    if (set.targets.size() < set.step) {
        throw Error(Errc::invalid_argument, "unshift: step " + std::to_string(set.step) +
                                                " leaves a gap between inputs and targets");
    }
    std::vector<double> out = set.inputs;
    out.insert(out.end(), set.targets.end() - static_cast<std::ptrdiff_t>(set.step), set.targets.end());
    return out;
}

SplitPlan plan_split(std::size_t n, std::size_t washout, double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw Error(Errc::invalid_argument, "train_fraction must lie in (0, 1)");
    }
    if (washout + 3 > n) {
        throw Error(Errc::insufficient_data, "washout " + std::to_string(washout) + " leaves fewer than 3 of " +
                                                 std::to_string(n) + " points for train and test");
    }
    const std::size_t rest = n - washout;
    const auto train = static_cast<std::size_t>(std::floor(static_cast<double>(rest) * train_fraction));
    SplitPlan plan{washout, train, rest - train};
    if (plan.train < 2 || plan.test < 1) {
        throw Error(Errc::insufficient_data, "split leaves " + std::to_string(plan.train) + " train / " +
                                                 std::to_string(plan.test) + " test points");
    }
    return plan;
}

SupervisedSplit split(const SupervisedSet& set, std::size_t washout, double train_fraction) {
    const SplitPlan plan = plan_split(set.size(), washout, train_fraction);
    return {set.slice(0, plan.washout), set.slice(plan.train_begin(), plan.train),
            set.slice(plan.test_begin(), plan.test)};
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string describe(const ColumnRef& ref) {
    if (const auto* name = std::get_if<std::string>(&ref)) return "'" + *name + "'";
    return "#" + std::to_string(std::get<std::size_t>(ref));
}

std::size_t resolve_column(const std::vector<std::string>& header, const ColumnRef& ref,
                           const std::filesystem::path& path) {
    if (const auto* name = std::get_if<std::string>(&ref)) {
        const auto it = std::find(header.begin(), header.end(), *name);
        if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
        if (all_digits(*name)) {
            const std::size_t idx = std::stoul(*name);
            if (idx < header.size()) return idx;
        }
    } else {
        const std::size_t idx = std::get<std::size_t>(ref);
        if (idx < header.size()) return idx;
    }
    throw Error(Errc::parse, path.string() + ": no column " + describe(ref));
}

}  // namespace

Series load_csv(const std::filesystem::path& path, const ColumnRef& column, const ColumnRef* label_column) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open '" + path.string() + "'");

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        header = io::split_csv_line(line);
        break;
    }
    if (header.empty()) throw Error(Errc::parse, path.string() + ": missing header row");
    const std::size_t col = resolve_column(header, column, path);
    const std::size_t label_col = label_column ? resolve_column(header, *label_column, path) : 0;

    Series series;
    series.name = header[col];
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        const auto cells = io::split_csv_line(line);
        const std::string where = path.string() + ": row " + std::to_string(line_no);
        if (col >= cells.size() || (label_column && label_col >= cells.size())) {
            throw Error(Errc::parse, where + ": too few cells");
        }
        double v = 0.0;
        if (!io::parse_double(cells[col], v) || !std::isfinite(v)) {
            throw Error(Errc::parse, where + ": cannot parse '" + cells[col] + "' as a finite number");
        }
        series.values.push_back(v);
        if (label_column) series.labels.push_back(cells[label_col]);
    }
    if (series.values.empty()) throw Error(Errc::insufficient_data, path.string() + ": column " + describe(column) + " is empty");
    return series;
}

}  // namespace spike_esn
