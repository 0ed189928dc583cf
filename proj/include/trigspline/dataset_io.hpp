#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "trigspline/spline.hpp"

namespace trigspline {

enum class DataFormat { Csv, Json };

/// Sample values in grid order.
struct SampleSet {
    GridSpec grid;
    std::vector<double> values;
};

namespace detail {

/// Fixed 12-significant-digit rendering, locale independent.
inline std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view text) {
    const auto* ws = " \t\r\n";
    const auto begin = text.find_first_not_of(ws);
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = text.find_last_not_of(ws);
    return text.substr(begin, end - begin + 1);
}

inline double parse_double(std::string_view token, int line_number) {
    const std::string_view trimmed = trim(token);
    double value = 0.0;
    const auto res =
        std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
    if (res.ec != std::errc{} || res.ptr != trimmed.data() + trimmed.size() ||
        trimmed.empty()) {
        throw ParseError("line " + std::to_string(line_number) +
                         ": malformed number '" + std::string(trimmed) + "'");
    }
    return value;
}

inline long long parse_integer(std::string_view token, int line_number) {
    const std::string_view trimmed = trim(token);
    long long value = 0;
    const auto res =
        std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
    if (res.ec != std::errc{} || res.ptr != trimmed.data() + trimmed.size() ||
        trimmed.empty()) {
        throw ParseError("line " + std::to_string(line_number) +
                         ": malformed integer '" + std::string(trimmed) + "'");
    }
    return value;
}

} // namespace detail

/// Reads sample values from CSV. Accepts one value per line or the
/// two-column (index,value) form with 1-based indices in order; '#' lines
/// and blank lines are skipped.
inline SampleSet read_samples_csv(std::istream& in, const GridSpec& grid) {
    std::vector<double> values;
    std::string line;
    int line_number = 0;
    int row = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string_view text = detail::trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        ++row;
        const auto comma = text.find(',');
        double value = 0.0;
        if (comma == std::string_view::npos) {
            value = detail::parse_double(text, line_number);
        } else {
            const auto second_comma = text.find(',', comma + 1);
            if (second_comma != std::string_view::npos) {
                throw ParseError("line " + std::to_string(line_number) +
                                 ": expected at most two columns");
            }
            const long long index =
                detail::parse_integer(text.substr(0, comma), line_number);
            if (index != row) {
                throw ParseError("line " + std::to_string(line_number) +
                                 ": index " + std::to_string(index) +
                                 " out of order (expected " + std::to_string(row) + ")");
            }
            value = detail::parse_double(text.substr(comma + 1), line_number);
        }
        if (!std::isfinite(value)) {
            throw InputError("line " + std::to_string(line_number) +
                             ": sample values must be finite");
        }
        values.push_back(value);
    }
    if (static_cast<int>(values.size()) != grid.node_count()) {
        throw DimensionError("expected " + std::to_string(grid.node_count()) +
                             " samples, got " + std::to_string(values.size()));
    }
    return SampleSet{grid, std::move(values)};
}

/// Reads a {"N":…, "I":…, "values":[…]} object. When declared is given,
/// the file's grid must match it.
inline SampleSet read_samples_json(std::istream& in,
                                   std::optional<GridSpec> declared = std::nullopt) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("N") || !doc.contains("I") ||
        !doc.contains("values")) {
        throw SchemaError("sample JSON must carry N, I and values");
    }
    const GridSpec grid(doc["N"].get<int>(), doc["I"].get<int>());
    if (declared && !(grid == *declared)) {
        throw DimensionError("sample JSON grid (N=" + std::to_string(grid.node_count()) +
                             ", I=" + std::to_string(grid.indicator()) +
                             ") does not match the declared grid");
    }
    std::vector<double> values = doc["values"].get<std::vector<double>>();
    if (static_cast<int>(values.size()) != grid.node_count()) {
        throw DimensionError("expected " + std::to_string(grid.node_count()) +
                             " samples, got " + std::to_string(values.size()));
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InputError("sample values must be finite");
        }
    }
    return SampleSet{grid, std::move(values)};
}

inline SampleSet read_samples(std::istream& in, DataFormat format,
                              std::optional<GridSpec> declared = std::nullopt) {
    if (format == DataFormat::Csv) {
        if (!declared) {
            throw DomainError("CSV sample input needs declared grid parameters");
        }
        return read_samples_csv(in, *declared);
    }
    return read_samples_json(in, declared);
}

/// One value per line, with the grid recorded in a comment header.
inline void write_samples(std::ostream& out, const SampleSet& samples) {
    out << "# N=" << samples.grid.node_count() << " I=" << samples.grid.indicator()
        << "\n";
    for (double v : samples.values) {
        out << detail::format_double(v) << "\n";
    }
    if (!out) {
        throw IoError("failed to write sample set");
    }
}

/// A labelled table of rows, first column the angle t.
struct Series {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
};

/// CSV with a header row; rows are emitted in ascending t at 12 significant
/// digits. Byte output is a pure function of the input.
inline void write_series(std::ostream& out, const Series& series) {
    if (series.rows.empty() || series.labels.empty()) {
        throw DimensionError("series must have labels and at least one row");
    }
    for (const auto& row : series.rows) {
        if (row.size() != series.labels.size()) {
            throw DimensionError("series row width does not match the labels");
        }
    }
    std::vector<std::size_t> order(series.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&series](std::size_t a, std::size_t b) {
        return series.rows[a][0] < series.rows[b][0];
    });

    for (std::size_t i = 0; i < series.labels.size(); ++i) {
        out << (i == 0 ? "" : ",") << series.labels[i];
    }
    out << "\n";
    for (std::size_t idx : order) {
        const auto& row = series.rows[idx];
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i == 0 ? "" : ",") << detail::format_double(row[i]);
        }
        out << "\n";
    }
    if (!out) {
        throw IoError("failed to write series");
    }
}

inline constexpr int descriptor_version = 1;
inline constexpr const char* descriptor_schema = "trigspline/spline";

/// Serializes a built spline, derived quantities included, so persisted
/// artifacts can re-verify themselves on load.
inline std::string write_descriptor(const TrigSpline& spline) {
    nlohmann::ordered_json doc;
    doc["schema"] = descriptor_schema;
    doc["version"] = descriptor_version;
    doc["grid"] = {{"N", spline.grid().node_count()}, {"I", spline.grid().indicator()}};
    doc["kind"] = to_string(spline.kind());
    doc["order"] = spline.order().value();
    doc["truncation"] = {{"alias_blocks", spline.policy().alias_blocks},
                         {"tail_bound", spline.policy().tail_bound}};
    doc["values"] = spline.values();
    doc["cosine_coefficients"] = spline.coeffs().a;
    doc["sine_coefficients"] = spline.coeffs().b;
    std::vector<double> normalizers(static_cast<std::size_t>(spline.grid().harmonics()));
    for (int k = 1; k <= spline.grid().harmonics(); ++k) {
        normalizers[static_cast<std::size_t>(k) - 1] = spline.kernel().normalizer_at(k);
    }
    doc["normalizers"] = normalizers;
    return doc.dump(2);
}

namespace detail {

inline void check_close(double stored, double rebuilt, const char* what) {
    if (!(std::abs(stored - rebuilt) <=
          1e-12 * std::max(1.0, std::abs(rebuilt)))) {
        throw ValidationError(std::string("descriptor ") + what +
                              " disagree with a rebuild from the stored data");
    }
}

} // namespace detail

/// Loads a descriptor, re-derives every stored derived quantity from the
/// data and parameters, and rejects the file if anything disagrees.
inline TrigSpline read_descriptor(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    for (const char* field : {"schema", "version", "grid", "kind", "order", "truncation",
                              "values", "cosine_coefficients", "sine_coefficients",
                              "normalizers"}) {
        if (!doc.contains(field)) {
            throw SchemaError(std::string("descriptor is missing field '") + field + "'");
        }
    }
    if (doc["schema"].get<std::string>() != descriptor_schema ||
        doc["version"].get<int>() != descriptor_version) {
        throw SchemaError("unknown descriptor schema or version");
    }
    if (!doc["grid"].contains("N") || !doc["grid"].contains("I")) {
        throw SchemaError("descriptor grid must carry N and I");
    }
    const int node_count = doc["grid"]["N"].get<int>();
    const int indicator = doc["grid"]["I"].get<int>();
    if (node_count < 3 || node_count % 2 == 0 || (indicator != 0 && indicator != 1)) {
        throw ValidationError("descriptor grid parameters are invalid");
    }
    const GridSpec grid(node_count, indicator);
    const auto kind = parse_factor_kind(doc["kind"].get<std::string>());
    if (!kind) {
        throw ValidationError("descriptor factor kind is invalid");
    }
    const int order_value = doc["order"].get<int>();
    if (order_value < 1) {
        throw ValidationError("descriptor smoothness order is invalid");
    }
    const SmoothnessOrder order(order_value);
    if (!doc["truncation"].contains("alias_blocks") ||
        !doc["truncation"].contains("tail_bound")) {
        throw SchemaError("descriptor truncation must carry alias_blocks and tail_bound");
    }
    const long long alias_blocks = doc["truncation"]["alias_blocks"].get<long long>();
    if (alias_blocks < 1 || alias_blocks > TruncationPolicy::max_alias_blocks) {
        throw ValidationError("descriptor alias block count is invalid");
    }

    const std::vector<double> values = doc["values"].get<std::vector<double>>();
    const TrigSpline rebuilt =
        TrigSpline::build(values, grid, *kind, order, make_policy(alias_blocks, *kind, order, grid));

    const std::vector<double> stored_a =
        doc["cosine_coefficients"].get<std::vector<double>>();
    const std::vector<double> stored_b =
        doc["sine_coefficients"].get<std::vector<double>>();
    const std::vector<double> stored_h = doc["normalizers"].get<std::vector<double>>();
    const int n = grid.harmonics();
    if (static_cast<int>(stored_a.size()) != n + 1 ||
        static_cast<int>(stored_b.size()) != n ||
        static_cast<int>(stored_h.size()) != n) {
        throw ValidationError("descriptor coefficient lengths do not match the grid");
    }
    for (int k = 0; k <= n; ++k) {
        detail::check_close(stored_a[static_cast<std::size_t>(k)],
                            rebuilt.coeffs().a[static_cast<std::size_t>(k)],
                            "cosine coefficients");
    }
    for (int k = 1; k <= n; ++k) {
        detail::check_close(stored_b[static_cast<std::size_t>(k) - 1],
                            rebuilt.coeffs().b[static_cast<std::size_t>(k) - 1],
                            "sine coefficients");
        detail::check_close(stored_h[static_cast<std::size_t>(k) - 1],
                            rebuilt.kernel().normalizer_at(k), "normalizers");
    }
    detail::check_close(doc["truncation"]["tail_bound"].get<double>(),
                        rebuilt.policy().tail_bound, "tail bounds");
    return rebuilt;
}

} // namespace trigspline
