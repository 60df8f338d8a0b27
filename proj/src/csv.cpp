#include "cmagnet/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace cmagnet {

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_value(const std::string& field, Eigen::Index row) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw CsvError("curve csv: non-numeric field '" + field + "' in data row " +
                       std::to_string(row));
    return v;
}

// Counts a consecutive label run prefix<1>, prefix<2>, ... starting at `pos`.
int count_labels(const std::vector<std::string>& fields, std::size_t pos, char prefix) {
    int count = 0;
    while (pos < fields.size() && fields[pos] == prefix + std::to_string(count + 1)) {
        ++count;
        ++pos;
    }
    return count;
}

}  // namespace

std::string curve_csv_header(const StructureDims& dims) {
    std::string header = "t";
    for (int i = 1; i <= dims.n; ++i) header += ",x" + std::to_string(i);
    for (int i = 1; i <= dims.n; ++i) header += ",y" + std::to_string(i);
    for (int a = 1; a <= dims.s; ++a) header += ",z" + std::to_string(a);
    return header;
}

void write_curve_csv(std::ostream& os, const SampledCurve<double>& curve) {
    os << curve_csv_header(curve.dims) << '\n';
    for (Eigen::Index k = 0; k < curve.size(); ++k) {
        os << format_value(curve.t(k));
        for (Eigen::Index j = 0; j < curve.points.cols(); ++j)
            os << ',' << format_value(curve.points(k, j));
        os << '\n';
    }
}

SampledCurve<double> read_curve_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw CsvError("curve csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_fields(line);
    if (header.empty() || header[0] != "t")
        throw CsvError("curve csv: header must start with 't'");
    const int n = count_labels(header, 1, 'x');
    const int ny = count_labels(header, 1 + n, 'y');
    const int s = count_labels(header, 1 + n + ny, 'z');
    if (n < 1 || ny != n || s < 1 || header.size() != std::size_t(1 + 2 * n + s))
        throw CsvError("curve csv: header must be t,x1..xn,y1..yn,z1..zs");
    const StructureDims dims(n, s);

    std::vector<double> t_values;
    std::vector<double> coords;
    Eigen::Index row = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != std::size_t(dims.dim() + 1))
            throw CsvError("curve csv: row " + std::to_string(row) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(dims.dim() + 1));
        const double t = parse_value(fields[0], row);
        if (!t_values.empty() && !(t > t_values.back()))
            throw CsvError("curve csv: t must be strictly increasing (row " +
                           std::to_string(row) + ")");
        t_values.push_back(t);
        for (int j = 0; j < dims.dim(); ++j) {
            const double v = parse_value(fields[j + 1], row);
            if (!std::isfinite(v))
                throw CsvError("curve csv: non-finite value in row " + std::to_string(row));
            coords.push_back(v);
        }
    }
    if (t_values.empty()) throw CsvError("curve csv: no data rows");

    SampledCurve<double> curve;
    curve.dims = dims;
    curve.t = Eigen::Map<const VecX<double>>(t_values.data(), Eigen::Index(t_values.size()));
    curve.points.resize(Eigen::Index(t_values.size()), dims.dim());
    for (Eigen::Index k = 0; k < curve.points.rows(); ++k)
        for (int j = 0; j < dims.dim(); ++j)
            curve.points(k, j) = coords[std::size_t(k) * std::size_t(dims.dim()) + std::size_t(j)];
    return curve;
}

}  // namespace cmagnet
