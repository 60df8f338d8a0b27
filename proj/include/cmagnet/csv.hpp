#pragma once

// Curve CSV schema: header `t,x1..xn,y1..yn,z1..zs`, one row per sample,
// values printed with 17 significant digits so doubles round-trip exactly.

#include "cmagnet/trajectory.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace cmagnet {

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string curve_csv_header(const StructureDims& dims);

void write_curve_csv(std::ostream& os, const SampledCurve<double>& curve);

/// Parses a curve written by write_curve_csv; dims are inferred from the
/// header. Throws CsvError on any malformed content (bad header, ragged or
/// non-numeric rows, non-increasing t).
SampledCurve<double> read_curve_csv(std::istream& is);

}  // namespace cmagnet
