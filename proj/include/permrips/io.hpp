// File formats: points CSV, lower-triangular distance matrices, and the JSON
// schemas for barcodes, towers, and reports. All JSON uses insertion order
// and deterministic content so reruns are byte-identical.
#pragma once

#include <string>

#include <json.hpp>

#include "permrips/complex.hpp"
#include "permrips/exact.hpp"
#include "permrips/persistence.hpp"
#include "permrips/tower.hpp"

namespace permrips {

using ordered_json = nlohmann::ordered_json;

// CSV, one point per row, optional non-numeric header row.
point_cloud read_points_csv(const std::string& path);
void write_points_csv(const std::string& path, const point_cloud& pc);

// First line n, then row i (i = 1..n-1) holds i whitespace-separated
// distances to points 0..i-1.
point_cloud read_distance_matrix(const std::string& path);

ordered_json barcode_to_json(const barcode& bc, const std::string& source, double window_lo,
                             double window_hi);
barcode barcode_from_json(const ordered_json& j);
ordered_json tower_to_json(const tower& t);
ordered_json sizes_to_json(const tower& t, int n);
ordered_json lower_bound_report_to_json(const lower_bound_report& rep, bool with_simplices);

void write_json(const std::string& path, const ordered_json& j);
ordered_json read_json(const std::string& path);

std::string format_double(double v);  // shortest round-trip, "inf" for infinity

}  // namespace permrips
