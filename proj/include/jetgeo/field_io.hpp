#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "jetgeo/polynomial.hpp"

namespace jetgeo {

/// Parses a vector-field document: {"dim": n, "components": [[{"coeff", "exponents"}...]...]}.
/// Malformed input raises std::runtime_error with a position diagnostic.
PolyVectorField parse_field_json(const std::string& text);
PolyVectorField load_field(const std::string& path);
void save_field(const PolyVectorField& field, const std::string& path);

/// Rounds a double to 6 significant digits (structured-output print contract).
double to_sig6(double v);

/// CSV with a header row; each row joined with commas.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_point_cloud_csv(const std::string& path,
                           const std::vector<std::array<double, 3>>& points);

/// Wavefront-style vertex/face listing over a (res_theta x res_phi) grid of
/// points as produced by sample_surface (phi wraps, theta does not).
void write_mesh(const std::string& path, const std::vector<std::array<double, 3>>& points,
                std::size_t res_theta, std::size_t res_phi);

}  // namespace jetgeo
