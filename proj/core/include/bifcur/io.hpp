#pragma once

#include <string>

#include "bifcur/family.hpp"
#include "bifcur/grid.hpp"
#include "bifcur/zeros_types.hpp"

namespace bifcur {

// Family spec file: {"generators":[{"name":..., "matrix": 2x2 of coefficient
// lists [[re,im],...] in ascending degree}], "window":{"center":[re,im],
// "width":..., "height":...}}. Non-unit determinants are rejected.
FamilySpec load_family_json(const std::string& path);

// Measure spec: [{"word": "ab'", "weight": 0.5}, ...]; weights normalized on
// load when the sum is within 1% of 1.
WordMeasure load_measure_json(const std::string& json_text, const FamilySpec& spec);

// ScalarField: CSV rows "lambda_re,lambda_im,value" (sentinel rows write
// -inf), 16-bit PGM scaled to [min,max], and a JSON sidecar with the range
// and metadata.
void write_field_csv(const ScalarField& field, const std::string& path);
void write_field_pgm(const ScalarField& field, const std::string& pgm_path,
                     const std::string& sidecar_path);

// MassField: CSV rows "cell_re,cell_im,mass", JSON summary
// {total,min,max,negative_fraction}, PGM heatmap of the clipped nonnegative part.
void write_mass_csv(const MassField& mass, const std::string& path);
void write_mass_summary(const MassField& mass, const std::string& path);
void write_mass_pgm(const MassField& mass, const std::string& pgm_path,
                    const std::string& sidecar_path);

// PointCloud: JSON list [{re, im, mult, residual}].
void write_cloud_json(const PointCloud& cloud, const std::string& path);

ScalarField read_field_csv(const std::string& path, const ParamGrid& grid);
MassField read_mass_csv(const std::string& path, const ParamGrid& grid);

// Boolean mask over the full grid as a 16-bit PGM (0 / 65535).
void write_mask_pgm(const std::vector<std::uint8_t>& mask, const ParamGrid& grid,
                    const std::string& path);

}  // namespace bifcur
