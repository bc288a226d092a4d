#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "catsim/fock.hpp"
#include "catsim/homodyne.hpp"
#include "catsim/wigner.hpp"

// File formats.
//
// Density matrix JSON: {"n_max": N, "rho": [[[re, im], ...], ...]} row-major;
// invariants are validated on load.
//
// Dataset CSV: header "theta,x", one record per line, 17 significant digits
// (round trips losslessly); metadata sidecar at "<path>.meta.json" with
// {source, seed, n}.
//
// Wigner CSV: header "x,p,w", one line per grid point (x outer, p inner);
// grid metadata sidecar at "<path>.meta.json".

namespace catsim {

nlohmann::json density_matrix_to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const nlohmann::json& j);

void save_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho);
DensityMatrix load_density_matrix(const std::filesystem::path& path);

void write_dataset_csv(const std::filesystem::path& path, const QuadratureDataset& ds);
QuadratureDataset read_dataset_csv(const std::filesystem::path& path);

void write_wigner_csv(const std::filesystem::path& path, const WignerGrid& w);

}  // namespace catsim
