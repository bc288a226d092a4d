#include "catsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace catsim {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::filesystem::path meta_path(const std::filesystem::path& path) {
    return path.string() + ".meta.json";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

nlohmann::json density_matrix_to_json(const DensityMatrix& rho) {
    nlohmann::json rows = nlohmann::json::array();
    const int d = rho.dim().size();
    for (int m = 0; m < d; ++m) {
        nlohmann::json row = nlohmann::json::array();
        for (int n = 0; n < d; ++n)
            row.push_back({rho.entry(m, n).real(), rho.entry(m, n).imag()});
        rows.push_back(std::move(row));
    }
    return {{"n_max", rho.dim().n_max}, {"rho", std::move(rows)}};
}

DensityMatrix density_matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("n_max") || !j.contains("rho"))
        throw std::invalid_argument("density matrix JSON: missing n_max or rho");
    const FockDim dim(j.at("n_max").get<int>());
    const auto& rows = j.at("rho");
    if (!rows.is_array() || int(rows.size()) != dim.size())
        throw std::invalid_argument("density matrix JSON: rho has wrong row count");
    Eigen::MatrixXcd m(dim.size(), dim.size());
    for (int r = 0; r < dim.size(); ++r) {
        const auto& row = rows.at(r);
        if (!row.is_array() || int(row.size()) != dim.size())
            throw std::invalid_argument("density matrix JSON: rho has wrong column count");
        for (int c = 0; c < dim.size(); ++c) {
            const auto& e = row.at(c);
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("density matrix JSON: entries must be [re, im]");
            m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return DensityMatrix(dim, std::move(m));
}

void save_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho) {
    write_text(path, density_matrix_to_json(rho).dump(2) + "\n");
}

DensityMatrix load_density_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    nlohmann::json j;
    in >> j;
    return density_matrix_from_json(j);
}

void write_dataset_csv(const std::filesystem::path& path, const QuadratureDataset& ds) {
    std::ostringstream out;
    out << "theta,x\n";
    for (const auto& rec : ds.records)
        out << fmt17(rec.theta) << ',' << fmt17(rec.x) << '\n';
    write_text(path, out.str());
    const nlohmann::json meta = {
        {"source", ds.meta.source}, {"seed", ds.meta.seed}, {"n", ds.records.size()}};
    write_text(meta_path(path), meta.dump(2) + "\n");
}

QuadratureDataset read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    if (line != "theta,x")
        throw std::runtime_error(path.string() + ":1: expected header \"theta,x\"");

    QuadratureDataset ds;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        std::size_t len_theta = 0, len_x = 0;
        QuadratureRecord rec{};
        try {
            rec.theta = std::stod(line.substr(0, comma), &len_theta);
            rec.x = std::stod(line.substr(comma + 1), &len_x);
        } catch (const std::exception&) {
            len_theta = 0;
        }
        if (comma == std::string::npos || len_theta != comma ||
            len_x != line.size() - comma - 1)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": malformed row \"" + line + "\"");
        if (!(rec.theta >= 0.0 && rec.theta < 2.0 * 3.14159265358979323846 + 1e-12))
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": theta outside [0, 2 pi)");
        ds.records.push_back(rec);
    }
    if (ds.records.empty()) throw std::runtime_error(path.string() + ": no records");

    if (std::filesystem::exists(meta_path(path))) {
        std::ifstream meta_in(meta_path(path));
        nlohmann::json meta;
        meta_in >> meta;
        ds.meta.source = meta.value("source", std::string{});
        ds.meta.seed = meta.value("seed", std::uint64_t{0});
        ds.meta.n = meta.value("n", ds.records.size());
    } else {
        ds.meta.n = ds.records.size();
    }
    return ds;
}

void write_wigner_csv(const std::filesystem::path& path, const WignerGrid& w) {
    std::ostringstream out;
    out << "x,p,w\n";
    for (int i = 0; i < w.grid.nx; ++i)
        for (int j = 0; j < w.grid.np; ++j)
            out << fmt17(w.grid.x(i)) << ',' << fmt17(w.grid.p(j)) << ','
                << fmt17(w.values(i, j)) << '\n';
    write_text(path, out.str());
    const nlohmann::json meta = {{"x_min", w.grid.x_min}, {"x_max", w.grid.x_max},
                                 {"p_min", w.grid.p_min}, {"p_max", w.grid.p_max},
                                 {"nx", w.grid.nx},       {"np", w.grid.np}};
    write_text(meta_path(path), meta.dump(2) + "\n");
}

}  // namespace catsim
