#include "cgalp/bench/trace_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cgalp::bench {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_cgalp_csv(std::ostream& os, const std::vector<CgalpRow>& rows) {
    os << kCgalpHeader << '\n';
    for (const auto& r : rows) {
        os << r.k << ',' << format_double(r.gamma_k) << ',' << format_double(r.beta_k) << ','
           << format_double(r.feas_gap) << ',' << format_double(r.erg_feas_gap) << ','
           << format_double(r.lagrangian_gap) << ',' << format_double(r.erg_lagrangian_gap) << ','
           << format_double(r.mu_norm) << ',' << format_double(r.wall_time_s) << '\n';
    }
}

void write_gfb_csv(std::ostream& os, const std::vector<GfbRow>& rows) {
    os << kGfbHeader << '\n';
    for (const auto& r : rows) {
        os << r.k << ',' << format_double(r.bregman_criterion) << ',' << format_double(r.feas_nuc) << ','
           << format_double(r.feas_l1) << '\n';
    }
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return os;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

void write_cgalp_csv(const std::filesystem::path& path, const std::vector<CgalpRow>& rows) {
    auto os = open_out(path);
    write_cgalp_csv(os, rows);
}

void write_gfb_csv(const std::filesystem::path& path, const std::vector<GfbRow>& rows) {
    auto os = open_out(path);
    write_gfb_csv(os, rows);
}

CsvColumn read_csv_column(const std::filesystem::path& path, const std::string& column) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error(path.string() + ": empty file");
    const auto header = split(line);
    int k_col = -1, v_col = -1;
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
        if (header[i] == "k") k_col = i;
        if (header[i] == column) v_col = i;
    }
    if (k_col < 0) throw std::runtime_error(path.string() + ": no k column");
    if (v_col < 0) throw std::runtime_error(path.string() + ": no column named " + column);

    CsvColumn out;
    std::int64_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (static_cast<int>(cells.size()) <= std::max(k_col, v_col))
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": short row");
        out.k.push_back(std::strtoll(cells[k_col].c_str(), nullptr, 10));
        out.value.push_back(std::strtod(cells[v_col].c_str(), nullptr));
    }
    return out;
}

}  // namespace cgalp::bench
