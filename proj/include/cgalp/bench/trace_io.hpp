#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cgalp::bench {

/// One CGALP iteration. Row k describes step k: gamma_k and beta_k are the
/// parameters it used, feas_gap and lagrangian_gap are measured at the new
/// iterate x_{k+1}, the ergodic columns at the weighted averages whose weights
/// sum to gamma_0 + ... + gamma_k, and mu_norm is |mu_{k+1}|.
struct CgalpRow {
    std::int64_t k = 0;
    double gamma_k = 0.0;
    double beta_k = 0.0;
    double feas_gap = 0.0;
    double erg_feas_gap = 0.0;
    double lagrangian_gap = 0.0;
    double erg_lagrangian_gap = 0.0;
    double mu_norm = 0.0;
    double wall_time_s = 0.0;
};

/// Row k describes the state after k iterations.
struct GfbRow {
    std::int64_t k = 0;
    double bregman_criterion = 0.0;
    double feas_nuc = 0.0;
    double feas_l1 = 0.0;
};

inline constexpr const char* kCgalpHeader =
    "k,gamma_k,beta_k,feas_gap,erg_feas_gap,lagrangian_gap,erg_lagrangian_gap,mu_norm,wall_time_s";
inline constexpr const char* kGfbHeader = "k,bregman_criterion,feas_nuc,feas_l1";

/// Shortest text that round-trips the double ("%.17g").
std::string format_double(double v);

void write_cgalp_csv(std::ostream& os, const std::vector<CgalpRow>& rows);
void write_gfb_csv(std::ostream& os, const std::vector<GfbRow>& rows);
void write_cgalp_csv(const std::filesystem::path& path, const std::vector<CgalpRow>& rows);
void write_gfb_csv(const std::filesystem::path& path, const std::vector<GfbRow>& rows);

struct CsvColumn {
    std::vector<std::int64_t> k;
    std::vector<double> value;
};

/// Reads the k column and the named column of a trace file.
CsvColumn read_csv_column(const std::filesystem::path& path, const std::string& column);

}  // namespace cgalp::bench
