#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sqzrot/errors.hpp"
#include "sqzrot/grid.hpp"
#include "sqzrot/langevin.hpp"
#include "sqzrot/sideband.hpp"
#include "sqzrot/trace.hpp"
#include "sqzrot/units.hpp"

namespace sqzrot {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// All file output goes through a temp file + rename so readers never observe
// a half-written artifact.
inline void atomic_write_text(const std::string& path, const std::string& content,
                              const char* module) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw data_error(module, "cannot open " + tmp + " for writing");
        out << content;
        if (!out)
            throw data_error(module, "write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw data_error(module, "cannot move " + tmp + " into place: " + ec.message());
    }
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t c = line.find(',', pos);
        if (c == std::string::npos) {
            out.push_back(trim(line.substr(pos)));
            break;
        }
        out.push_back(trim(line.substr(pos, c - pos)));
        pos = c + 1;
    }
    return out;
}

inline double parse_double(const std::string& field, const std::string& path, std::size_t line,
                           const char* module) {
    if (field.empty())
        throw data_error(module, path + ": empty numeric field at line " + std::to_string(line));
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || errno == ERANGE)
        throw data_error(module, path + ": cannot parse number '" + field + "' at line " +
                                     std::to_string(line));
    return v;
}

} // namespace detail

struct CsvTable {
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> line_numbers; // 1-based source line of each row
};

// Reads a CSV whose header must match `columns` exactly. '#' lines and blank
// lines are skipped anywhere in the file.
inline CsvTable read_csv(const std::string& path, const std::vector<std::string>& columns,
                         const char* module) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw data_error(module, "cannot open " + path);
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = detail::split_commas(t);
        if (!have_header) {
            if (fields.size() != columns.size())
                throw data_error(module, path + ": header at line " + std::to_string(lineno) +
                                             " has " + std::to_string(fields.size()) +
                                             " columns, expected " +
                                             std::to_string(columns.size()));
            for (std::size_t i = 0; i < columns.size(); ++i)
                if (fields[i] != columns[i])
                    throw data_error(module, path + ": missing column '" + columns[i] +
                                                 "' (found '" + fields[i] + "') at line " +
                                                 std::to_string(lineno));
            have_header = true;
            continue;
        }
        if (fields.size() != columns.size())
            throw data_error(module, path + ": row at line " + std::to_string(lineno) + " has " +
                                         std::to_string(fields.size()) + " fields, expected " +
                                         std::to_string(columns.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(detail::parse_double(f, path, lineno, module));
        table.rows.push_back(std::move(row));
        table.line_numbers.push_back(lineno);
    }
    if (!have_header)
        throw data_error(module, path + ": no header row found");
    return table;
}

// ---- noise trace: delta_mhz,noise_min_db,noise_max_db ----

inline NoiseTrace load_noise_trace(const std::string& path, double analysis_frequency_mhz = 1.0) {
    auto table = read_csv(path, {"delta_mhz", "noise_min_db", "noise_max_db"}, "cli-io");
    if (table.rows.size() < 2)
        throw data_error("cli-io", path + ": trace needs at least two rows");
    std::vector<double> grid;
    NoiseTrace t;
    t.analysis_frequency_mhz = analysis_frequency_mhz;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        if (r[1] > r[2])
            throw data_error("cli-io", path + ": noise_min_db > noise_max_db at line " +
                                           std::to_string(table.line_numbers[i]));
        grid.push_back(r[0]);
        t.n_min.push_back(db_to_linear(r[1]));
        t.n_max.push_back(db_to_linear(r[2]));
    }
    try {
        t.grid = UniformGrid::from_samples(grid, "cli-io");
    } catch (const error& e) {
        throw data_error("cli-io", path + ": " + e.what());
    }
    t.validate("cli-io");
    return t;
}

inline std::string render_noise_trace(const NoiseTrace& t, const std::string& comment = "") {
    std::ostringstream out;
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "delta_mhz,noise_min_db,noise_max_db\n";
    for (std::size_t i = 0; i < t.grid.size(); ++i)
        out << format_double(t.grid[i]) << ',' << format_double(linear_to_db(t.n_min[i])) << ','
            << format_double(linear_to_db(t.n_max[i])) << '\n';
    return out.str();
}

// ---- spectrum: omega_mhz,noise_db ----

inline SqueezingSpectrum load_spectrum(const std::string& path, double delta_mhz = 0.0) {
    auto table = read_csv(path, {"omega_mhz", "noise_db"}, "cli-io");
    SqueezingSpectrum s;
    s.delta_mhz = delta_mhz;
    double prev = -1e300;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i][0] <= prev)
            throw data_error("cli-io", path + ": omega_mhz not strictly increasing at line " +
                                           std::to_string(table.line_numbers[i]));
        prev = table.rows[i][0];
        s.omega_mhz.push_back(table.rows[i][0]);
        s.noise_db.push_back(table.rows[i][1]);
    }
    return s;
}

inline std::string render_spectrum(const SqueezingSpectrum& s, const std::string& comment = "") {
    std::ostringstream out;
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "omega_mhz,noise_db\n";
    for (std::size_t i = 0; i < s.omega_mhz.size(); ++i)
        out << format_double(s.omega_mhz[i]) << ',' << format_double(s.noise_db[i]) << '\n';
    return out.str();
}

// ---- SNLF table: delta_mhz,snlf_mhz,snlf_plus_delta_mhz ----

struct SnlfRow {
    double delta_mhz;
    double snlf_mhz;
};

inline std::vector<SnlfRow> load_snlf_table(const std::string& path) {
    auto table = read_csv(path, {"delta_mhz", "snlf_mhz", "snlf_plus_delta_mhz"}, "cli-io");
    std::vector<SnlfRow> rows;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        if (std::abs((r[0] + r[1]) - r[2]) > 1e-6)
            throw data_error("cli-io", path + ": snlf_plus_delta_mhz is inconsistent at line " +
                                           std::to_string(table.line_numbers[i]));
        rows.push_back(SnlfRow{r[0], r[1]});
    }
    return rows;
}

inline std::string render_snlf_table(const std::vector<SnlfRow>& rows) {
    std::ostringstream out;
    out << "delta_mhz,snlf_mhz,snlf_plus_delta_mhz\n";
    for (const auto& r : rows)
        out << format_double(r.delta_mhz) << ',' << format_double(r.snlf_mhz) << ','
            << format_double(r.delta_mhz + r.snlf_mhz) << '\n';
    return out.str();
}

// ---- coefficient table: delta_mhz,re_A,im_A,re_B,im_B ----

inline CoefficientProfile load_coefficients(const std::string& path) {
    auto table = read_csv(path, {"delta_mhz", "re_A", "im_A", "re_B", "im_B"},
                          "heisenberg-langevin");
    std::vector<double> grid;
    CoefficientProfile prof;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        if (!grid.empty() && r[0] <= grid.back())
            throw data_error("heisenberg-langevin",
                             path + ": delta_mhz not strictly increasing at line " +
                                 std::to_string(table.line_numbers[i]));
        grid.push_back(r[0]);
        prof.A.push_back(cplx(r[1], r[2]));
        prof.B.push_back(cplx(r[3], r[4]));
    }
    try {
        prof.grid = UniformGrid::from_samples(grid, "heisenberg-langevin");
    } catch (const error& e) {
        throw data_error("heisenberg-langevin", path + ": " + e.what());
    }
    return prof;
}

inline std::string render_coefficients(const UniformGrid& grid, const std::vector<cplx>& A,
                                       const std::vector<cplx>& B) {
    std::ostringstream out;
    out << "delta_mhz,re_A,im_A,re_B,im_B\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << format_double(grid[i]) << ',' << format_double(A[i].real()) << ','
            << format_double(A[i].imag()) << ',' << format_double(B[i].real()) << ','
            << format_double(B[i].imag()) << '\n';
    return out.str();
}

// ---- phase comparison: omega_mhz,n_min_db,n_locked_db ----

struct PhaseCompareCurves {
    std::vector<double> omega_mhz;
    std::vector<double> n_min_db;
    std::vector<double> n_locked_db;
};

inline PhaseCompareCurves load_phase_compare(const std::string& path) {
    auto table = read_csv(path, {"omega_mhz", "n_min_db", "n_locked_db"}, "cli-io");
    PhaseCompareCurves c;
    for (const auto& r : table.rows) {
        c.omega_mhz.push_back(r[0]);
        c.n_min_db.push_back(r[1]);
        c.n_locked_db.push_back(r[2]);
    }
    return c;
}

inline std::string render_phase_compare(const PhaseCompareCurves& c, const std::string& comment = "") {
    std::ostringstream out;
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "omega_mhz,n_min_db,n_locked_db\n";
    for (std::size_t i = 0; i < c.omega_mhz.size(); ++i)
        out << format_double(c.omega_mhz[i]) << ',' << format_double(c.n_min_db[i]) << ','
            << format_double(c.n_locked_db[i]) << '\n';
    return out.str();
}

// ---- phase sweep: delta_mhz,phase_shift_rad ----

inline PhaseSweep load_phase_sweep(const std::string& path) {
    auto table = read_csv(path, {"delta_mhz", "phase_shift_rad"}, "cli-io");
    PhaseSweep s;
    for (const auto& r : table.rows) {
        s.delta_mhz.push_back(r[0]);
        s.phase_rad.push_back(r[1]);
    }
    return s;
}

inline std::string render_phase_sweep(const PhaseSweep& s, const std::string& comment = "") {
    std::ostringstream out;
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "delta_mhz,phase_shift_rad\n";
    for (std::size_t i = 0; i < s.delta_mhz.size(); ++i)
        out << format_double(s.delta_mhz[i]) << ',' << format_double(s.phase_rad[i]) << '\n';
    return out.str();
}

} // namespace sqzrot
