// Parameter sweeps, figure presets and CSV/JSON writers behind the kosc tool

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kosc/model.hpp"
#include "kosc/steady.hpp"

namespace kosc::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Subcommand { Spectrum, Density, Zeno, Fdr, Critical, Oracle };
enum class Format { Csv, Json };

std::string_view to_string(Subcommand s) noexcept;
std::string_view to_string(Format f) noexcept;

/// Invalid flags or an inconsistent configuration (exit status 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    Subcommand subcommand = Subcommand::Spectrum;
    Approx approx = Approx::NonRWA;
    std::vector<double> r{1.0};
    double alpha = 1.0;
    double q_min = 0.1;
    double q_max = 20.0;
    int q_steps = 200;
    ZenoConvention convention = ZenoConvention::Literal;
    std::string out = "-";
    Format format = Format::Csv;
    // oracle only
    int n_modes = 400;
    double half_width = 10.0;
    double eps = 0.02;
    // fdr only
    double z = 1.7;
    // set by figure presets, recorded in the header
    std::string preset;
    std::string note;
};

/// Throws UsageError on q_min >= q_max, q_steps < 2, non-finite or
/// out-of-domain numbers, or several r values for `spectrum`.
void validate(const SweepConfig& c);

/// q_min + i (q_max - q_min) / (q_steps - 1), with the last point pinned to q_max.
std::vector<double> q_grid(const SweepConfig& c);

using Cell = std::variant<double, long, std::string, bool>;

struct Row {
    double q = 0.0;
    double r = 0.0;
    std::vector<std::vector<Cell>> cells;  // spectrum points produce one line per mode
    std::optional<std::string> error;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<Row> rows;  // grid order: r outer, q inner

    bool failed() const noexcept;
};

std::vector<std::string> columns(Subcommand s);

/// Evaluates every grid point on up to `threads` workers. Row order does not
/// depend on scheduling.
Table evaluate(const SweepConfig& c, int threads);

/// Worker count: KOSC_THREADS if set to a positive integer, else the hardware
/// concurrency, never below 1.
int thread_count();

std::string config_json(const SweepConfig& c);
std::string render_csv(const SweepConfig& c, const Table& t);
std::string render_json(const SweepConfig& c, const Table& t);

struct FigurePreset {
    std::string id;
    SweepConfig config;
};

std::vector<FigurePreset> presets();
std::optional<SweepConfig> find_preset(std::string_view id);
void list_presets(std::ostream& os);

/// Full command-line entry point. Returns the process exit status:
/// 0 on success, 1 if any grid point failed or output could not be written,
/// 2 on usage errors. Errors go to `err` as one JSON record per line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kosc::cli
