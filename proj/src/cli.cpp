#include "kosc/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "kosc/dispersion.hpp"
#include "kosc/errors.hpp"
#include "kosc/oracle.hpp"
#include "kosc/steady.hpp"

namespace kosc::cli {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return v;
        },
        c);
}

json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (std::isfinite(v)) return v;
                return format_double(v);
            } else {
                return v;
            }
        },
        c);
}

std::vector<std::vector<Cell>> evaluate_point(const SweepConfig& c, double q, double r) {
    const ModelParams p(q, r, c.alpha, c.approx);
    switch (c.subcommand) {
        case Subcommand::Spectrum: {
            std::vector<std::vector<Cell>> lines;
            long idx = 0;
            for (const auto& m : spectrum(p)) {
                lines.push_back({q, idx++, m.z.real(), m.z.imag(), std::string(to_string(m.stability)), m.residual});
            }
            return lines;
        }
        case Subcommand::Density: {
            const auto s = correlation_c0(p);
            return {{q, r, c.alpha, s.c0, s.n_avg, s.abs_err, s.diverged}};
        }
        case Subcommand::Zeno: {
            const auto z = zeno_parameter(p, c.convention);
            return {{q, r, c.alpha, z.xi, std::string(to_string(z.regime)), std::string(to_string(z.convention))}};
        }
        case Subcommand::Fdr: {
            const auto f = distribution_function(c.z, p);
            const auto t = effective_temperature_probe(p);
            return {{q, r, c.alpha, c.z, f.matrix(0, 1).real(), f.residual, t.t_low, t.highfreq_coeff}};
        }
        case Subcommand::Critical: {
            const auto cc = critical_coupling(p);
            return {{q, r, cc.alpha_c, cc.closed_form_r, cc.closed_form_r_inv}};
        }
        case Subcommand::Oracle: {
            const auto o = oracle_report(p, c.n_modes, c.half_width, c.eps);
            const auto s = correlation_c0(p);
            const double dev = std::abs(o.n_avg - s.n_avg) / std::abs(s.n_avg);
            return {{q, r, c.alpha, static_cast<long>(c.n_modes), c.half_width, c.eps, o.n_avg, s.n_avg, dev,
                     o.residual, o.truncated_weight}};
        }
    }
    return {};
}

template <typename E>
E parse_enum(const std::string& s, std::initializer_list<std::pair<const char*, E>> table, const char* what) {
    for (const auto& [name, value] : table)
        if (s == name) return value;
    throw UsageError(std::string("unknown ") + what + " '" + s + "'");
}

Approx parse_approx(const std::string& s) {
    return parse_enum<Approx>(s, {{"nrwa", Approx::NonRWA}, {"rwa", Approx::RWA}}, "approximation");
}

ZenoConvention parse_convention(const std::string& s) {
    return parse_enum<ZenoConvention>(
        s, {{"literal", ZenoConvention::Literal}, {"normalized", ZenoConvention::NormalizedDensity}}, "convention");
}

Format parse_format(const std::string& s) {
    return parse_enum<Format>(s, {{"csv", Format::Csv}, {"json", Format::Json}}, "format");
}

void error_record(std::ostream& err, std::string_view kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

bool write_output(const SweepConfig& c, const std::string& text, std::ostream& out, std::ostream& err) {
    if (c.out == "-") {
        out << text;
        out.flush();
        return static_cast<bool>(out);
    }
    std::ofstream f(c.out, std::ios::binary);
    f << text;
    f.close();
    if (!f) {
        error_record(err, "io", "cannot write " + c.out);
        return false;
    }
    return true;
}

SweepConfig make_preset(Subcommand s, Approx a, std::vector<double> r, double alpha, int steps, std::string id,
                        std::string note) {
    SweepConfig c;
    c.subcommand = s;
    c.approx = a;
    c.r = std::move(r);
    c.alpha = alpha;
    c.q_min = 0.1;
    c.q_max = 20.0;
    c.q_steps = steps;
    c.preset = std::move(id);
    c.note = std::move(note);
    return c;
}

}  // namespace

std::string_view to_string(Subcommand s) noexcept {
    switch (s) {
        case Subcommand::Spectrum: return "spectrum";
        case Subcommand::Density: return "density";
        case Subcommand::Zeno: return "zeno";
        case Subcommand::Fdr: return "fdr";
        case Subcommand::Critical: return "critical";
        case Subcommand::Oracle: return "oracle";
    }
    return "spectrum";
}

std::string_view to_string(Format f) noexcept { return f == Format::Csv ? "csv" : "json"; }

void validate(const SweepConfig& c) {
    auto finite = [](double v, const char* name) {
        if (!std::isfinite(v)) throw UsageError(std::string(name) + " must be finite");
    };
    finite(c.alpha, "--alpha");
    finite(c.q_min, "--q-min");
    finite(c.q_max, "--q-max");
    if (c.r.empty()) throw UsageError("at least one --r value is required");
    for (double r : c.r) {
        finite(r, "--r");
        if (!(r > 0.0)) throw UsageError("--r must be positive");
    }
    if (c.alpha < 0.0) throw UsageError("--alpha must be non-negative");
    if (!(c.q_min > 0.0)) throw UsageError("--q-min must be positive");
    if (!(c.q_min < c.q_max)) throw UsageError("--q-min must be smaller than --q-max");
    if (c.q_steps < 2) throw UsageError("--q-steps must be at least 2");
    if (c.subcommand == Subcommand::Spectrum && c.r.size() != 1)
        throw UsageError("spectrum takes exactly one --r value");
    if (c.subcommand == Subcommand::Oracle) {
        if (c.n_modes < 2) throw UsageError("--n-modes must be at least 2");
        finite(c.half_width, "--half-width");
        finite(c.eps, "--eps");
        if (!(c.half_width > 0.0)) throw UsageError("--half-width must be positive");
        if (!(c.eps > 0.0)) throw UsageError("--eps must be positive");
    }
    if (c.subcommand == Subcommand::Fdr) finite(c.z, "--z");
}

std::vector<double> q_grid(const SweepConfig& c) {
    std::vector<double> q(c.q_steps);
    const double h = (c.q_max - c.q_min) / (c.q_steps - 1);
    for (int i = 0; i < c.q_steps; ++i) q[i] = c.q_min + i * h;
    q.back() = c.q_max;
    return q;
}

bool Table::failed() const noexcept {
    return std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.error.has_value(); });
}

std::vector<std::string> columns(Subcommand s) {
    switch (s) {
        case Subcommand::Spectrum: return {"q", "root_index", "re_z", "im_z", "stability", "residual"};
        case Subcommand::Density: return {"q", "r", "alpha", "c0", "n_avg", "abs_err", "diverged"};
        case Subcommand::Zeno: return {"q", "r", "alpha", "xi", "regime", "convention"};
        case Subcommand::Fdr: return {"q", "r", "alpha", "z", "f_offdiag", "residual", "t_low", "highfreq_coeff"};
        case Subcommand::Critical: return {"q", "r", "alpha_c", "closed_form_r", "closed_form_r_inv"};
        case Subcommand::Oracle:
            return {"q",       "r",         "alpha",     "n_modes",  "half_width",      "eps",
                    "n_oracle", "n_keldysh", "rel_dev", "residual", "truncated_weight"};
    }
    return {};
}

int thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("KOSC_THREADS")) {
        int v = 0;
        const std::string_view s(env);
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec == std::errc{} && res.ptr == s.data() + s.size() && v > 0) n = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::max(1u, n));
}

Table evaluate(const SweepConfig& c, int threads) {
    validate(c);
    Table t;
    t.columns = columns(c.subcommand);
    const auto qs = q_grid(c);
    for (double r : c.r)
        for (double q : qs) t.rows.push_back({q, r, {}, std::nullopt});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < t.rows.size(); i = next++) {
            Row& row = t.rows[i];
            try {
                row.cells = evaluate_point(c, row.q, row.r);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const int n = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, t.rows.size())));
    std::vector<std::thread> pool;
    for (int k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return t;
}

std::string config_json(const SweepConfig& c) {
    json j{{"subcommand", to_string(c.subcommand)},
           {"approx", to_string(c.approx)},
           {"r", c.r},
           {"alpha", c.alpha},
           {"q_min", c.q_min},
           {"q_max", c.q_max},
           {"q_steps", c.q_steps},
           {"format", to_string(c.format)}};
    if (c.subcommand == Subcommand::Zeno) j["convention"] = to_string(c.convention);
    if (c.subcommand == Subcommand::Oracle) {
        j["n_modes"] = c.n_modes;
        j["half_width"] = c.half_width;
        j["eps"] = c.eps;
    }
    if (c.subcommand == Subcommand::Fdr) j["z"] = c.z;
    if (!c.preset.empty()) j["preset"] = c.preset;
    return j.dump();
}

std::string render_csv(const SweepConfig& c, const Table& t) {
    std::ostringstream os;
    os << "# kosc " << kVersion << '\n';
    os << "# config " << config_json(c) << '\n';
    if (!c.note.empty()) os << "# note " << c.note << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        if (row.error) {
            os << "# error " << json{{"q", row.q}, {"r", row.r}, {"message", *row.error}}.dump() << '\n';
            continue;
        }
        for (const auto& line : row.cells) {
            for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << format_cell(line[i]);
            os << '\n';
        }
    }
    return os.str();
}

std::string render_json(const SweepConfig& c, const Table& t) {
    json rows = json::array();
    json errors = json::array();
    for (const auto& row : t.rows) {
        if (row.error) {
            errors.push_back({{"q", row.q}, {"r", row.r}, {"message", *row.error}});
            continue;
        }
        for (const auto& line : row.cells) {
            json r = json::array();
            for (const auto& cell : line) r.push_back(cell_json(cell));
            rows.push_back(std::move(r));
        }
    }
    json j{{"version", kVersion},
           {"config", json::parse(config_json(c))},
           {"columns", t.columns},
           {"rows", std::move(rows)},
           {"errors", std::move(errors)}};
    if (!c.note.empty()) j["note"] = c.note;
    return j.dump(1) + "\n";
}

std::vector<FigurePreset> presets() {
    const std::string alpha_note = "alpha is a chosen default; override with --alpha";
    const std::string r_note = "panels a, b, c use r = 0.1, 1, 10; " + alpha_note;
    std::vector<FigurePreset> out;
    const char* panels[] = {"a", "b", "c"};
    const double rs[] = {0.1, 1.0, 10.0};
    for (int i = 0; i < 3; ++i) {
        const std::string id = std::string("fig1") + panels[i];
        out.push_back({id, make_preset(Subcommand::Spectrum, Approx::NonRWA, {rs[i]}, 100.0, 200, id, r_note)});
    }
    out.push_back({"fig2", make_preset(Subcommand::Density, Approx::NonRWA, {0.1, 1.0, 10.0}, 300.0, 200, "fig2",
                                       alpha_note)});
    out.push_back({"fig3a", make_preset(Subcommand::Zeno, Approx::NonRWA, {0.1, 1.0, 10.0}, 100.0, 200, "fig3a",
                                        alpha_note)});
    out.push_back({"fig3b", make_preset(Subcommand::Zeno, Approx::RWA, {0.1, 1.0, 10.0}, 100.0, 200, "fig3b",
                                        alpha_note)});
    for (int i = 0; i < 3; ++i) {
        const std::string id = std::string("fig4") + panels[i];
        out.push_back({id, make_preset(Subcommand::Spectrum, Approx::RWA, {rs[i]}, 100.0, 200, id, r_note)});
    }
    return out;
}

std::optional<SweepConfig> find_preset(std::string_view id) {
    for (auto& p : presets())
        if (p.id == id) return p.config;
    return std::nullopt;
}

void list_presets(std::ostream& os) {
    for (const auto& p : presets()) os << p.id << ' ' << config_json(p.config) << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"kosc: steady state of an oscillator coupled to a Lorentzian bath"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    SweepConfig cfg;
    std::string approx = "nrwa";
    std::string convention = "literal";
    std::string format = "csv";
    bool alpha_set = false;
    double alpha_override = 0.0;
    std::string preset_id;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--approx", approx, "nrwa or rwa")->capture_default_str();
        sub->add_option("--r", cfg.r, "bath width over Markovian rate; comma-separated list allowed")
            ->delimiter(',')
            ->capture_default_str();
        sub->add_option("--alpha", cfg.alpha, "coupling in bath-width units")->capture_default_str();
        sub->add_option("--q-min", cfg.q_min)->capture_default_str();
        sub->add_option("--q-max", cfg.q_max)->capture_default_str();
        sub->add_option("--q-steps", cfg.q_steps)->capture_default_str();
        sub->add_option("--out", cfg.out, "output path, - for stdout")->capture_default_str();
        sub->add_option("--format", format, "csv or json")->capture_default_str();
    };

    struct Entry {
        Subcommand sub;
        const char* help;
    };
    const Entry entries[] = {
        {Subcommand::Spectrum, "dispersion roots on a q grid"},
        {Subcommand::Density, "steady-state 2<n>+1 on a q grid"},
        {Subcommand::Zeno, "Zeno parameter on a q grid"},
        {Subcommand::Fdr, "distribution function and FDT residual"},
        {Subcommand::Critical, "critical coupling on a q grid"},
        {Subcommand::Oracle, "discretized-bath Lyapunov oracle against the Keldysh density"},
    };
    std::vector<std::pair<CLI::App*, Subcommand>> subs;
    for (const auto& e : entries) {
        CLI::App* s = app.add_subcommand(std::string(to_string(e.sub)), e.help);
        add_common(s);
        if (e.sub == Subcommand::Zeno)
            s->add_option("--convention", convention, "literal or normalized")->capture_default_str();
        if (e.sub == Subcommand::Oracle) {
            s->add_option("--n-modes", cfg.n_modes)->capture_default_str();
            s->add_option("--half-width", cfg.half_width)->capture_default_str();
            s->add_option("--eps", cfg.eps)->capture_default_str();
        }
        if (e.sub == Subcommand::Fdr) s->add_option("--z", cfg.z, "real frequency")->capture_default_str();
        subs.emplace_back(s, e.sub);
    }
    CLI::App* fig = app.add_subcommand("figure", "run a figure preset; without an id, list presets");
    fig->add_option("id", preset_id);
    fig->add_option("--alpha", alpha_override, "override the preset coupling")->each([&](const std::string&) {
        alpha_set = true;
    });
    fig->add_option("--out", cfg.out)->capture_default_str();
    fig->add_option("--format", format)->capture_default_str();
    CLI::App* list = app.add_subcommand("presets", "list figure presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help / --version
            out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kVersion) + "\n" : app.help());
            return 0;
        }
        error_record(err, "usage", e.what());
        return 2;
    }

    try {
        if (list->parsed() || (fig->parsed() && preset_id.empty())) {
            list_presets(out);
            return 0;
        }
        if (fig->parsed()) {
            auto p = find_preset(preset_id);
            if (!p) throw UsageError("unknown preset '" + preset_id + "'");
            const std::string dest = cfg.out;
            cfg = *p;
            cfg.out = dest;
            if (alpha_set) cfg.alpha = alpha_override;
        } else {
            for (const auto& [s, which] : subs)
                if (s->parsed()) cfg.subcommand = which;
            cfg.approx = parse_approx(approx);
            cfg.convention = parse_convention(convention);
        }
        cfg.format = parse_format(format);
        validate(cfg);
    } catch (const UsageError& e) {
        error_record(err, "usage", e.what());
        return 2;
    }

    const Table t = evaluate(cfg, thread_count());
    const std::string text = cfg.format == Format::Csv ? render_csv(cfg, t) : render_json(cfg, t);
    if (!write_output(cfg, text, out, err)) return 1;
    for (const auto& row : t.rows) {
        if (row.error) error_record(err, "row", "q=" + format_double(row.q) + " r=" + format_double(row.r) + ": " + *row.error);
    }
    return t.failed() ? 1 : 0;
}

}  // namespace kosc::cli
